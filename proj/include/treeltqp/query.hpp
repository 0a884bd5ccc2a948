// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treeltqp/constraint.hpp"
#include "treeltqp/rdf.hpp"

namespace ltqp {

// One position of a triple pattern: a concrete term or a variable.
struct PatternNode {
  std::optional<std::string> var;  // set for variables
  Term term;                       // set for constants

  static PatternNode variable(std::string name) { return {std::move(name), {}}; }
  static PatternNode constant(Term t) { return {std::nullopt, std::move(t)}; }
  bool is_var() const { return var.has_value(); }
};

struct TriplePattern {
  PatternNode subject;
  PatternNode predicate;
  PatternNode object;
};

// SELECT + basic graph pattern + optional FILTER. Projected variables and
// filter variables always occur in the bgp.
struct Query {
  std::vector<std::string> projected;
  std::vector<TriplePattern> bgp;
  std::optional<ConstraintExpr> filter;
};

// One query result: values for the projected variables, in projection order.
struct Binding {
  std::vector<std::pair<std::string, Term>> values;

  friend bool operator==(const Binding&, const Binding&) = default;
  friend auto operator<=>(const Binding&, const Binding&) = default;
};

// Parses the supported query subset: PREFIX declarations, SELECT with
// explicit variables or *, one WHERE block of triple patterns, FILTER
// clauses (inside or after the block) of comparisons combined with
// && || ! and parentheses. Multiple FILTER clauses are conjoined.
// Recognized SPARQL keywords outside the subset (OPTIONAL, UNION, ...)
// raise UnsupportedFeatureError.
Query parse_query(std::string_view text);

// The query filter restricted to the variables bound through `path`:
// every atom over a variable the bgp does not connect to `path` via a
// `?s <path> ?v` pattern is weakened to TRUE (after negation normal form,
// so the weakening is sound). TRUE when there is no filter or no such
// variable.
ConstraintExpr relevant_filter(const Query& q, const std::string& path);

// Join-cost observation: pattern order is taken as written, so the probe
// and row counts expose what a planner would otherwise hide.
struct EvalStats {
  std::uint64_t match_calls = 0;
  std::uint64_t rows_scanned = 0;
};

// Natural join over the bgp in written pattern order, filter applied under
// value-space comparison, projection last. Multiset semantics.
std::vector<Binding> evaluate(const Query& q, const TripleStore& store,
                              EvalStats* stats = nullptr);

// Tab-separated binding table; one header row, then one row per binding.
std::string format_bindings(const Query& q, const std::vector<Binding>& bindings);

}  // namespace ltqp
