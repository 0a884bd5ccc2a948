// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "treeltqp/value.hpp"

namespace ltqp {

enum class Cmp { Lt, Le, Gt, Ge, Eq, Ne };

// Comparator holding on the opposite outcomes: !(x < c) == x >= c, etc.
Cmp complement_of(Cmp c);

// Whether `three_way` (the sign of lhs - rhs) satisfies the comparator.
bool cmp_holds(int three_way, Cmp c);

std::string cmp_symbol(Cmp c);

// An immutable boolean expression over single-variable comparisons:
// atoms (variable cmp constant), conjunction, disjunction, negation, and
// the constants TRUE / FALSE.
class ConstraintExpr {
 public:
  enum class Kind { True, False, Atom, Not, And, Or };

  // Default-constructed expression is TRUE.
  ConstraintExpr() : ConstraintExpr(constant(true)) {}

  static ConstraintExpr constant(bool value);
  static ConstraintExpr atom(std::string var, Cmp cmp, TypedValue value);
  static ConstraintExpr negation(ConstraintExpr e);
  static ConstraintExpr conjunction(ConstraintExpr a, ConstraintExpr b);
  static ConstraintExpr disjunction(ConstraintExpr a, ConstraintExpr b);

  Kind kind() const { return node_->kind; }
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }

  // Atom accessors; only valid when kind() == Atom.
  const std::string& var() const { return node_->var; }
  Cmp comparator() const { return node_->cmp; }
  const TypedValue& value() const { return node_->value; }

  // Children; one for Not, two for And / Or.
  const std::vector<ConstraintExpr>& children() const { return node_->children; }

  // Three-valued evaluation: nullopt when a variable is unbound or a
  // comparison crosses incomparable kinds. And/Or short-circuit the way
  // SPARQL filters do (FALSE && error == FALSE, TRUE || error == TRUE).
  std::optional<bool> evaluate(
      const std::function<std::optional<TypedValue>(const std::string&)>& lookup) const;

  // Negation normal form; negations are absorbed into comparators.
  ConstraintExpr to_nnf() const;

  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::string var;
    Cmp cmp = Cmp::Eq;
    TypedValue value;
    std::vector<ConstraintExpr> children;
  };

  explicit ConstraintExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  ConstraintExpr nnf_inner(bool negated) const;

  std::shared_ptr<const Node> node_;
};

}  // namespace ltqp
