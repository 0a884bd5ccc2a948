// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ltqp {

enum class TermKind { Iri, Blank, Literal };

// An RDF term. `value` holds the IRI text, the blank node label, or the
// literal lexical form depending on `kind`. A literal carries at most one of
// datatype / language.
struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;
  std::string datatype;
  std::string language;

  static Term iri(std::string v) { return {TermKind::Iri, std::move(v), "", ""}; }
  static Term blank(std::string label) { return {TermKind::Blank, std::move(label), "", ""}; }
  static Term literal(std::string lex, std::string dt = "") {
    return {TermKind::Literal, std::move(lex), std::move(dt), ""};
  }
  static Term lang_literal(std::string lex, std::string lang) {
    return {TermKind::Literal, std::move(lex), "", std::move(lang)};
  }

  bool is_iri() const { return kind == TermKind::Iri; }
  bool is_blank() const { return kind == TermKind::Blank; }
  bool is_literal() const { return kind == TermKind::Literal; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// N-Triples-style rendering, used in diagnostics and binding output.
std::string to_string(const Term& t);
std::string to_string(const Triple& t);

struct TermHash {
  std::size_t operator()(const Term& t) const;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const;
};

struct TermPairHash {
  std::size_t operator()(const std::pair<Term, Term>& p) const;
};

// A triple pattern position: a concrete term or a wildcard.
using PatternSlot = std::optional<Term>;

// Indexed in-memory triple store with set semantics. Inserting a duplicate
// is a no-op. One writer or many readers at a time.
class TripleStore {
 public:
  TripleStore() = default;
  TripleStore(const TripleStore&) = delete;
  TripleStore& operator=(const TripleStore&) = delete;

  // Returns true if the triple was new.
  bool insert(const Triple& t);

  // Inserts a parsed document, skolemizing blank node labels with the
  // document IRI so labels from different documents can never collide.
  // Returns the number of triples that were new.
  std::size_t insert_document(const std::string& doc_iri, const std::vector<Triple>& doc);

  std::size_t size() const;

  // All stored triples that agree with every concrete slot, in insertion
  // order. Uses the (subject,predicate), subject, or predicate index when
  // the pattern allows; otherwise scans.
  std::vector<Triple> match(const PatternSlot& s, const PatternSlot& p,
                            const PatternSlot& o) const;

  // Snapshot of the stored triples in insertion order.
  std::vector<Triple> triples() const;

 private:
  bool insert_unlocked(const Triple& t);

  mutable std::shared_mutex mutex_;
  std::vector<Triple> triples_;
  std::unordered_set<Triple, TripleHash> present_;
  std::unordered_map<Term, std::vector<std::uint32_t>, TermHash> by_subject_;
  std::unordered_map<Term, std::vector<std::uint32_t>, TermHash> by_predicate_;
  std::unordered_map<std::pair<Term, Term>, std::vector<std::uint32_t>, TermPairHash>
      by_subject_predicate_;
};

}  // namespace ltqp
