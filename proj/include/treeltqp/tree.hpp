// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treeltqp/constraint.hpp"
#include "treeltqp/rdf.hpp"

namespace ltqp {

enum class RelationType {
  GreaterThan,
  GreaterThanOrEqualTo,
  LessThan,
  LessThanOrEqualTo,
  EqualTo,
  Unconstrained
};

// One hypermedia relation: follow `target` to reach data whose `path` value
// satisfies `type` against `boundary`. A relation missing its type, path,
// or a parseable boundary degrades to Unconstrained with the target kept,
// so malformed metadata can never hide a document.
struct TreeRelation {
  std::string source_doc;
  std::string target;
  RelationType type = RelationType::Unconstrained;
  std::string path;  // empty when the relation carries no tree:path
  std::optional<TypedValue> boundary;
};

std::string to_string(RelationType t);

// All relations advertised by one dereferenced document: one TreeRelation
// per (relation node, tree:node target) pair. Relation nodes without a
// tree:node triple describe nothing reachable and are skipped.
std::vector<TreeRelation> extract_relations(const std::vector<Triple>& doc,
                                            const std::string& doc_iri);

// The boolean constraint a relation places on data behind its target:
// `v(path) cmp boundary` for the five comparators, TRUE for Unconstrained.
ConstraintExpr relation_to_constraint(const TreeRelation& rel);

}  // namespace ltqp
