// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/tree.hpp"

#include <unordered_map>

#include "treeltqp/value.hpp"
#include "treeltqp/vocab.hpp"

namespace ltqp {

namespace {

std::optional<RelationType> relation_type_of(const std::string& class_iri) {
  if (class_iri == vocab::kTreeGreaterThan) return RelationType::GreaterThan;
  if (class_iri == vocab::kTreeGreaterThanOrEqualTo) return RelationType::GreaterThanOrEqualTo;
  if (class_iri == vocab::kTreeLessThan) return RelationType::LessThan;
  if (class_iri == vocab::kTreeLessThanOrEqualTo) return RelationType::LessThanOrEqualTo;
  if (class_iri == vocab::kTreeEqualTo) return RelationType::EqualTo;
  return std::nullopt;
}

Cmp comparator_of(RelationType t) {
  switch (t) {
    case RelationType::GreaterThan: return Cmp::Gt;
    case RelationType::GreaterThanOrEqualTo: return Cmp::Ge;
    case RelationType::LessThan: return Cmp::Lt;
    case RelationType::LessThanOrEqualTo: return Cmp::Le;
    case RelationType::EqualTo: return Cmp::Eq;
    case RelationType::Unconstrained: break;
  }
  return Cmp::Eq;
}

}  // namespace

std::string to_string(RelationType t) {
  switch (t) {
    case RelationType::GreaterThan: return "GreaterThan";
    case RelationType::GreaterThanOrEqualTo: return "GreaterThanOrEqualTo";
    case RelationType::LessThan: return "LessThan";
    case RelationType::LessThanOrEqualTo: return "LessThanOrEqualTo";
    case RelationType::EqualTo: return "EqualTo";
    case RelationType::Unconstrained: return "Unconstrained";
  }
  return "";
}

std::vector<TreeRelation> extract_relations(const std::vector<Triple>& doc,
                                            const std::string& doc_iri) {
  const Term rel_pred = Term::iri(vocab::kTreeRelation);
  const Term node_pred = Term::iri(vocab::kTreeNode);
  const Term path_pred = Term::iri(vocab::kTreePath);
  const Term value_pred = Term::iri(vocab::kTreeValue);
  const Term type_pred = Term::iri(vocab::kRdfType);

  // First triple wins when a relation node repeats a property.
  struct NodeInfo {
    std::vector<std::string> targets;
    std::optional<RelationType> type;
    std::string path;
    std::optional<TypedValue> boundary;
    bool has_value_triple = false;
  };
  std::unordered_map<Term, NodeInfo, TermHash> nodes;
  std::vector<Term> order;

  for (const Triple& t : doc) {
    if (t.predicate == rel_pred && (t.object.is_blank() || t.object.is_iri())) {
      auto [it, fresh] = nodes.try_emplace(t.object);
      if (fresh) order.push_back(t.object);
    }
  }
  for (const Triple& t : doc) {
    auto it = nodes.find(t.subject);
    if (it == nodes.end()) continue;
    NodeInfo& info = it->second;
    if (t.predicate == node_pred && t.object.is_iri()) {
      info.targets.push_back(t.object.value);
    } else if (t.predicate == type_pred && t.object.is_iri() && !info.type) {
      info.type = relation_type_of(t.object.value);
    } else if (t.predicate == path_pred && t.object.is_iri() && info.path.empty()) {
      info.path = t.object.value;
    } else if (t.predicate == value_pred && !info.has_value_triple) {
      info.has_value_triple = true;
      info.boundary = typed_value_of(t.object);
    }
  }

  std::vector<TreeRelation> out;
  for (const Term& node : order) {
    const NodeInfo& info = nodes.at(node);
    for (const std::string& target : info.targets) {
      TreeRelation rel;
      rel.source_doc = doc_iri;
      rel.target = target;
      rel.path = info.path;
      const bool well_formed =
          info.type && *info.type != RelationType::Unconstrained && !info.path.empty() &&
          info.boundary.has_value();
      if (well_formed) {
        rel.type = *info.type;
        rel.boundary = info.boundary;
      } else {
        rel.type = RelationType::Unconstrained;
      }
      out.push_back(std::move(rel));
    }
  }
  return out;
}

ConstraintExpr relation_to_constraint(const TreeRelation& rel) {
  if (rel.type == RelationType::Unconstrained || !rel.boundary) {
    return ConstraintExpr::constant(true);
  }
  return ConstraintExpr::atom(rel.path, comparator_of(rel.type), *rel.boundary);
}

}  // namespace ltqp
