// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/criterion.hpp"

#include <map>
#include <vector>

#include "treeltqp/interval.hpp"

namespace ltqp {

std::string to_string(CriterionKind k) {
  return k == CriterionKind::PredicateBased ? "predicate" : "rule";
}

bool decide(const ReachabilityCriterion& c, const TreeRelation& rel,
            std::span<const TreeRelation> same_target) {
  if (c.kind == CriterionKind::PredicateBased) return !rel.target.empty();
  if (rel.target.empty()) return false;
  if (!c.query) return true;  // nothing to push down; never prune blind

  // Unconstrained relations contribute TRUE, so they never veto a link.
  std::map<std::string, ConstraintExpr> per_path;
  for (const TreeRelation& r : same_target) {
    if (r.type == RelationType::Unconstrained || r.path.empty()) continue;
    auto [it, fresh] = per_path.try_emplace(r.path, relation_to_constraint(r));
    if (!fresh)
      it->second = ConstraintExpr::conjunction(it->second, relation_to_constraint(r));
  }
  for (const auto& [path, e] : per_path) {
    const ConstraintExpr f = relevant_filter(*c.query, path);
    if (!satisfiable(f, e)) return false;
  }
  return true;
}

}  // namespace ltqp
