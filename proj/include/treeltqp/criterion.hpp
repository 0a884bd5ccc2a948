// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <memory>
#include <span>
#include <string>

#include "treeltqp/query.hpp"
#include "treeltqp/tree.hpp"

namespace ltqp {

enum class CriterionKind { PredicateBased, RuleBased };

// Decides, per discovered link, whether its target must be dereferenced.
// predicate_based follows every relation target; rule_based follows iff
// some value satisfies the pushed-down filter together with the target's
// accumulated relation constraints.
struct ReachabilityCriterion {
  CriterionKind kind = CriterionKind::PredicateBased;
  std::shared_ptr<const Query> query;  // required for rule_based

  static ReachabilityCriterion predicate_based() { return {CriterionKind::PredicateBased, {}}; }
  static ReachabilityCriterion rule_based(std::shared_ptr<const Query> q) {
    return {CriterionKind::RuleBased, std::move(q)};
  }
};

std::string to_string(CriterionKind k);

// `same_target` holds every relation discovered so far whose target equals
// rel.target (rel included). Constraints are conjoined per tree:path; the
// link is followed unless some path's F and E is unsatisfiable. Pure.
bool decide(const ReachabilityCriterion& c, const TreeRelation& rel,
            std::span<const TreeRelation> same_target);

}  // namespace ltqp
