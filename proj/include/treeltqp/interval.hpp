// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treeltqp/constraint.hpp"

namespace ltqp {

// One end of an interval. Absent bounds are expressed at the Interval level.
struct IntervalBound {
  TypedValue value;
  bool open = false;
};

// A (possibly unbounded) interval on a single ordered axis.
struct Interval {
  std::optional<IntervalBound> lo;
  std::optional<IntervalBound> hi;
};

// A normalized set of disjoint, non-adjacent intervals, sorted ascending.
// On an integer axis, adjacency and emptiness are integer-aware: (3,4) is
// empty and [1,3] touches [4,7].
class IntervalSet {
 public:
  static IntervalSet empty_set(bool integer_axis);
  static IntervalSet full_axis(bool integer_axis);
  static IntervalSet of(std::vector<Interval> parts, bool integer_axis);

  bool is_empty() const { return parts_.empty(); }
  bool integer_axis() const { return integer_axis_; }
  const std::vector<Interval>& parts() const { return parts_; }

  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet complement() const;

  std::string to_string() const;

 private:
  explicit IntervalSet(bool integer_axis) : integer_axis_(integer_axis) {}

  std::vector<Interval> parts_;
  bool integer_axis_ = false;
};

// Variable and constant-kind census of an expression; used to pick the axis
// before interval normalization.
struct ExprTraits {
  std::vector<std::string> vars;  // distinct, in first-appearance order
  bool has_datetime = false;
  bool has_numeric = false;
  bool all_integer = true;
  bool has_constant = false;
};

ExprTraits analyze(const ConstraintExpr& e);

// Exact normal form of a single-variable expression: the returned set holds
// exactly the values x with e(x) = true. Throws SolverTypeError when the
// expression mixes dateTime with numeric constants or mentions more than
// one variable.
IntervalSet to_interval_set(const ConstraintExpr& e);

// Internal form used by satisfiable(): the axis is chosen by the caller so
// that both expressions are normalized consistently.
IntervalSet to_interval_set_on_axis(const ConstraintExpr& e, bool integer_axis);

// Decides whether any value satisfies f and e together. Never throws: on
// incomparable kinds or a multi-variable expression the answer is true so
// that a confused solver can never cause a link to be pruned.
bool satisfiable(const ConstraintExpr& f, const ConstraintExpr& e);

}  // namespace ltqp
