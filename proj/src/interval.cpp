// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/interval.hpp"

#include <algorithm>

#include "treeltqp/errors.hpp"

namespace ltqp {

namespace {

int cmp_values(const TypedValue& a, const TypedValue& b) {
  // Axis homogeneity is established before intervals are built.
  return *compare(a, b);
}

// Smallest integer inside a lower bound / largest inside an upper bound.
std::int64_t lo_effective(const IntervalBound& b) {
  return b.open ? b.value.int_value + 1 : b.value.int_value;
}
std::int64_t hi_effective(const IntervalBound& b) {
  return b.open ? b.value.int_value - 1 : b.value.int_value;
}

bool interval_empty(const Interval& iv, bool integer_axis) {
  if (!iv.lo || !iv.hi) return false;
  if (integer_axis) return lo_effective(*iv.lo) > hi_effective(*iv.hi);
  const int c = cmp_values(iv.lo->value, iv.hi->value);
  if (c > 0) return true;
  if (c == 0) return iv.lo->open || iv.hi->open;
  return false;
}

// Orders lower bounds; absent = -inf, and at equal values closed < open.
int cmp_lo(const std::optional<IntervalBound>& a, const std::optional<IntervalBound>& b) {
  if (!a && !b) return 0;
  if (!a) return -1;
  if (!b) return 1;
  const int c = cmp_values(a->value, b->value);
  if (c != 0) return c;
  if (a->open == b->open) return 0;
  return a->open ? 1 : -1;
}

// Orders upper bounds; absent = +inf, and at equal values open < closed.
int cmp_hi(const std::optional<IntervalBound>& a, const std::optional<IntervalBound>& b) {
  if (!a && !b) return 0;
  if (!a) return 1;
  if (!b) return -1;
  const int c = cmp_values(a->value, b->value);
  if (c != 0) return c;
  if (a->open == b->open) return 0;
  return a->open ? -1 : 1;
}

// Whether `b` (whose lo is not before a's lo) overlaps or touches `a`
// closely enough that the two merge into one interval.
bool connects(const Interval& a, const Interval& b, bool integer_axis) {
  if (!a.hi || !b.lo) return true;
  const int c = cmp_values(b.lo->value, a.hi->value);
  if (c < 0) return true;
  if (c == 0) return !(b.lo->open && a.hi->open);
  if (integer_axis) return lo_effective(*b.lo) <= hi_effective(*a.hi) + 1;
  return false;
}

}  // namespace

IntervalSet IntervalSet::empty_set(bool integer_axis) { return IntervalSet(integer_axis); }

IntervalSet IntervalSet::full_axis(bool integer_axis) {
  IntervalSet s(integer_axis);
  s.parts_.push_back(Interval{});
  return s;
}

IntervalSet IntervalSet::of(std::vector<Interval> parts, bool integer_axis) {
  IntervalSet s(integer_axis);
  parts.erase(std::remove_if(parts.begin(), parts.end(),
                             [&](const Interval& iv) { return interval_empty(iv, integer_axis); }),
              parts.end());
  std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) {
    const int c = cmp_lo(x.lo, y.lo);
    if (c != 0) return c < 0;
    return cmp_hi(x.hi, y.hi) < 0;
  });
  for (Interval& iv : parts) {
    if (!s.parts_.empty() && connects(s.parts_.back(), iv, integer_axis)) {
      Interval& last = s.parts_.back();
      if (cmp_hi(last.hi, iv.hi) < 0) last.hi = iv.hi;
    } else {
      s.parts_.push_back(std::move(iv));
    }
  }
  return s;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  for (const Interval& a : parts_) {
    for (const Interval& b : other.parts_) {
      Interval iv;
      iv.lo = cmp_lo(a.lo, b.lo) >= 0 ? a.lo : b.lo;
      iv.hi = cmp_hi(a.hi, b.hi) <= 0 ? a.hi : b.hi;
      out.push_back(std::move(iv));
    }
  }
  return of(std::move(out), integer_axis_ || other.integer_axis_);
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> out = parts_;
  out.insert(out.end(), other.parts_.begin(), other.parts_.end());
  return of(std::move(out), integer_axis_ || other.integer_axis_);
}

IntervalSet IntervalSet::complement() const {
  if (parts_.empty()) return full_axis(integer_axis_);
  std::vector<Interval> out;
  std::optional<IntervalBound> cursor;  // lower bound of the next gap; nullopt = -inf
  bool open_ended = true;
  for (const Interval& p : parts_) {
    if (p.lo) {
      out.push_back(Interval{cursor, IntervalBound{p.lo->value, !p.lo->open}});
    }
    if (p.hi) {
      cursor = IntervalBound{p.hi->value, !p.hi->open};
      open_ended = true;
    } else {
      open_ended = false;
    }
  }
  if (open_ended) out.push_back(Interval{cursor, std::nullopt});
  return of(std::move(out), integer_axis_);
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += " u ";
    const Interval& p = parts_[i];
    out += p.lo ? (p.lo->open ? "(" : "[") + ltqp::to_string(p.lo->value) : std::string("(-inf");
    out += ", ";
    out += p.hi ? ltqp::to_string(p.hi->value) + (p.hi->open ? ")" : "]") : std::string("+inf)");
  }
  return out;
}

namespace {

void analyze_into(const ConstraintExpr& e, ExprTraits& t) {
  switch (e.kind()) {
    case ConstraintExpr::Kind::True:
    case ConstraintExpr::Kind::False:
      return;
    case ConstraintExpr::Kind::Atom: {
      if (std::find(t.vars.begin(), t.vars.end(), e.var()) == t.vars.end())
        t.vars.push_back(e.var());
      t.has_constant = true;
      if (e.value().kind == ValueKind::DateTime) {
        t.has_datetime = true;
        t.all_integer = false;
      } else {
        t.has_numeric = true;
        if (e.value().kind != ValueKind::Integer) t.all_integer = false;
      }
      return;
    }
    default:
      for (const auto& child : e.children()) analyze_into(child, t);
  }
}

IntervalSet atom_intervals(Cmp cmp, const TypedValue& v, bool integer_axis) {
  switch (cmp) {
    case Cmp::Lt:
      return IntervalSet::of({Interval{std::nullopt, IntervalBound{v, true}}}, integer_axis);
    case Cmp::Le:
      return IntervalSet::of({Interval{std::nullopt, IntervalBound{v, false}}}, integer_axis);
    case Cmp::Gt:
      return IntervalSet::of({Interval{IntervalBound{v, true}, std::nullopt}}, integer_axis);
    case Cmp::Ge:
      return IntervalSet::of({Interval{IntervalBound{v, false}, std::nullopt}}, integer_axis);
    case Cmp::Eq:
      return IntervalSet::of({Interval{IntervalBound{v, false}, IntervalBound{v, false}}},
                             integer_axis);
    case Cmp::Ne:
      return IntervalSet::of({Interval{std::nullopt, IntervalBound{v, true}},
                              Interval{IntervalBound{v, true}, std::nullopt}},
                             integer_axis);
  }
  return IntervalSet::empty_set(integer_axis);
}

IntervalSet build(const ConstraintExpr& e, bool integer_axis) {
  switch (e.kind()) {
    case ConstraintExpr::Kind::True:
      return IntervalSet::full_axis(integer_axis);
    case ConstraintExpr::Kind::False:
      return IntervalSet::empty_set(integer_axis);
    case ConstraintExpr::Kind::Atom:
      return atom_intervals(e.comparator(), e.value(), integer_axis);
    case ConstraintExpr::Kind::Not:
      return build(e.children()[0], integer_axis).complement();
    case ConstraintExpr::Kind::And: {
      IntervalSet acc = IntervalSet::full_axis(integer_axis);
      for (const auto& child : e.children()) acc = acc.intersect(build(child, integer_axis));
      return acc;
    }
    case ConstraintExpr::Kind::Or: {
      IntervalSet acc = IntervalSet::empty_set(integer_axis);
      for (const auto& child : e.children()) acc = acc.unite(build(child, integer_axis));
      return acc;
    }
  }
  return IntervalSet::empty_set(integer_axis);
}

void check_axis(const ExprTraits& t) {
  if (t.vars.size() > 1)
    throw SolverTypeError("expression mentions more than one variable");
  if (t.has_datetime && t.has_numeric)
    throw SolverTypeError("expression mixes dateTime and numeric constants");
}

}  // namespace

ExprTraits analyze(const ConstraintExpr& e) {
  ExprTraits t;
  analyze_into(e, t);
  return t;
}

IntervalSet to_interval_set(const ConstraintExpr& e) {
  const ExprTraits t = analyze(e);
  check_axis(t);
  return build(e, t.has_constant && t.all_integer);
}

IntervalSet to_interval_set_on_axis(const ConstraintExpr& e, bool integer_axis) {
  return build(e, integer_axis);
}

bool satisfiable(const ConstraintExpr& f, const ConstraintExpr& e) {
  ExprTraits tf = analyze(f);
  ExprTraits te = analyze(e);
  try {
    check_axis(tf);
    check_axis(te);
    if ((tf.has_datetime && te.has_numeric) || (tf.has_numeric && te.has_datetime))
      throw SolverTypeError("filter and relation constants have incomparable kinds");
  } catch (const SolverTypeError&) {
    return true;  // never prune on type confusion
  }
  const bool has_constant = tf.has_constant || te.has_constant;
  const bool integer_axis = has_constant && tf.all_integer && te.all_integer;
  const IntervalSet fs = to_interval_set_on_axis(f, integer_axis);
  const IntervalSet es = to_interval_set_on_axis(e, integer_axis);
  return !fs.intersect(es).is_empty();
}

}  // namespace ltqp
