// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/constraint.hpp"

namespace ltqp {

Cmp complement_of(Cmp c) {
  switch (c) {
    case Cmp::Lt: return Cmp::Ge;
    case Cmp::Le: return Cmp::Gt;
    case Cmp::Gt: return Cmp::Le;
    case Cmp::Ge: return Cmp::Lt;
    case Cmp::Eq: return Cmp::Ne;
    case Cmp::Ne: return Cmp::Eq;
  }
  return Cmp::Eq;
}

bool cmp_holds(int three_way, Cmp c) {
  switch (c) {
    case Cmp::Lt: return three_way < 0;
    case Cmp::Le: return three_way <= 0;
    case Cmp::Gt: return three_way > 0;
    case Cmp::Ge: return three_way >= 0;
    case Cmp::Eq: return three_way == 0;
    case Cmp::Ne: return three_way != 0;
  }
  return false;
}

std::string cmp_symbol(Cmp c) {
  switch (c) {
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Gt: return ">";
    case Cmp::Ge: return ">=";
    case Cmp::Eq: return "=";
    case Cmp::Ne: return "!=";
  }
  return "?";
}

ConstraintExpr ConstraintExpr::constant(bool value) {
  static const auto kTrue = std::make_shared<const Node>(Node{Kind::True, "", Cmp::Eq, {}, {}});
  static const auto kFalse = std::make_shared<const Node>(Node{Kind::False, "", Cmp::Eq, {}, {}});
  return ConstraintExpr(value ? kTrue : kFalse);
}

ConstraintExpr ConstraintExpr::atom(std::string var, Cmp cmp, TypedValue value) {
  return ConstraintExpr(
      std::make_shared<const Node>(Node{Kind::Atom, std::move(var), cmp, value, {}}));
}

ConstraintExpr ConstraintExpr::negation(ConstraintExpr e) {
  return ConstraintExpr(
      std::make_shared<const Node>(Node{Kind::Not, "", Cmp::Eq, {}, {std::move(e)}}));
}

ConstraintExpr ConstraintExpr::conjunction(ConstraintExpr a, ConstraintExpr b) {
  return ConstraintExpr(std::make_shared<const Node>(
      Node{Kind::And, "", Cmp::Eq, {}, {std::move(a), std::move(b)}}));
}

ConstraintExpr ConstraintExpr::disjunction(ConstraintExpr a, ConstraintExpr b) {
  return ConstraintExpr(std::make_shared<const Node>(
      Node{Kind::Or, "", Cmp::Eq, {}, {std::move(a), std::move(b)}}));
}

std::optional<bool> ConstraintExpr::evaluate(
    const std::function<std::optional<TypedValue>(const std::string&)>& lookup) const {
  switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: {
      auto bound = lookup(var());
      if (!bound) return std::nullopt;
      auto three_way = compare(*bound, value());
      if (!three_way) return std::nullopt;
      return cmp_holds(*three_way, comparator());
    }
    case Kind::Not: {
      auto inner = children()[0].evaluate(lookup);
      if (!inner) return std::nullopt;
      return !*inner;
    }
    case Kind::And: {
      bool error = false;
      for (const auto& child : children()) {
        auto v = child.evaluate(lookup);
        if (!v) error = true;
        else if (!*v) return false;
      }
      if (error) return std::nullopt;
      return true;
    }
    case Kind::Or: {
      bool error = false;
      for (const auto& child : children()) {
        auto v = child.evaluate(lookup);
        if (!v) error = true;
        else if (*v) return true;
      }
      if (error) return std::nullopt;
      return false;
    }
  }
  return std::nullopt;
}

ConstraintExpr ConstraintExpr::nnf_inner(bool negated) const {
  switch (kind()) {
    case Kind::True: return constant(!negated);
    case Kind::False: return constant(negated);
    case Kind::Atom:
      return negated ? atom(var(), complement_of(comparator()), value()) : *this;
    case Kind::Not:
      return children()[0].nnf_inner(!negated);
    case Kind::And: {
      auto a = children()[0].nnf_inner(negated);
      auto b = children()[1].nnf_inner(negated);
      return negated ? disjunction(std::move(a), std::move(b))
                     : conjunction(std::move(a), std::move(b));
    }
    case Kind::Or: {
      auto a = children()[0].nnf_inner(negated);
      auto b = children()[1].nnf_inner(negated);
      return negated ? conjunction(std::move(a), std::move(b))
                     : disjunction(std::move(a), std::move(b));
    }
  }
  return *this;
}

ConstraintExpr ConstraintExpr::to_nnf() const { return nnf_inner(false); }

std::string ConstraintExpr::to_string() const {
  switch (kind()) {
    case Kind::True: return "TRUE";
    case Kind::False: return "FALSE";
    case Kind::Atom:
      return "?" + var() + " " + cmp_symbol(comparator()) + " " + ltqp::to_string(value());
    case Kind::Not:
      return "!(" + children()[0].to_string() + ")";
    case Kind::And:
      return "(" + children()[0].to_string() + " && " + children()[1].to_string() + ")";
    case Kind::Or:
      return "(" + children()[0].to_string() + " || " + children()[1].to_string() + ")";
  }
  return "";
}

}  // namespace ltqp
