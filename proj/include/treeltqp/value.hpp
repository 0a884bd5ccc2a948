// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "treeltqp/rdf.hpp"

namespace ltqp {

enum class ValueKind { DateTime, Integer, Decimal };

// A point on a totally ordered axis. dateTime values are normalized to
// microseconds since the Unix epoch, UTC. Integer and Decimal compare by
// numeric value; dateTime and numerics are incomparable.
struct TypedValue {
  ValueKind kind = ValueKind::Integer;
  std::int64_t int_value = 0;  // Integer value, or dateTime micros
  double dec_value = 0.0;      // Decimal value

  static TypedValue date_time_micros(std::int64_t micros) {
    return {ValueKind::DateTime, micros, 0.0};
  }
  static TypedValue integer(std::int64_t v) { return {ValueKind::Integer, v, 0.0}; }
  static TypedValue decimal(double v) { return {ValueKind::Decimal, 0, v}; }

  bool is_numeric() const { return kind != ValueKind::DateTime; }

  friend bool operator==(const TypedValue&, const TypedValue&) = default;
};

// -1 / 0 / 1, or nullopt when the kinds are incomparable.
std::optional<int> compare(const TypedValue& a, const TypedValue& b);

// xsd:dateTime lexical form, optional fractional seconds (up to 6 digits)
// and optional timezone offset; absent timezone is read as UTC.
std::optional<std::int64_t> parse_date_time_micros(std::string_view lexical);

// Canonical UTC rendering with a 6-digit fraction.
std::string format_date_time_micros(std::int64_t micros);

// Value of a literal term whose datatype maps onto one of the three kinds.
// nullopt for IRIs, blanks, plain literals, unknown datatypes, and
// unparseable lexical forms.
std::optional<TypedValue> typed_value_of(const Term& t);

std::string to_string(const TypedValue& v);

}  // namespace ltqp
