// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/value.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "treeltqp/vocab.hpp"

namespace ltqp {

namespace {

constexpr std::int64_t kMicrosPerSecond = 1000000;
constexpr std::int64_t kSecondsPerDay = 86400;

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = yr + (m <= 2);
}

bool read_digits(std::string_view s, std::size_t& pos, int count, int& out) {
  int v = 0;
  for (int i = 0; i < count; ++i) {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
    v = v * 10 + (s[pos++] - '0');
  }
  out = v;
  return true;
}

std::optional<TypedValue> parse_integer_value(const std::string& lex) {
  const char* begin = lex.c_str();
  const char* end = begin + lex.size();
  if (begin != end && (*begin == '+')) ++begin;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return TypedValue::integer(v);
}

std::optional<TypedValue> parse_decimal_value(const std::string& lex) {
  if (lex.empty()) return std::nullopt;
  char* parse_end = nullptr;
  const double v = std::strtod(lex.c_str(), &parse_end);
  if (parse_end != lex.c_str() + lex.size()) return std::nullopt;
  return TypedValue::decimal(v);
}

}  // namespace

std::optional<int> compare(const TypedValue& a, const TypedValue& b) {
  if ((a.kind == ValueKind::DateTime) != (b.kind == ValueKind::DateTime)) return std::nullopt;
  if (a.kind == ValueKind::DateTime) {
    if (a.int_value < b.int_value) return -1;
    if (a.int_value > b.int_value) return 1;
    return 0;
  }
  if (a.kind == ValueKind::Integer && b.kind == ValueKind::Integer) {
    if (a.int_value < b.int_value) return -1;
    if (a.int_value > b.int_value) return 1;
    return 0;
  }
  // Mixed or pure decimals: long double keeps int64 exact on this platform.
  const long double x =
      a.kind == ValueKind::Integer ? static_cast<long double>(a.int_value) : a.dec_value;
  const long double y =
      b.kind == ValueKind::Integer ? static_cast<long double>(b.int_value) : b.dec_value;
  if (x < y) return -1;
  if (x > y) return 1;
  return 0;
}

std::optional<std::int64_t> parse_date_time_micros(std::string_view s) {
  std::size_t pos = 0;
  bool negative_year = false;
  if (pos < s.size() && s[pos] == '-') {
    negative_year = true;
    ++pos;
  }
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (!read_digits(s, pos, 4, year)) return std::nullopt;
  if (pos >= s.size() || s[pos++] != '-') return std::nullopt;
  if (!read_digits(s, pos, 2, month)) return std::nullopt;
  if (pos >= s.size() || s[pos++] != '-') return std::nullopt;
  if (!read_digits(s, pos, 2, day)) return std::nullopt;
  if (pos >= s.size() || s[pos++] != 'T') return std::nullopt;
  if (!read_digits(s, pos, 2, hour)) return std::nullopt;
  if (pos >= s.size() || s[pos++] != ':') return std::nullopt;
  if (!read_digits(s, pos, 2, minute)) return std::nullopt;
  if (pos >= s.size() || s[pos++] != ':') return std::nullopt;
  if (!read_digits(s, pos, 2, second)) return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60)
    return std::nullopt;

  std::int64_t fraction_micros = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    int digits = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      if (digits < 6) fraction_micros = fraction_micros * 10 + (s[pos] - '0');
      ++digits;
      ++pos;
    }
    if (digits == 0 || digits > 6) return std::nullopt;
    for (int i = digits; i < 6; ++i) fraction_micros *= 10;
  }

  std::int64_t offset_seconds = 0;
  if (pos < s.size()) {
    const char c = s[pos];
    if (c == 'Z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      ++pos;
      int oh = 0, om = 0;
      if (!read_digits(s, pos, 2, oh)) return std::nullopt;
      if (pos >= s.size() || s[pos++] != ':') return std::nullopt;
      if (!read_digits(s, pos, 2, om)) return std::nullopt;
      offset_seconds = static_cast<std::int64_t>(oh) * 3600 + om * 60;
      if (c == '-') offset_seconds = -offset_seconds;
    } else {
      return std::nullopt;
    }
  }
  if (pos != s.size()) return std::nullopt;

  const std::int64_t y = negative_year ? -static_cast<std::int64_t>(year) : year;
  const std::int64_t days = days_from_civil(y, static_cast<unsigned>(month),
                                            static_cast<unsigned>(day));
  std::int64_t total = (days * kSecondsPerDay + hour * 3600 + minute * 60 + second -
                        offset_seconds) *
                       kMicrosPerSecond;
  total += fraction_micros;
  return total;
}

std::string format_date_time_micros(std::int64_t micros) {
  std::int64_t seconds = micros / kMicrosPerSecond;
  std::int64_t frac = micros % kMicrosPerSecond;
  if (frac < 0) {
    frac += kMicrosPerSecond;
    --seconds;
  }
  std::int64_t days = seconds / kSecondsPerDay;
  std::int64_t rem = seconds % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  std::int64_t y = 0;
  unsigned m = 0, d = 0;
  civil_from_days(days, y, m, d);
  const int hour = static_cast<int>(rem / 3600);
  const int minute = static_cast<int>((rem % 3600) / 60);
  const int second = static_cast<int>(rem % 60);
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02d.%06lld",
                static_cast<long long>(y), m, d, hour, minute, second,
                static_cast<long long>(frac));
  return buf;
}

std::optional<TypedValue> typed_value_of(const Term& t) {
  if (!t.is_literal() || t.datatype.empty()) return std::nullopt;
  const std::string& dt = t.datatype;
  if (dt == vocab::kXsdDateTime) {
    auto micros = parse_date_time_micros(t.value);
    if (!micros) return std::nullopt;
    return TypedValue::date_time_micros(*micros);
  }
  if (dt == vocab::kXsdInteger || dt == vocab::kXsdInt || dt == vocab::kXsdLong)
    return parse_integer_value(t.value);
  if (dt == vocab::kXsdDecimal || dt == vocab::kXsdDouble || dt == vocab::kXsdFloat)
    return parse_decimal_value(t.value);
  return std::nullopt;
}

std::string to_string(const TypedValue& v) {
  switch (v.kind) {
    case ValueKind::DateTime:
      return format_date_time_micros(v.int_value);
    case ValueKind::Integer:
      return std::to_string(v.int_value);
    case ValueKind::Decimal: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", v.dec_value);
      return buf;
    }
  }
  return "";
}

}  // namespace ltqp
