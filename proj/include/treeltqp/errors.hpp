// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <stdexcept>
#include <string>

namespace ltqp {

// Syntax error in a Turtle document or a query, with a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int col)
      : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ")"),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// A construct we recognize but deliberately do not support.
class UnsupportedFeatureError : public ParseError {
 public:
  using ParseError::ParseError;
  explicit UnsupportedFeatureError(const std::string& what) : ParseError(what, 0, 0) {}
};

// Constraint solving over mixed value kinds (dateTime vs numeric) or more
// than one variable. Callers that must never prune on confusion catch this
// and fall back to "follow the link".
class SolverTypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FetchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FragmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ltqp
