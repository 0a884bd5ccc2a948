// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "treeltqp/rdf.hpp"

namespace ltqp {

// Resolves `ref` against an absolute base IRI. Handles absolute refs,
// fragment-only refs, authority/path-absolute refs, and relative paths with
// ./ and ../ segments.
std::string resolve_iri(const std::string& base, const std::string& ref);

// Inverse convenience for serialization: "<>" target when iri == base, a
// bare filename when both share the base's directory, the absolute form
// otherwise. Returns the text to place between angle brackets.
std::string relativize_iri(const std::string& iri, const std::string& base);

// Reads the supported Turtle subset: @prefix/@base, `a`, predicate lists,
// object lists, anonymous and labeled blank nodes, typed/plain/langtag
// literals, numeric shorthand, relative IRIs against `base`. Blank node
// labels are document-scoped and fresh per parse. Named graphs and
// collections raise UnsupportedFeatureError; anything else malformed raises
// ParseError with a position.
std::vector<Triple> parse_turtle(std::string_view text, const std::string& base);

// Writes triples so that parse_turtle(serialize_turtle(ts, base), base)
// yields the same graph up to blank node relabeling. Blank nodes referenced
// exactly once are inlined as [ ... ].
std::string serialize_turtle(const std::vector<Triple>& triples, const std::string& base);

}  // namespace ltqp
