// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treeltqp/rdf.hpp"
#include "treeltqp/value.hpp"

namespace ltqp {

// Deterministic synthetic stand-in for a sensor measurement dataset.
struct SensorDataSpec {
  std::int64_t count = 0;
  std::int64_t start_micros = 0;     // timestamp of the first measurement
  std::int64_t step_micros = 1000000;
  int sensors = 1;
  std::uint64_t seed = 42;
};

// Per measurement k: a timestamp at start + k*step, a jittered decimal
// value, and a sensor assignment (k mod sensors). 3 triples each.
std::vector<Triple> generate_dataset(const SensorDataSpec& spec);

struct FragmentDoc {
  std::string iri;
  std::vector<Triple> triples;
};

// A depth-1 tree: a root document holding only relations, and n leaf
// documents partitioning the measurements by their path value. The root
// carries one lower-bound and one upper-bound relation per leaf.
struct FragmentSet {
  FragmentDoc root;
  std::vector<FragmentDoc> leaves;
  int n = 0;
  std::string path;
};

// Splits measurements (every triple group sharing a subject stays whole)
// into n contiguous near-equal groups ordered by the value of `path`.
// `base` is the IRI directory the documents will live under; it gains a
// trailing '/' when missing. Throws FragmentError when n exceeds the
// measurement count or a subject lacks a comparable path value.
FragmentSet fragment(const std::vector<Triple>& data, int n, const std::string& path,
                     const std::string& base);

struct Manifest {
  std::vector<std::pair<std::string, std::string>> entries;  // iri, filename
};

inline const char* kManifestFilename = "manifest.tsv";

// Writes root.ttl plus one leaf file per leaf, each serialized against its
// own IRI so cross-document links stay relative, and a manifest.tsv of
// iri<TAB>filename lines. Deterministic: same inputs, same bytes.
Manifest write_fragments(const FragmentSet& fs, const std::string& dir);

Manifest read_manifest(const std::string& dir);

}  // namespace ltqp
