// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/fragment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "treeltqp/errors.hpp"
#include "treeltqp/tree.hpp"
#include "treeltqp/turtle.hpp"
#include "treeltqp/vocab.hpp"

namespace ltqp {

std::vector<Triple> generate_dataset(const SensorDataSpec& spec) {
  std::vector<Triple> out;
  out.reserve(static_cast<std::size_t>(spec.count) * 3);
  std::mt19937_64 rng(spec.seed);
  const int sensors = std::max(1, spec.sensors);
  for (std::int64_t k = 0; k < spec.count; ++k) {
    const Term subject = Term::iri(vocab::kExNs + "m" + std::to_string(k));
    const std::int64_t ts = spec.start_micros + k * spec.step_micros;
    out.push_back({subject, Term::iri(vocab::kSarefHasTimestamp),
                   Term::literal(format_date_time_micros(ts), vocab::kXsdDateTime)});
    // Integer arithmetic on the raw draw keeps the stream identical across
    // platforms; uniform_real_distribution would not be.
    const std::int64_t cents = 1000 + static_cast<std::int64_t>(rng() % 4000);
    char value[32];
    std::snprintf(value, sizeof(value), "%lld.%02lld", static_cast<long long>(cents / 100),
                  static_cast<long long>(cents % 100));
    out.push_back({subject, Term::iri(vocab::kSarefHasValue),
                   Term::literal(value, vocab::kXsdDecimal)});
    out.push_back({subject, Term::iri(vocab::kSarefMeasurementMadeBy),
                   Term::iri(vocab::kExNs + "sensor" + std::to_string(k % sensors))});
  }
  return out;
}

namespace {

struct Measurement {
  Term subject;
  TypedValue value;
  Term value_term;
  std::vector<Triple> triples;
};

std::string leaf_filename(int index, int n) {
  int width = 4;
  for (int v = n; v >= 10000 && width < 10; v /= 10) ++width;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "leaf-%0*d.ttl", width, index + 1);
  return buf;
}

void add_relation(std::vector<Triple>& root, const std::string& root_iri, int& counter,
                  const std::string& type_iri, const std::string& path,
                  const Term& boundary, const std::string& target_iri) {
  const Term node = Term::blank("r" + std::to_string(counter++));
  root.push_back({Term::iri(root_iri), Term::iri(vocab::kTreeRelation), node});
  root.push_back({node, Term::iri(vocab::kRdfType), Term::iri(type_iri)});
  root.push_back({node, Term::iri(vocab::kTreePath), Term::iri(path)});
  root.push_back({node, Term::iri(vocab::kTreeValue), boundary});
  root.push_back({node, Term::iri(vocab::kTreeNode), Term::iri(target_iri)});
}

}  // namespace

FragmentSet fragment(const std::vector<Triple>& data, int n, const std::string& path,
                     const std::string& base) {
  if (n < 1) throw FragmentError("leaf count must be at least 1");
  std::string dir = base;
  if (dir.empty() || dir.back() != '/') dir += '/';

  const Term path_pred = Term::iri(path);
  std::vector<Measurement> measurements;
  std::unordered_map<Term, std::size_t, TermHash> by_subject;
  for (const Triple& t : data) {
    auto [it, fresh] = by_subject.try_emplace(t.subject, measurements.size());
    if (fresh) measurements.push_back({t.subject, {}, {}, {}});
    measurements[it->second].triples.push_back(t);
  }
  for (Measurement& m : measurements) {
    int found = 0;
    for (const Triple& t : m.triples) {
      if (t.predicate != path_pred) continue;
      ++found;
      auto value = typed_value_of(t.object);
      if (!value)
        throw FragmentError("subject " + to_string(m.subject) +
                            " has no comparable value for the fragmentation path");
      m.value = *value;
      m.value_term = t.object;
    }
    if (found == 0)
      throw FragmentError("subject " + to_string(m.subject) +
                          " lacks a value for the fragmentation path");
    if (found > 1)
      throw FragmentError("subject " + to_string(m.subject) +
                          " has multiple values for the fragmentation path");
  }
  if (static_cast<std::size_t>(n) > measurements.size())
    throw FragmentError("cannot split " + std::to_string(measurements.size()) +
                        " measurements into " + std::to_string(n) + " leaves");

  bool has_datetime = false, has_numeric = false;
  for (const Measurement& m : measurements)
    (m.value.kind == ValueKind::DateTime ? has_datetime : has_numeric) = true;
  if (has_datetime && has_numeric)
    throw FragmentError("fragmentation path values are not mutually comparable");

  std::sort(measurements.begin(), measurements.end(),
            [](const Measurement& a, const Measurement& b) {
              const int c = *compare(a.value, b.value);
              if (c != 0) return c < 0;
              return a.subject < b.subject;
            });

  FragmentSet fs;
  fs.n = n;
  fs.path = path;
  fs.root.iri = dir + "root.ttl";

  const std::size_t total = measurements.size();
  const std::size_t base_size = total / static_cast<std::size_t>(n);
  const std::size_t remainder = total % static_cast<std::size_t>(n);
  std::size_t cursor = 0;
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end)
  for (int i = 0; i < n; ++i) {
    const std::size_t size = base_size + (static_cast<std::size_t>(i) < remainder ? 1 : 0);
    groups.emplace_back(cursor, cursor + size);
    cursor += size;
  }

  int relation_counter = 0;
  for (int i = 0; i < n; ++i) {
    const auto [begin, end] = groups[i];
    FragmentDoc leaf;
    leaf.iri = dir + leaf_filename(i, n);
    for (std::size_t k = begin; k < end; ++k) {
      leaf.triples.insert(leaf.triples.end(), measurements[k].triples.begin(),
                          measurements[k].triples.end());
    }

    const Measurement& lo = measurements[begin];
    const Measurement& hi_in_leaf = measurements[end - 1];
    add_relation(fs.root.triples, fs.root.iri, relation_counter,
                 vocab::kTreeGreaterThanOrEqualTo, path, lo.value_term, leaf.iri);
    if (i == n - 1) {
      add_relation(fs.root.triples, fs.root.iri, relation_counter, vocab::kTreeLessThanOrEqualTo,
                   path, hi_in_leaf.value_term, leaf.iri);
    } else {
      const Measurement& next_lo = measurements[groups[i + 1].first];
      if (compare(hi_in_leaf.value, next_lo.value) == 0) {
        // Equal values straddle the cut; a closed upper bound keeps this
        // leaf reachable for queries on the shared value.
        add_relation(fs.root.triples, fs.root.iri, relation_counter,
                     vocab::kTreeLessThanOrEqualTo, path, hi_in_leaf.value_term, leaf.iri);
      } else {
        add_relation(fs.root.triples, fs.root.iri, relation_counter, vocab::kTreeLessThan, path,
                     next_lo.value_term, leaf.iri);
      }
    }
    fs.leaves.push_back(std::move(leaf));
  }
  return fs;
}

Manifest write_fragments(const FragmentSet& fs, const std::string& dir) {
  namespace fsys = std::filesystem;
  fsys::create_directories(dir);
  Manifest manifest;
  auto write_doc = [&](const FragmentDoc& doc) {
    const std::string filename = doc.iri.substr(doc.iri.rfind('/') + 1);
    const fsys::path file = fsys::path(dir) / filename;
    std::ofstream out(file, std::ios::binary);
    if (!out) throw FragmentError("cannot write " + file.string());
    out << serialize_turtle(doc.triples, doc.iri);
    manifest.entries.emplace_back(doc.iri, filename);
  };
  write_doc(fs.root);
  for (const FragmentDoc& leaf : fs.leaves) write_doc(leaf);

  std::ofstream mf(fsys::path(dir) / kManifestFilename, std::ios::binary);
  if (!mf) throw FragmentError("cannot write manifest in " + dir);
  for (const auto& [iri, filename] : manifest.entries) mf << iri << '\t' << filename << '\n';
  return manifest;
}

Manifest read_manifest(const std::string& dir) {
  std::ifstream in(std::filesystem::path(dir) / kManifestFilename);
  if (!in) throw FragmentError("no " + std::string(kManifestFilename) + " in " + dir);
  Manifest manifest;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw FragmentError("malformed manifest line: " + line);
    manifest.entries.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return manifest;
}

}  // namespace ltqp
