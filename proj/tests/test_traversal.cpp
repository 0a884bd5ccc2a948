// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "treeltqp/errors.hpp"
#include "treeltqp/fragment.hpp"
#include "treeltqp/traversal.hpp"
#include "treeltqp/turtle.hpp"
#include "treeltqp/value.hpp"
#include "treeltqp/vocab.hpp"

using namespace ltqp;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("treeltqp-trav-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string file_iri(const std::filesystem::path& p) { return "file://" + p.string(); }

SensorDataSpec spec_of(std::int64_t count) {
  SensorDataSpec spec;
  spec.count = count;
  spec.start_micros = *parse_date_time_micros("2022-01-01T00:00:00");
  spec.step_micros = 60 * 1000000LL;
  spec.sensors = 3;
  spec.seed = 7;
  return spec;
}

std::string ts_lexical(const SensorDataSpec& spec, std::int64_t k) {
  return format_date_time_micros(spec.start_micros + k * spec.step_micros);
}

std::string range_query_text(const std::string& from, const std::string& to,
                             bool to_inclusive = true) {
  return "PREFIX saref: <" + vocab::kSarefNs + ">\n" +
         "PREFIX xsd: <" + vocab::kXsdNs + ">\n" +
         "SELECT ?m ?t WHERE { ?m saref:hasTimestamp ?t . ?m saref:measurementMadeBy ?s }\n" +
         "FILTER(?t >= \"" + from + "\"^^xsd:dateTime && ?t " + (to_inclusive ? "<=" : "<") +
         " \"" + to + "\"^^xsd:dateTime)";
}

// Generates, fragments, and writes a dataset; returns the root file IRI.
std::string prepare(const std::filesystem::path& dir, const SensorDataSpec& spec, int n) {
  const auto data = generate_dataset(spec);
  const FragmentSet fs = fragment(data, n, vocab::kSarefHasTimestamp, file_iri(dir) + "/");
  write_fragments(fs, dir.string());
  return file_iri(dir / "root.ttl");
}

void write_doc(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  REQUIRE(out);
  out << text;
}

}  // namespace

TEST_CASE("file fetch returns the exact bytes and counts requests") {
  const auto dir = fresh_dir("fetch");
  write_doc(dir / "doc.ttl", "<s> <p> <o> .\n");
  FileFetcher fetcher;
  const auto res = fetcher.fetch(file_iri(dir / "doc.ttl"));
  CHECK(res.body == "<s> <p> <o> .\n");
  CHECK(res.media_type == "text/turtle");
  CHECK(fetcher.requests() == 1);

  CHECK_THROWS_AS(fetcher.fetch(file_iri(dir / "missing.ttl")), FetchError);
  CHECK(fetcher.requests() == 2);  // failed attempts still count
  std::filesystem::remove_all(dir);
}

TEST_CASE("predicate-based traversal over four leaves fetches root plus all leaves") {
  const auto dir = fresh_dir("predicate4");
  const auto spec = spec_of(40);
  const std::string root = prepare(dir, spec, 4);
  const Query q = parse_query(range_query_text(ts_lexical(spec, 0), ts_lexical(spec, 1)));
  FileFetcher fetcher;
  const auto res =
      traverse_and_query({root}, q, ReachabilityCriterion::predicate_based(), fetcher);
  CHECK(res.metrics.requests == 5);
  CHECK(res.metrics.pruned_links == 0);
  CHECK(res.metrics.result_count == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("rule-based traversal spanning two leaves fetches root plus exactly those") {
  const auto dir = fresh_dir("rule2");
  const auto spec = spec_of(40);  // 4 leaves of 10
  const std::string root = prepare(dir, spec, 4);
  // From inside leaf 2 into leaf 3 (leaf i holds measurements [10i, 10i+10)).
  auto query = std::make_shared<const Query>(
      parse_query(range_query_text(ts_lexical(spec, 15), ts_lexical(spec, 25))));
  FileFetcher fetcher;
  const auto res =
      traverse_and_query({root}, *query, ReachabilityCriterion::rule_based(query), fetcher);
  CHECK(res.metrics.requests == 3);
  CHECK(res.metrics.pruned_links == 2);
  CHECK(res.metrics.result_count == 11);  // timestamps 15..25 inclusive
  std::filesystem::remove_all(dir);
}

TEST_CASE("a filter outside the data range stops at the root") {
  const auto dir = fresh_dir("outside");
  const auto spec = spec_of(40);
  const std::string root = prepare(dir, spec, 4);
  auto query = std::make_shared<const Query>(parse_query(
      range_query_text("2030-01-01T00:00:00", "2030-01-02T00:00:00")));
  FileFetcher fetcher;
  const auto res =
      traverse_and_query({root}, *query, ReachabilityCriterion::rule_based(query), fetcher);
  CHECK(res.metrics.requests == 1);
  CHECK(res.metrics.pruned_links == 4);
  CHECK(res.metrics.result_count == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("requests equal one plus the number of leaves overlapping the filter") {
  const auto dir = fresh_dir("overlap");
  const auto spec = spec_of(60);
  const int n = 6;  // leaves of 10
  const std::string root = prepare(dir, spec, n);
  std::mt19937 rng(13);
  for (int round = 0; round < 10; ++round) {
    const std::int64_t a = static_cast<std::int64_t>(rng() % 60);
    const std::int64_t b = std::min<std::int64_t>(59, a + static_cast<std::int64_t>(rng() % 30));
    auto query = std::make_shared<const Query>(
        parse_query(range_query_text(ts_lexical(spec, a), ts_lexical(spec, b))));
    const std::int64_t first_leaf = a / 10, last_leaf = b / 10;
    FileFetcher fetcher;
    const auto res =
        traverse_and_query({root}, *query, ReachabilityCriterion::rule_based(query), fetcher);
    CHECK(res.metrics.requests == 1 + static_cast<std::uint64_t>(last_leaf - first_leaf + 1));
    CHECK(res.metrics.result_count == static_cast<std::uint64_t>(b - a + 1));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("pruned leaves contain nothing the filter accepts") {
  const auto dir = fresh_dir("soundness");
  const auto spec = spec_of(50);
  const std::string root = prepare(dir, spec, 7);
  auto query = std::make_shared<const Query>(
      parse_query(range_query_text(ts_lexical(spec, 11), ts_lexical(spec, 19))));
  FileFetcher fetcher;
  const auto res =
      traverse_and_query({root}, *query, ReachabilityCriterion::rule_based(query), fetcher);
  CHECK(!res.pruned_iris.empty());
  FileFetcher reader;
  for (const std::string& iri : res.pruned_iris) {
    const auto doc = parse_turtle(reader.fetch(iri).body, iri);
    const auto leaf_rows = oracles::enumerate_bindings(*query, doc);
    CHECK(leaf_rows.empty());
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("rule-based and predicate-based agree on bindings; rule never fetches more") {
  const auto dir = fresh_dir("equivalence");
  const auto spec = spec_of(48);
  const std::string root = prepare(dir, spec, 6);
  for (const auto& [from, to] : std::vector<std::pair<int, int>>{{0, 47}, {5, 9}, {20, 21},
                                                                 {40, 47}}) {
    auto query = std::make_shared<const Query>(
        parse_query(range_query_text(ts_lexical(spec, from), ts_lexical(spec, to))));
    FileFetcher rule_fetcher, pred_fetcher;
    const auto rule =
        traverse_and_query({root}, *query, ReachabilityCriterion::rule_based(query), rule_fetcher);
    const auto pred = traverse_and_query({root}, *query,
                                         ReachabilityCriterion::predicate_based(), pred_fetcher);
    CHECK(oracles::binding_multiset(rule.bindings) == oracles::binding_multiset(pred.bindings));
    CHECK(rule.metrics.requests <= pred.metrics.requests);
    CHECK(rule.metrics.peak_store_size() <= pred.metrics.peak_store_size());
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("a two-document cycle terminates") {
  const auto dir = fresh_dir("cycle");
  const std::string prefixes =
      "@prefix tree: <" + vocab::kTreeNs + "> .\n@prefix ex: <" + vocab::kExNs + "> .\n";
  write_doc(dir / "a.ttl", prefixes + "<> tree:relation [ tree:node <b.ttl> ] .\n"
                                      "ex:s ex:p ex:oa .\n");
  write_doc(dir / "b.ttl", prefixes + "<> tree:relation [ tree:node <a.ttl> ] .\n"
                                      "ex:s ex:p ex:ob .\n");
  const Query q = parse_query(
      "PREFIX ex: <http://example.org/>\nSELECT ?o WHERE { ex:s ex:p ?o }");
  for (auto criterion : {ReachabilityCriterion::predicate_based(),
                         ReachabilityCriterion::rule_based(std::make_shared<const Query>(q))}) {
    FileFetcher fetcher;
    const auto res = traverse_and_query({file_iri(dir / "a.ttl")}, q, criterion, fetcher);
    CHECK(res.metrics.requests == 2);
    CHECK(res.metrics.result_count == 2);
    CHECK_FALSE(res.metrics.timed_out);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("an unreachable seed is a hard error") {
  const auto dir = fresh_dir("badseed");
  const Query q = parse_query("SELECT ?s WHERE { ?s ?p ?o }");
  FileFetcher fetcher;
  CHECK_THROWS_AS(traverse_and_query({file_iri(dir / "nope.ttl")}, q,
                                     ReachabilityCriterion::predicate_based(), fetcher),
                  FetchError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("an unreachable non-seed link is counted and skipped") {
  const auto dir = fresh_dir("badlink");
  const std::string prefixes =
      "@prefix tree: <" + vocab::kTreeNs + "> .\n@prefix ex: <" + vocab::kExNs + "> .\n";
  write_doc(dir / "a.ttl", prefixes +
                               "<> tree:relation [ tree:node <missing.ttl> ] .\n"
                               "<> tree:relation [ tree:node <b.ttl> ] .\n"
                               "ex:s ex:p ex:oa .\n");
  write_doc(dir / "b.ttl", "@prefix ex: <" + vocab::kExNs + "> .\nex:s ex:p ex:ob .\n");
  const Query q = parse_query(
      "PREFIX ex: <http://example.org/>\nSELECT ?o WHERE { ex:s ex:p ?o }");
  FileFetcher fetcher;
  TraversalOptions options;
  options.log_failures = false;
  const auto res = traverse_and_query({file_iri(dir / "a.ttl")}, q,
                                      ReachabilityCriterion::predicate_based(), fetcher, options);
  CHECK(res.metrics.requests == 3);
  CHECK(res.metrics.failed_requests == 1);
  CHECK(res.metrics.result_count == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("store growth is recorded and non-decreasing") {
  const auto dir = fresh_dir("growth");
  const auto spec = spec_of(30);
  const std::string root = prepare(dir, spec, 3);
  const Query q = parse_query(range_query_text(ts_lexical(spec, 0), ts_lexical(spec, 29)));
  FileFetcher fetcher;
  const auto res =
      traverse_and_query({root}, q, ReachabilityCriterion::predicate_based(), fetcher);
  REQUIRE(res.metrics.store_sizes.size() == 4);
  for (std::size_t i = 1; i < res.metrics.store_sizes.size(); ++i) {
    CHECK(res.metrics.store_sizes[i].second >= res.metrics.store_sizes[i - 1].second);
    CHECK(res.metrics.store_sizes[i].first >= res.metrics.store_sizes[i - 1].first);
  }
  CHECK(res.metrics.peak_store_size() >= 30 * 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("parallel fetching changes neither bindings nor request counts") {
  const auto dir = fresh_dir("parallel");
  const auto spec = spec_of(64);
  const std::string root = prepare(dir, spec, 8);
  auto query = std::make_shared<const Query>(
      parse_query(range_query_text(ts_lexical(spec, 10), ts_lexical(spec, 40))));

  TraversalOptions serial;
  serial.fetch_parallelism = 1;
  TraversalOptions wide;
  wide.fetch_parallelism = 8;

  for (auto criterion : {ReachabilityCriterion::rule_based(query),
                         ReachabilityCriterion::predicate_based()}) {
    FileFetcher f1, f8;
    const auto r1 = traverse_and_query({root}, *query, criterion, f1, serial);
    const auto r8 = traverse_and_query({root}, *query, criterion, f8, wide);
    CHECK(r1.bindings == r8.bindings);
    CHECK(r1.metrics.requests == r8.metrics.requests);
    CHECK(r1.metrics.pruned_links == r8.metrics.pruned_links);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("repeated runs are deterministic") {
  const auto dir = fresh_dir("determinism");
  const auto spec = spec_of(30);
  const std::string root = prepare(dir, spec, 5);  // leaves of 6
  auto query = std::make_shared<const Query>(
      parse_query(range_query_text(ts_lexical(spec, 3), ts_lexical(spec, 17))));
  std::string first_output;
  for (int round = 0; round < 3; ++round) {
    FileFetcher fetcher;
    const auto res =
        traverse_and_query({root}, *query, ReachabilityCriterion::rule_based(query), fetcher);
    const std::string output = format_bindings(*query, res.bindings);
    if (round == 0) first_output = output;
    CHECK(output == first_output);
    CHECK(res.metrics.requests == 4);  // root + leaves 0..2 (values 3 and 17 span three)
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("timeout flags the result and keeps partial bindings") {
  const auto dir = fresh_dir("timeout");
  const auto spec = spec_of(40);
  const std::string root = prepare(dir, spec, 4);
  const Query q = parse_query(range_query_text(ts_lexical(spec, 0), ts_lexical(spec, 39)));
  FileFetcher fetcher;
  TraversalOptions options;
  options.timeout = std::chrono::milliseconds(0);
  const auto res =
      traverse_and_query({root}, q, ReachabilityCriterion::predicate_based(), fetcher, options);
  CHECK(res.metrics.timed_out);
  CHECK(res.metrics.requests == 0);
  CHECK(res.bindings.empty());
  std::filesystem::remove_all(dir);
}
