// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "treeltqp/criterion.hpp"

namespace ltqp {

struct BenchFragments {
  int n = 0;          // leaf count the directory was fragmented with
  std::string dir;
};

struct BenchConfig {
  std::vector<BenchFragments> fragments;
  std::vector<std::pair<std::string, std::string>> queries;  // id, query text
  std::vector<CriterionKind> criteria = {CriterionKind::PredicateBased, CriterionKind::RuleBased};
  std::chrono::milliseconds timeout{120000};
  int repetitions = 5;
  int port = 18080;
  int delay_ms = 0;
  int fetch_parallelism = 1;
};

// The four benchmark query shapes over a generated dataset: an empty-range
// lookup, a single-result lookup, a wide range, and a near-full scan.
// Filter endpoints are derived from the dataset's timestamp grid.
std::vector<std::pair<std::string, std::string>> analog_queries(std::int64_t start_micros,
                                                                std::int64_t step_micros,
                                                                std::int64_t count);

// Loads a JSON config: fragments (n, dir), criteria, timeout_ms,
// repetitions, port, delay_ms, fetch_parallelism, and either explicit
// queries (id -> file or inline text) or a dataset block
// {count, start, step_seconds} from which the analog queries are built.
BenchConfig load_bench_config(const std::string& path);

struct BenchRow {
  int n = 0;
  std::string query_id;
  std::string criterion;
  std::int64_t median_wall_us = 0;
  std::uint64_t requests = 0;
  std::uint64_t results = 0;
  std::uint64_t pruned_links = 0;
  std::uint64_t peak_store = 0;
  bool timed_out = false;
  std::string note;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

// Runs every (fragment dir, query, criterion) cell `repetitions` times
// against a local server, recording the median wall time; requests and
// results are asserted stable across repetitions (a divergence is recorded
// in the row's note). Cells run sequentially.
BenchReport run_bench(const BenchConfig& cfg);

// Table mirrors one row per (n, query) with per-criterion columns and "x"
// marking timed-out cells; json and csv are flat, machine-stable and
// mutually convertible without loss.
std::string report_table(const BenchReport& r);
std::string report_json(const BenchReport& r);
std::string report_csv(const BenchReport& r);
BenchReport report_from_json(const std::string& text);
BenchReport report_from_csv(const std::string& text);

}  // namespace ltqp
