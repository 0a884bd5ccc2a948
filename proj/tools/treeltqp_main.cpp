// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "treeltqp/bench.hpp"
#include "treeltqp/errors.hpp"
#include "treeltqp/fragment.hpp"
#include "treeltqp/server.hpp"
#include "treeltqp/traversal.hpp"
#include "treeltqp/value.hpp"
#include "treeltqp/vocab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ltqp::ConfigError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct FragmentArgs {
  std::int64_t count = 0;
  int nodes = 0;
  std::string out_dir;
  std::uint64_t seed = 42;
  std::string start = "2022-01-01T00:00:00";
  double step_seconds = 60.0;
  int sensors = 3;
  std::string base = "http://example.org/data/";
  std::string path = ltqp::vocab::kSarefHasTimestamp;
};

int run_fragment(const FragmentArgs& args) {
  auto start = ltqp::parse_date_time_micros(args.start);
  if (!start) throw ltqp::ConfigError("--start is not an xsd:dateTime: " + args.start);
  ltqp::SensorDataSpec spec;
  spec.count = args.count;
  spec.start_micros = *start;
  spec.step_micros = static_cast<std::int64_t>(args.step_seconds * 1000000.0);
  spec.sensors = args.sensors;
  spec.seed = args.seed;
  if (spec.step_micros <= 0) throw ltqp::ConfigError("--step-seconds must be positive");

  const auto data = ltqp::generate_dataset(spec);
  const auto set = ltqp::fragment(data, args.nodes, args.path, args.base);
  const auto manifest = ltqp::write_fragments(set, args.out_dir);
  std::cout << "wrote " << manifest.entries.size() << " documents (" << set.leaves.size()
            << " leaves, " << data.size() << " data triples) to " << args.out_dir << "\n";
  return kExitOk;
}

struct QueryArgs {
  std::vector<std::string> seeds;
  std::string query_file;
  std::string criterion = "rule";
  std::int64_t timeout_ms = 120000;
  std::int64_t request_timeout_ms = 30000;
  int fetch_parallelism = 1;
};

int run_query(const QueryArgs& args) {
  auto query = std::make_shared<const ltqp::Query>(ltqp::parse_query(read_file(args.query_file)));
  const ltqp::ReachabilityCriterion criterion =
      args.criterion == "rule" ? ltqp::ReachabilityCriterion::rule_based(query)
                               : ltqp::ReachabilityCriterion::predicate_based();

  std::unique_ptr<ltqp::Fetcher> fetcher;
  bool file_scheme = true;
  for (const std::string& seed : args.seeds) {
    const bool is_file = seed.rfind("file:", 0) == 0;
    if (&seed == &args.seeds.front()) file_scheme = is_file;
    else if (is_file != file_scheme)
      throw ltqp::ConfigError("all seeds must share one scheme (file or http)");
  }
  if (file_scheme)
    fetcher = std::make_unique<ltqp::FileFetcher>();
  else
    fetcher = std::make_unique<ltqp::HttpFetcher>(
        std::chrono::milliseconds(args.request_timeout_ms));

  ltqp::TraversalOptions options;
  options.timeout = std::chrono::milliseconds(args.timeout_ms);
  options.fetch_parallelism = args.fetch_parallelism;
  const ltqp::TraversalResult res =
      ltqp::traverse_and_query(args.seeds, *query, criterion, *fetcher, options);

  std::cout << ltqp::format_bindings(*query, res.bindings);
  std::cerr << "# requests=" << res.metrics.requests << " pruned=" << res.metrics.pruned_links
            << " time_ms=" << res.metrics.wall_time.count() / 1000
            << " results=" << res.metrics.result_count
            << " peak_store=" << res.metrics.peak_store_size()
            << " join_rows=" << res.metrics.join_rows_scanned
            << (res.metrics.timed_out ? " timed_out=true (results may be incomplete)" : "")
            << "\n";
  return kExitOk;
}

struct ServeArgs {
  std::string dir;
  int port = 8080;
  int delay_ms = 0;
};

volatile std::sig_atomic_t g_stop = 0;

int run_serve(const ServeArgs& args) {
  ltqp::DocServer server(args.dir, args.port, args.delay_ms);
  server.start();
  std::signal(SIGINT, [](int) { g_stop = 1; });
  std::signal(SIGTERM, [](int) { g_stop = 1; });
  std::cout << "serving " << args.dir << " at " << server.base_url() << " (root: "
            << server.root_url() << ")\n";
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));
  server.stop();
  return kExitOk;
}

struct BenchArgs {
  std::string config;
  std::string out;
  std::string format = "json";
};

int run_bench_cmd(const BenchArgs& args) {
  const ltqp::BenchConfig cfg = ltqp::load_bench_config(args.config);
  const ltqp::BenchReport report = ltqp::run_bench(cfg);
  std::cout << ltqp::report_table(report);
  if (!args.out.empty()) {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw ltqp::ConfigError("cannot write " + args.out);
    if (args.format == "json") out << ltqp::report_json(report);
    else if (args.format == "csv") out << ltqp::report_csv(report);
    else out << ltqp::report_table(report);
    std::cout << "report written to " << args.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treeltqp: link-traversal querying over TREE-fragmented RDF documents"};
  app.require_subcommand(1);

  FragmentArgs frag;
  auto* frag_cmd = app.add_subcommand("fragment", "generate and fragment a synthetic dataset");
  frag_cmd->add_option("--count", frag.count, "number of measurements")->required();
  frag_cmd->add_option("--nodes", frag.nodes, "number of leaf documents")->required();
  frag_cmd->add_option("--out", frag.out_dir, "output directory")->required();
  frag_cmd->add_option("--seed", frag.seed, "jitter seed");
  frag_cmd->add_option("--start", frag.start, "first timestamp (xsd:dateTime)");
  frag_cmd->add_option("--step", frag.step_seconds, "seconds between measurements");
  frag_cmd->add_option("--sensors", frag.sensors, "distinct sensor count");
  frag_cmd->add_option("--base", frag.base, "IRI directory for the documents");
  frag_cmd->add_option("--path", frag.path, "fragmentation predicate IRI");

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "traverse from seeds and evaluate a query");
  query_cmd->add_option("--seed", query.seeds, "seed IRI (repeatable)")->required();
  query_cmd->add_option("--query", query.query_file, "query file")->required();
  query_cmd->add_option("--criterion", query.criterion, "rule | predicate")
      ->check(CLI::IsMember({"rule", "predicate"}));
  query_cmd->add_option("--timeout-ms", query.timeout_ms, "global timeout in milliseconds");
  query_cmd->add_option("--request-timeout-ms", query.request_timeout_ms,
                        "per-request timeout in milliseconds");
  query_cmd->add_option("--fetch-parallelism", query.fetch_parallelism,
                        "fetches in flight at once");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "serve a fragment directory over http");
  serve_cmd->add_option("--dir", serve.dir, "fragment directory (with manifest)")->required();
  serve_cmd->add_option("--port", serve.port, "listen port");
  serve_cmd->add_option("--delay-ms", serve.delay_ms, "artificial per-request delay");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "run the benchmark protocol");
  bench_cmd->add_option("--config", bench.config, "bench config (json)")->required();
  bench_cmd->add_option("--out", bench.out, "report output file");
  bench_cmd->add_option("--format", bench.format, "report format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*frag_cmd) return run_fragment(frag);
    if (*query_cmd) return run_query(query);
    if (*serve_cmd) return run_serve(serve);
    if (*bench_cmd) return run_bench_cmd(bench);
  } catch (const std::exception& e) {
    std::cerr << "treeltqp: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
