// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/traversal.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "treeltqp/errors.hpp"
#include "treeltqp/turtle.hpp"

#include <httplib.h>

namespace ltqp {

FetchResponse FileFetcher::do_fetch(const std::string& iri) {
  if (iri.rfind("file:", 0) != 0) throw FetchError("not a file IRI: " + iri);
  std::string path = iri.substr(5);
  if (path.rfind("//", 0) == 0) path = path.substr(2);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FetchError("cannot open " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return {body.str(), "text/turtle"};
}

FetchResponse HttpFetcher::do_fetch(const std::string& iri) {
  if (iri.rfind("http://", 0) != 0) throw FetchError("not an http IRI: " + iri);
  const std::string rest = iri.substr(7);
  const auto slash = rest.find('/');
  const std::string host_port = slash == std::string::npos ? rest : rest.substr(0, slash);
  const std::string path = slash == std::string::npos ? "/" : rest.substr(slash);
  httplib::Client client(("http://" + host_port).c_str());
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(per_request_timeout_);
  client.set_connection_timeout(std::max<long>(1, seconds.count()), 0);
  client.set_read_timeout(std::max<long>(1, seconds.count()), 0);
  auto res = client.Get(path.c_str());
  if (!res) throw FetchError("request to " + iri + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw FetchError("request to " + iri + " returned status " + std::to_string(res->status));
  auto media_type = res->get_header_value("Content-Type");
  return {res->body, media_type.empty() ? "text/turtle" : media_type};
}

bool LinkQueue::enqueue(const std::string& iri) {
  if (visited_.count(iri) || queued_.count(iri)) return false;
  pruned_.erase(iri);
  queued_.insert(iri);
  fifo_.push_back(iri);
  return true;
}

std::string LinkQueue::pop() {
  std::string iri = std::move(fifo_.front());
  fifo_.pop_front();
  queued_.erase(iri);
  visited_.insert(iri);
  return iri;
}

void LinkQueue::prune(const std::string& iri) {
  if (!visited_.count(iri) && !queued_.count(iri)) pruned_.insert(iri);
}

std::vector<std::string> LinkQueue::pruned() const {
  std::vector<std::string> out(pruned_.begin(), pruned_.end());
  std::sort(out.begin(), out.end());
  return out;
}

TraversalResult traverse_and_query(const std::vector<std::string>& seeds, const Query& q,
                                   const ReachabilityCriterion& criterion, Fetcher& fetcher,
                                   const TraversalOptions& options) {
  if (seeds.empty()) throw FetchError("no seed IRIs given");
  const auto start = std::chrono::steady_clock::now();
  const auto deadline = start + options.timeout;
  const std::uint64_t requests_before = fetcher.requests();

  TraversalResult result;
  TraversalMetrics& metrics = result.metrics;
  TripleStore store;
  LinkQueue queue;
  std::unordered_set<std::string> seed_set(seeds.begin(), seeds.end());
  std::unordered_map<std::string, std::vector<TreeRelation>> relations_by_target;

  for (const std::string& seed : seeds) queue.enqueue(seed);

  struct InFlight {
    std::string iri;
    std::future<FetchResponse> response;
  };
  std::deque<InFlight> in_flight;
  const std::size_t window = static_cast<std::size_t>(std::max(1, options.fetch_parallelism));

  while (!queue.empty() || !in_flight.empty()) {
    if (std::chrono::steady_clock::now() >= deadline) {
      metrics.timed_out = true;
      for (InFlight& f : in_flight) {
        try {
          f.response.get();
        } catch (const FetchError&) {
        }
      }
      break;
    }
    while (in_flight.size() < window && !queue.empty()) {
      std::string iri = queue.pop();
      in_flight.push_back(
          {iri, std::async(std::launch::async,
                           [&fetcher, iri]() { return fetcher.fetch(iri); })});
    }

    InFlight current = std::move(in_flight.front());
    in_flight.pop_front();
    std::vector<Triple> doc;
    try {
      const FetchResponse response = current.response.get();
      doc = parse_turtle(response.body, current.iri);
    } catch (const std::exception& e) {
      ++metrics.failed_requests;
      if (seed_set.count(current.iri)) throw FetchError("seed " + current.iri + ": " + e.what());
      if (options.log_failures)
        std::cerr << "treeltqp: skipping " << current.iri << ": " << e.what() << "\n";
      continue;
    }

    store.insert_document(current.iri, doc);
    metrics.store_sizes.emplace_back(fetcher.requests() - requests_before, store.size());

    const std::vector<TreeRelation> relations = extract_relations(doc, current.iri);
    std::vector<std::string> discovered;  // distinct targets, first-appearance order
    for (const TreeRelation& rel : relations) {
      auto& acc = relations_by_target[rel.target];
      acc.push_back(rel);
      if (std::find(discovered.begin(), discovered.end(), rel.target) == discovered.end())
        discovered.push_back(rel.target);
    }
    for (const std::string& target : discovered) {
      if (queue.is_visited(target) || queue.is_queued(target)) continue;
      const auto& acc = relations_by_target[target];
      if (decide(criterion, acc.back(), acc)) {
        queue.enqueue(target);
      } else {
        queue.prune(target);
      }
    }
  }

  EvalStats eval_stats;
  result.bindings = evaluate(q, store, &eval_stats);
  result.pruned_iris = queue.pruned();
  metrics.join_rows_scanned = eval_stats.rows_scanned;
  metrics.requests = fetcher.requests() - requests_before;
  metrics.pruned_links = queue.pruned_count();
  metrics.result_count = result.bindings.size();
  metrics.wall_time = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

}  // namespace ltqp
