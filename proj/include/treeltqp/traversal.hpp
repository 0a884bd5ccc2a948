// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "treeltqp/criterion.hpp"
#include "treeltqp/query.hpp"

namespace ltqp {

struct FetchResponse {
  std::string body;
  std::string media_type;
};

// Dereferences IRIs of one scheme. Every attempted fetch, successful or
// not, increments the request counter exactly once. Thread-safe.
class Fetcher {
 public:
  virtual ~Fetcher() = default;

  FetchResponse fetch(const std::string& iri) {
    count_.fetch_add(1, std::memory_order_relaxed);
    return do_fetch(iri);
  }

  std::uint64_t requests() const { return count_.load(std::memory_order_relaxed); }

 protected:
  virtual FetchResponse do_fetch(const std::string& iri) = 0;

 private:
  std::atomic<std::uint64_t> count_{0};
};

// file:// documents; accepts file:///abs/path and file://relative/path.
class FileFetcher : public Fetcher {
 protected:
  FetchResponse do_fetch(const std::string& iri) override;
};

// http:// documents via a per-request client.
class HttpFetcher : public Fetcher {
 public:
  explicit HttpFetcher(std::chrono::milliseconds per_request_timeout =
                           std::chrono::milliseconds(30000))
      : per_request_timeout_(per_request_timeout) {}

 protected:
  FetchResponse do_fetch(const std::string& iri) override;

 private:
  std::chrono::milliseconds per_request_timeout_;
};

// Pending frontier plus the visited and pruned books. An IRI is visited at
// most once; a pruned IRI that is later re-discovered through a satisfiable
// relation moves back into the queue.
class LinkQueue {
 public:
  // False when the IRI is already queued or visited.
  bool enqueue(const std::string& iri);
  // Next IRI to dereference; marks it visited.
  std::string pop();
  void prune(const std::string& iri);

  bool empty() const { return fifo_.empty(); }
  bool is_visited(const std::string& iri) const { return visited_.count(iri) > 0; }
  bool is_queued(const std::string& iri) const { return queued_.count(iri) > 0; }
  std::size_t visited_count() const { return visited_.size(); }
  std::size_t pruned_count() const { return pruned_.size(); }
  std::vector<std::string> pruned() const;

 private:
  std::deque<std::string> fifo_;
  std::unordered_set<std::string> queued_;
  std::unordered_set<std::string> visited_;
  std::unordered_set<std::string> pruned_;
};

struct TraversalMetrics {
  std::uint64_t requests = 0;
  std::uint64_t failed_requests = 0;
  std::uint64_t pruned_links = 0;
  std::chrono::microseconds wall_time{0};
  std::uint64_t result_count = 0;
  // Rows the unoptimized textual-order join scanned during evaluation.
  std::uint64_t join_rows_scanned = 0;
  // (requests so far, store triple count) after each document insertion.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> store_sizes;
  bool timed_out = false;

  std::uint64_t peak_store_size() const {
    return store_sizes.empty() ? 0 : store_sizes.back().second;
  }
};

struct TraversalResult {
  std::vector<Binding> bindings;
  TraversalMetrics metrics;
  std::vector<std::string> pruned_iris;
};

struct TraversalOptions {
  std::chrono::milliseconds timeout{120000};
  int fetch_parallelism = 1;
  bool log_failures = true;
};

// The engine loop: dereference seeds, insert each document into the
// internal store, extract its relations, decide enqueue-or-prune per
// discovered target, repeat until the queue drains or the timeout fires,
// then evaluate the query over the accumulated store.
//
// Seeds bypass the criterion and must be reachable (hard error otherwise);
// failed non-seed fetches are counted and skipped. With fetch_parallelism
// k > 1, up to k fetches run in flight but responses are processed in issue
// order, so bindings and request counts are identical to a serial run.
TraversalResult traverse_and_query(const std::vector<std::string>& seeds, const Query& q,
                                   const ReachabilityCriterion& criterion, Fetcher& fetcher,
                                   const TraversalOptions& options = {});

}  // namespace ltqp
