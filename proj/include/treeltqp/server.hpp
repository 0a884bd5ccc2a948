// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

namespace ltqp {

// Serves a fragment directory's documents at http://127.0.0.1:port/<file>
// with media type text/turtle, counting requests per path. Requires a
// manifest in the directory. An optional fixed per-request delay makes
// request cost visible in desk-scale benchmarks.
class DocServer {
 public:
  DocServer(std::string dir, int port, int delay_ms = 0);
  ~DocServer();

  DocServer(const DocServer&) = delete;
  DocServer& operator=(const DocServer&) = delete;

  // Throws ConfigError when the port cannot be bound.
  void start();
  void stop();

  std::string base_url() const;
  // IRI under which the manifest's root document is served.
  std::string root_url() const;

  std::uint64_t total_requests() const;
  std::map<std::string, std::uint64_t> requests_by_path() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ltqp
