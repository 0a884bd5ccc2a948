// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/server.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "treeltqp/errors.hpp"
#include "treeltqp/fragment.hpp"

#include <httplib.h>

namespace ltqp {

struct DocServer::Impl {
  std::string dir;
  int port;
  int delay_ms;
  std::string root_filename;
  httplib::Server server;
  std::thread listener;
  mutable std::mutex counts_mutex;
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
};

DocServer::DocServer(std::string dir, int port, int delay_ms) : impl_(new Impl) {
  impl_->dir = std::move(dir);
  impl_->port = port;
  impl_->delay_ms = delay_ms;
}

DocServer::~DocServer() { stop(); }

void DocServer::start() {
  const Manifest manifest = read_manifest(impl_->dir);
  if (manifest.entries.empty()) throw ConfigError("manifest in " + impl_->dir + " is empty");
  impl_->root_filename = manifest.entries.front().second;

  Impl* impl = impl_.get();
  // Default httplib options include SO_REUSEPORT, which would let two
  // servers share a port instead of failing loudly.
  impl->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes),
               sizeof(yes));
  });
  impl->server.set_pre_routing_handler([impl](const httplib::Request&, httplib::Response&) {
    if (impl->delay_ms > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(impl->delay_ms));
    return httplib::Server::HandlerResponse::Unhandled;
  });
  impl->server.Get(R"(/([^/]+))", [impl](const httplib::Request& req, httplib::Response& res) {
    const std::string filename = req.matches[1];
    const std::filesystem::path file = std::filesystem::path(impl->dir) / filename;
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      res.status = 404;
      res.set_content("no such document\n", "text/plain");
      return;
    }
    std::ostringstream body;
    body << in.rdbuf();
    res.set_content(body.str(), "text/turtle");
  });
  impl->server.set_logger([impl](const httplib::Request& req, const httplib::Response&) {
    std::lock_guard<std::mutex> lock(impl->counts_mutex);
    ++impl->counts[req.path];
    ++impl->total;
  });

  if (!impl->server.bind_to_port("127.0.0.1", impl->port))
    throw ConfigError("cannot bind to port " + std::to_string(impl->port));
  impl->listener = std::thread([impl]() { impl->server.listen_after_bind(); });
  impl->server.wait_until_ready();
}

void DocServer::stop() {
  if (impl_->listener.joinable()) {
    impl_->server.stop();
    impl_->listener.join();
  }
}

std::string DocServer::base_url() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port) + "/";
}

std::string DocServer::root_url() const { return base_url() + impl_->root_filename; }

std::uint64_t DocServer::total_requests() const {
  std::lock_guard<std::mutex> lock(impl_->counts_mutex);
  return impl_->total;
}

std::map<std::string, std::uint64_t> DocServer::requests_by_path() const {
  std::lock_guard<std::mutex> lock(impl_->counts_mutex);
  return impl_->counts;
}

}  // namespace ltqp
