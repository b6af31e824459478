#pragma once

#include <memory>
#include <string>

#include "forge/server/reward_service.hpp"

namespace forge {

/// POST /score, POST /score_batch, GET /healthz, GET /stats.
/// Unknown samples answer 404 and malformed bodies 400, both with the error
/// payload; the connection stays usable either way.
class HttpServer {
 public:
  explicit HttpServer(const RewardService& service);
  ~HttpServer();

  /// Binds without serving. Port 0 picks a free port; returns the bound port
  /// or -1 on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// "host:port" -> pair; a bare port binds 127.0.0.1. Throws Error(ConfigInvalid).
std::pair<std::string, int> parse_bind_address(const std::string& address);

}  // namespace forge
