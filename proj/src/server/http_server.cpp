#include "forge/server/http_server.hpp"

// The library default of 5 drops bursts of concurrent rollout-group requests.
#define CPPHTTPLIB_LISTEN_BACKLOG 1024
#include <httplib.h>

#include "forge/core/error.hpp"

namespace forge {

using nlohmann::json;

struct HttpServer::Impl {
  const RewardService& service;
  httplib::Server server;

  explicit Impl(const RewardService& s) : service(s) {}

  static void reply(httplib::Response& res, const json& body) {
    if (body.contains("error")) {
      res.status = body["error"]["code"] == "UnknownSample" ? 404 : 400;
    }
    res.set_content(body.dump(), "application/json");
  }

  json parse_body(const httplib::Request& req, httplib::Response& res) {
    try {
      return json::parse(req.body);
    } catch (const json::exception& e) {
      res.status = 400;
      res.set_content(json{{"request_id", ""}, {"error", {{"code", "BadRequest"}, {"message", e.what()}}}}.dump(),
                      "application/json");
      return json{};
    }
  }

  void routes() {
    server.Post("/score", [this](const httplib::Request& req, httplib::Response& res) {
      const json body = parse_body(req, res);
      if (res.status == 400) return;
      if (body.is_object() && body.contains("requests")) {
        res.status = 400;
        res.set_content(json{{"request_id", ""}, {"error", {{"code", "BadRequest"}, {"message", "use /score_batch"}}}}.dump(),
                        "application/json");
        return;
      }
      reply(res, service.handle(body));
    });
    server.Post("/score_batch", [this](const httplib::Request& req, httplib::Response& res) {
      json body = parse_body(req, res);
      if (res.status == 400) return;
      if (body.is_array()) body = json{{"requests", body}};
      if (!body.is_object() || !body.contains("requests")) {
        res.status = 400;
        res.set_content(
            json{{"request_id", ""}, {"error", {{"code", "BadRequest"}, {"message", "expected {\"requests\": [...]}"}}}}
                .dump(),
            "application/json");
        return;
      }
      // Per-item errors stay inside the list so positions line up with the request.
      res.set_content(service.handle(body).dump(), "application/json");
    });
    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"status":"ok"})", "application/json");
    });
    server.Get("/stats", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(service.stats().dump(), "application/json");
    });
  }
};

HttpServer::HttpServer(const RewardService& service) : impl_(std::make_unique<Impl>(service)) { impl_->routes(); }

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

std::pair<std::string, int> parse_bind_address(const std::string& address) {
  const auto colon = address.rfind(':');
  const std::string host = colon == std::string::npos ? "127.0.0.1" : address.substr(0, colon);
  const std::string port = colon == std::string::npos ? address : address.substr(colon + 1);
  try {
    std::size_t used = 0;
    const int p = std::stoi(port, &used);
    if (used != port.size() || p < 0 || p > 65535) throw std::invalid_argument(port);
    return {host.empty() ? "127.0.0.1" : host, p};
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigInvalid, "bad bind address '" + address + "'");
  }
}

}  // namespace forge
