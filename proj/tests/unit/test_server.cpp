#include <doctest.h>
#include <httplib.h>

#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "forge/core/error.hpp"
#include "forge/core/manifest.hpp"
#include "forge/server/http_server.hpp"
#include "forge/server/reward_service.hpp"
#include "forge/verifier/verifier.hpp"

using namespace forge;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kGolden = fs::path(FORGE_FIXTURE_DIR) / "golden";

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

const Manifest& golden_manifest() {
  static const Manifest m = read_manifest(kGolden / "manifest.jsonl");
  return m;
}

// Runs an HttpServer on a free port for the lifetime of the object.
struct LiveServer {
  HttpServer server;
  int port = -1;
  std::thread thread;

  explicit LiveServer(const RewardService& service) : server(service) {
    port = server.bind("127.0.0.1", 0);
    REQUIRE(port > 0);
    thread = std::thread([this] { server.listen(); });
    httplib::Client probe("127.0.0.1", port);
    for (int i = 0; i < 200 && !probe.Get("/healthz"); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  ~LiveServer() {
    server.stop();
    thread.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

std::vector<ScoreRequest> group_for(const QASample& s) {
  const std::string gt = s.answer.canonical();
  std::string wrong = s.task == TaskKind::CropInpaint || s.task == TaskKind::RelPosition
                          ? std::string(1, gt == "A" ? 'B' : 'A')
                          : std::string("9-9");
  return {{s.id, wrap_canonical(s.answer), "g0"},
          {s.id, "<think>hmm</think> \\boxed{" + wrong + "}", "g1"},
          {s.id, "<think>hmm</think> \\boxed{?}", "g2"},
          {s.id, gt, "g3"},
          {s.id, "so \\boxed{" + gt + "}", "g4"}};
}

}  // namespace

TEST_SUITE("server") {
  TEST_CASE("library scoring reproduces the golden fixture") {
    const RewardService service(golden_manifest());
    const auto requests = lines_of(kGolden / "requests.jsonl");
    const auto expected = lines_of(kGolden / "expected.jsonl");
    REQUIRE(requests.size() == 101);
    REQUIRE(requests.size() == expected.size());
    for (std::size_t i = 0; i < requests.size(); ++i) CHECK(service.handle_line(requests[i]) == expected[i]);
  }

  TEST_CASE("wire output mirrors the verifier") {
    const RewardService service(golden_manifest());
    for (const QASample& s : golden_manifest().records) {
      for (const ScoreRequest& req : group_for(s)) {
        const ScoreResponse r = service.score(req);
        REQUIRE(r.reward.has_value());
        CHECK(*r.reward == forge::score(s, req.response_text));
        CHECK(response_from_json(to_json(r)).reward == r.reward);
        CHECK_FALSE(r.canonical_gt.has_value());
      }
    }
  }

  TEST_CASE("a group of five in request order") {
    const RewardService service(golden_manifest());
    const auto out = service.score_batch(group_for(golden_manifest().records[0]));
    std::vector<double> rewards;
    for (const auto& r : out) rewards.push_back(r.reward->r);
    CHECK(rewards == std::vector<double>{1.0, 0.1, 0.1, 0.0, 0.9});
    CHECK(out[3].request_id == "g3");
  }

  TEST_CASE("ground-truth echo only when enabled") {
    const QASample& s = golden_manifest().records[7];
    const RewardService echo(golden_manifest(), true);
    CHECK(echo.score({s.id, "x", "1"}).canonical_gt == s.answer.canonical());
    CHECK(echo.stats()["echo_gt"] == true);
  }

  TEST_CASE("load audit rejects tampered or duplicate records") {
    Manifest tampered = golden_manifest();
    tampered.records[0].question += " ";
    CHECK_THROWS_AS(RewardService{tampered}, Error);
    Manifest dup = golden_manifest();
    dup.records.push_back(dup.records[3]);
    recount(dup.header, dup.records);
    try {
      RewardService service(dup);
      FAIL("expected ManifestUnreadable");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ManifestUnreadable);
    }
  }

  TEST_CASE("malformed lines become BadRequest") {
    const RewardService service(golden_manifest());
    CHECK(json::parse(service.handle_line("{not json"))["error"]["code"] == "BadRequest");
    const json missing = json::parse(service.handle_line(R"({"request_id":"q","sample_id":"x"})"));
    CHECK(missing["error"]["code"] == "BadRequest");
    CHECK(missing["request_id"] == "q");
  }

  TEST_CASE("stdio mode answers line for line and skips blanks") {
    const RewardService service(golden_manifest());
    std::stringstream in, out;
    for (const auto& l : lines_of(kGolden / "requests.jsonl")) in << l << "\n\n";
    serve_stdio(service, in, out);
    std::vector<std::string> got;
    for (std::string line; std::getline(out, line);) got.push_back(line);
    CHECK(got == lines_of(kGolden / "expected.jsonl"));
  }

  TEST_CASE("bind address parsing") {
    CHECK(parse_bind_address("0.0.0.0:9000") == std::pair<std::string, int>{"0.0.0.0", 9000});
    CHECK(parse_bind_address("8081") == std::pair<std::string, int>{"127.0.0.1", 8081});
    CHECK(parse_bind_address(":0") == std::pair<std::string, int>{"127.0.0.1", 0});
    for (const char* bad : {"host:", "host:99999", "host:80x", ""}) {
      CHECK_THROWS_AS(parse_bind_address(bad), Error);
    }
  }
}

TEST_SUITE("server.http") {
  TEST_CASE("endpoints") {
    const RewardService service(golden_manifest());
    LiveServer live(service);
    auto cli = live.client();
    const auto requests = lines_of(kGolden / "requests.jsonl");
    const auto expected = lines_of(kGolden / "expected.jsonl");

    auto res = cli.Post("/score", requests[0], "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == expected[0]);

    res = cli.Post("/score", requests.back(), "application/json");  // unknown sample
    REQUIRE(res);
    CHECK(res->status == 404);
    CHECK(json::parse(res->body)["error"]["code"] == "UnknownSample");
    res = cli.Get("/healthz");
    REQUIRE(res);
    CHECK(json::parse(res->body)["status"] == "ok");

    res = cli.Post("/score", "{oops", "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);

    json batch = json::array();
    for (std::size_t i = 0; i < 5; ++i) batch.push_back(json::parse(requests[i]));
    batch.push_back(json::parse(requests.back()));
    res = cli.Post("/score_batch", json{{"requests", batch}}.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    const json got = json::parse(res->body)["responses"];
    REQUIRE(got.size() == 6);
    for (std::size_t i = 0; i < 5; ++i) CHECK(got[i].dump() == expected[i]);
    CHECK(got[5]["error"]["code"] == "UnknownSample");

    res = cli.Post("/score_batch", batch.dump(), "application/json");  // bare list
    REQUIRE(res);
    CHECK(json::parse(res->body)["responses"] == got);

    res = cli.Get("/stats");
    REQUIRE(res);
    const json stats = json::parse(res->body);
    CHECK(stats["samples"] == 20);
    CHECK(stats["per_task"]["flip"] == 4);
    CHECK(stats["requests_served"] == 14);
    CHECK(stats["unknown_sample_errors"] == 3);
  }

  TEST_CASE("64 concurrent batches equal sequential scoring") {
    const RewardService service(golden_manifest());
    const auto& records = golden_manifest().records;
    std::vector<json> bodies;
    std::vector<json> sequential;
    for (std::size_t b = 0; b < 64; ++b) {
      std::vector<ScoreRequest> group = group_for(records[b % records.size()]);
      std::rotate(group.begin(), group.begin() + static_cast<long>(b % 5), group.end());
      json reqs = json::array();
      for (const auto& r : group) reqs.push_back(to_json(r));
      bodies.push_back(json{{"requests", reqs}});
      sequential.push_back(service.handle(bodies.back()));
    }
    LiveServer live(service);
    std::vector<std::future<std::string>> futures;
    for (std::size_t b = 0; b < 64; ++b) {
      futures.push_back(std::async(std::launch::async, [&, b] {
        auto cli = live.client();
        const auto res = cli.Post("/score_batch", bodies[b].dump(), "application/json");
        return res ? res->body : std::string("transport error");
      }));
    }
    for (std::size_t b = 0; b < 64; ++b) CHECK(futures[b].get() == sequential[b].dump());
  }
}
