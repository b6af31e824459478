// forge: build, split, audit and score pretext-task datasets.
//
// Exit codes: 0 ok, 1 audit failure, 2 config/corpus/manifest error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "forge/build/audit.hpp"
#include "forge/build/builder.hpp"
#include "forge/build/split.hpp"
#include "forge/build/stats.hpp"
#include "forge/core/error.hpp"
#include "forge/server/http_server.hpp"
#include "forge/server/reward_service.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kAuditFailure = 1;
constexpr int kInputError = 2;

int run_build(const fs::path& config_path, std::optional<std::uint64_t> seed, const fs::path& out, unsigned threads) {
  forge::BuildConfig config = forge::BuildConfig::load(config_path);
  if (seed) config.master_seed = *seed;
  if (!out.empty()) config.output_dir = out;
  if (threads) config.threads = threads;
  const forge::BuildResult result = forge::build_dataset(config);
  std::cout << "wrote " << result.manifest.records.size() << " records to " << result.manifest_path.string() << "\n";
  std::cout << forge::to_json(result.report).dump(2) << "\n";
  return kOk;
}

int run_split(const fs::path& manifest_path, double fraction, std::optional<std::uint64_t> seed) {
  const forge::Manifest m = forge::read_manifest(manifest_path);
  const forge::SplitResult split = forge::split_cold_start(m, fraction, seed.value_or(m.header.master_seed));
  forge::write_split(manifest_path, split);
  std::cout << "cold_start " << split.cold_start.records.size() << " -> " << forge::cold_start_path(manifest_path).string()
            << "\nrl " << split.rl.records.size() << " -> " << forge::rl_path(manifest_path).string() << "\n";
  return kOk;
}

int run_verify(const fs::path& manifest_path, unsigned threads, bool as_json) {
  const forge::AuditReport report = forge::verify_manifest(manifest_path, threads);
  if (as_json) {
    std::cout << forge::to_json(report).dump(2) << "\n";
  } else {
    std::cout << report.records << " records\n";
    for (const auto& [name, t] : report.checks) {
      std::cout << "  " << name << ": " << t.passed << " passed, " << t.failed << " failed\n";
    }
    for (const auto& f : report.failures) std::cout << "FAIL " << f.id << " " << f.check << ": " << f.detail << "\n";
  }
  return report.ok() ? kOk : kAuditFailure;
}

int run_stats(const fs::path& manifest_path) {
  const forge::Manifest m = forge::read_manifest(manifest_path);
  const forge::DatasetStats stats = forge::compute_stats(m.records);
  std::cout << forge::to_json(stats).dump(2) << "\n";
  const fs::path report_path = manifest_path.parent_path() / forge::kStatsFileName;
  if (manifest_path.filename() == forge::kManifestFileName && fs::exists(report_path)) {
    std::ifstream in(report_path);
    const forge::DatasetStats recorded = forge::dataset_stats_from_json(json::parse(in).at("dataset"));
    if (!(recorded == stats)) {
      std::cerr << "stats report " << report_path.string() << " disagrees with the manifest\n";
      return kAuditFailure;
    }
    std::cerr << "stats report matches the manifest\n";
  }
  return kOk;
}

int run_score(const fs::path& manifest_path, const fs::path& responses_path, const fs::path& out_path) {
  const forge::RewardService service = forge::RewardService::load(manifest_path);
  std::ifstream in(responses_path);
  if (!in) throw forge::Error(forge::ErrorKind::Io, "cannot open " + responses_path.string());
  std::ofstream file;
  if (!out_path.empty()) file.open(out_path);
  std::ostream& out = out_path.empty() ? std::cout : file;
  forge::serve_stdio(service, in, out);
  return kOk;
}

int run_serve(const fs::path& manifest_path, const std::string& bind, bool stdio, bool echo_gt) {
  const forge::RewardService service = forge::RewardService::load(manifest_path, echo_gt);
  std::cerr << "loaded " << service.size() << " samples\n";
  if (stdio) {
    forge::serve_stdio(service, std::cin, std::cout);
    return kOk;
  }
  const auto [host, port] = forge::parse_bind_address(bind);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  forge::HttpServer server(service);
  const int bound = server.bind(host, port);
  if (bound < 0) throw forge::Error(forge::ErrorKind::ConfigInvalid, "cannot bind " + bind);
  std::cerr << "listening on " << host << ":" << bound << "\n";
  std::thread waiter([&]() {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  // listen() also returns if the server fails; wake the waiter either way.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesize verifiable pretext-task datasets and score responses against them"};
  app.require_subcommand(1);

  fs::path config, out, manifest, responses, score_out;
  std::optional<std::uint64_t> seed;
  double fraction = forge::kDefaultColdStartFraction;
  unsigned threads = 0;
  bool as_json = false, stdio = false, echo_gt = false;
  std::string bind = "127.0.0.1:8080";

  auto* build = app.add_subcommand("build", "Generate images, manifest and stats");
  build->add_option("--config", config, "JSON build config")->required()->check(CLI::ExistingFile);
  build->add_option("--seed", seed, "Master seed (overrides the config)");
  build->add_option("--out", out, "Output directory (overrides the config)");
  build->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* split = app.add_subcommand("split", "Stratified cold-start / RL split");
  split->add_option("--manifest", manifest)->required()->check(CLI::ExistingFile);
  split->add_option("--fraction", fraction, "Cold-start fraction in (0,1)");
  split->add_option("--seed", seed, "Split seed (default: the manifest's master seed)");

  auto* verify = app.add_subcommand("verify", "Re-run every audit oracle over a manifest");
  verify->add_option("--manifest", manifest)->required()->check(CLI::ExistingFile);
  verify->add_option("--threads", threads);
  verify->add_flag("--json", as_json, "Print the report as JSON");

  auto* stats = app.add_subcommand("stats", "Frequency tables recomputed from a manifest");
  stats->add_option("--manifest", manifest)->required()->check(CLI::ExistingFile);

  auto* score = app.add_subcommand("score", "Batch-score a JSONL response file");
  score->add_option("--manifest", manifest)->required()->check(CLI::ExistingFile);
  score->add_option("--responses", responses, "JSONL: {sample_id, response_text, request_id?} per line")
      ->required()
      ->check(CLI::ExistingFile);
  score->add_option("--out", score_out, "Write results here instead of stdout");

  auto* serve = app.add_subcommand("serve", "Run the reward server");
  serve->add_option("--manifest", manifest)->required()->check(CLI::ExistingFile);
  serve->add_option("--bind", bind, "host:port");
  serve->add_flag("--stdio", stdio, "Line protocol on stdin/stdout instead of HTTP");
  serve->add_flag("--echo-gt", echo_gt, "Include the canonical answer in responses (debugging only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*build) return run_build(config, seed, out, threads);
    if (*split) return run_split(manifest, fraction, seed);
    if (*verify) return run_verify(manifest, threads, as_json);
    if (*stats) return run_stats(manifest);
    if (*score) return run_score(manifest, responses, score_out);
    if (*serve) return run_serve(manifest, bind, stdio, echo_gt);
  } catch (const forge::Error& e) {
    std::cerr << "error [" << forge::to_string(e.kind()) << "]: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
