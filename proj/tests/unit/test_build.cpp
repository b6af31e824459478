#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "forge/build/audit.hpp"
#include "forge/build/builder.hpp"
#include "forge/build/config.hpp"
#include "forge/build/split.hpp"
#include "forge/build/stats.hpp"
#include "forge/core/digest.hpp"
#include "forge/core/error.hpp"
#include "forge/imaging/raster_io.hpp"
#include "synthetic.hpp"

using namespace forge;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected forge::Error");
  return ErrorKind::Io;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Corpora {
  fs::path rgb, rgbd;
};

const Corpora& corpora() {
  static const Corpora c = [] {
    const fs::path root = testing::scratch_dir("build_corpora");
    testing::write_rgb_corpus(root / "rgb", 10, 1);
    testing::write_rgbd_corpus(root / "rgbd", 10, 2);
    return Corpora{root / "rgb", root / "rgbd"};
  }();
  return c;
}

BuildConfig config_for(const std::string& out, std::uint64_t seed, int per_task, unsigned threads = 1) {
  BuildConfig cfg = BuildConfig::from_json(testing::small_config(corpora().rgb, corpora().rgbd, seed, per_task), {});
  cfg.output_dir = testing::scratch_dir(out);
  cfg.threads = threads;
  return cfg;
}

// Digest over the manifest bytes and every image it references.
std::string build_digest(const BuildResult& r) {
  Sha256 h;
  h.update(slurp(r.manifest_path));
  for (const QASample& s : r.manifest.records)
    for (const std::string& rel : s.images) h.update(slurp(r.manifest_path.parent_path() / rel));
  return h.hex_digest();
}

}  // namespace

TEST_SUITE("build") {
  TEST_CASE("one of each task from a ten-image corpus") {
    BuildConfig cfg = config_for("build_one_each", 3, 1);
    cfg.shuffle_mix = {1, 0, 0, 0};
    const BuildResult r = build_dataset(cfg);
    CHECK(r.manifest.records.size() == 5);
    CHECK(r.manifest.header.counts == TaskCounts{1, 1, 1, 1, 1});
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(r.manifest.records[i].seed.sample_index == i);
      CHECK(task_index(r.manifest.records[i].task) == i);
    }
  }

  TEST_CASE("exact counts and shuffle mix") {
    const BuildResult r = build_dataset(config_for("build_counts", 4, 12, 2));
    CHECK(r.manifest.header.counts == TaskCounts{12, 12, 12, 12, 12});
    CHECK(r.manifest.header.shuffle_mix == ShuffleMix{3, 3, 3, 3});
    CHECK(compute_stats(r.manifest.records) == r.report.dataset);
    const auto stats = nlohmann::json::parse(slurp(r.stats_path));
    CHECK(dataset_stats_from_json(stats.at("dataset")) == r.report.dataset);
    std::set<std::string> ids;
    for (const QASample& s : r.manifest.records) ids.insert(s.id);
    CHECK(ids.size() == 60);
  }

  TEST_CASE("same inputs, same bytes, regardless of thread count") {
    const BuildResult a = build_dataset(config_for("build_det_a", 9, 8, 1));
    const BuildResult b = build_dataset(config_for("build_det_b", 9, 8, 4));
    CHECK(build_digest(a) == build_digest(b));
    CHECK(slurp(a.manifest_path) == slurp(b.manifest_path));
    const BuildResult c = build_dataset(config_for("build_det_c", 10, 8, 1));
    CHECK(slurp(a.manifest_path) != slurp(c.manifest_path));
  }

  TEST_CASE("freshly built manifest audits clean; a corrupted answer is caught once") {
    const BuildResult r = build_dataset(config_for("build_audit", 5, 8, 2));
    const AuditReport clean = verify_manifest(r.manifest_path, 2);
    CHECK(clean.ok());
    CHECK(clean.records == 40);
    for (const char* check : {"schema", "round_trip", "shuffle_restoration", "flip_restoration", "inpaint_options",
                              "depth_constraints", "relpos_oracle"}) {
      CHECK(clean.checks.at(check).passed > 0);
    }

    Manifest m = read_manifest(r.manifest_path);
    QASample& victim = m.records[17];  // an inpaint record
    REQUIRE(victim.task == TaskKind::CropInpaint);
    const char letter = victim.answer.as<AnswerKey::OptionLetter>().letter;
    victim.answer = AnswerKey::option(letter == 'A' ? 'B' : 'A');
    const fs::path corrupted = r.manifest_path.parent_path() / "corrupted.jsonl";
    write_manifest(corrupted, m);
    const AuditReport report = verify_manifest(corrupted, 1);
    CHECK(report.failed("round_trip") == 1);
    std::size_t round_trip_failures = 0;
    for (const AuditFailure& f : report.failures) {
      if (f.check == "round_trip") {
        ++round_trip_failures;
        CHECK(f.id == victim.id);
      }
    }
    CHECK(round_trip_failures == 1);
  }

  TEST_CASE("a missing image file names the record") {
    const BuildResult r = build_dataset(config_for("build_missing", 6, 4, 1));
    const QASample& s = r.manifest.records[6];
    fs::remove(r.manifest_path.parent_path() / s.images[0]);
    try {
      verify_manifest(r.manifest_path, 1);
      FAIL("expected ManifestUnreadable");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ManifestUnreadable);
      CHECK(std::string(e.what()).find(s.id) != std::string::npos);
    }
  }

  TEST_CASE("split files written next to the manifest partition it") {
    const BuildResult r = build_dataset(config_for("build_split", 8, 20, 2));
    const Manifest cold = read_manifest(cold_start_path(r.manifest_path));
    const Manifest rl = read_manifest(rl_path(r.manifest_path));
    CHECK(cold.records.size() == 5);  // round(0.044 * 20) = 1 per task
    CHECK(cold.records.size() + rl.records.size() == r.manifest.records.size());
    std::set<std::string> all, seen;
    for (const auto& s : r.manifest.records) all.insert(s.id);
    for (const auto& s : cold.records) CHECK(seen.insert(s.id).second);
    for (const auto& s : rl.records) CHECK(seen.insert(s.id).second);
    CHECK(seen == all);
  }

  TEST_CASE("unusable corpus exhausts the slot") {
    const fs::path root = testing::scratch_dir("build_flat");
    fs::create_directories(root / "rgb");
    for (int i = 0; i < 3; ++i) write_png(root / "rgb" / ("flat" + std::to_string(i) + ".png"), Image(96, 96, 128), 6);
    BuildConfig cfg;
    cfg.rgb_corpora = {{root / "rgb", 1.0}};
    cfg.counts = {0, 1, 0, 0, 0};
    cfg.shuffle_mix = {0, 0, 0, 0};
    cfg.output_dir = root / "out";
    CHECK(kind_of([&] { build_dataset(cfg); }) == ErrorKind::CorpusExhausted);

    fs::create_directories(root / "empty");
    cfg.rgb_corpora = {{root / "empty", 1.0}};
    CHECK(kind_of([&] { build_dataset(cfg); }) == ErrorKind::CorpusExhausted);
  }
}

TEST_SUITE("build.config") {
  TEST_CASE("validation") {
    BuildConfig ok = config_for("cfg_ok", 1, 4);
    CHECK_NOTHROW(ok.validate());
    auto broken = [&](auto edit) {
      BuildConfig c = ok;
      edit(c);
      return kind_of([&] { c.validate(); });
    };
    CHECK(broken([](BuildConfig& c) { c.counts = {0, 0, 0, 0, 0}; }) == ErrorKind::ConfigInvalid);
    CHECK(broken([](BuildConfig& c) { c.shuffle_mix = {1, 1, 1, 0}; }) == ErrorKind::ConfigInvalid);
    CHECK(broken([](BuildConfig& c) { c.rgbd_corpora.clear(); }) == ErrorKind::ConfigInvalid);
    CHECK(broken([](BuildConfig& c) { c.rgb_corpora[0].weight = 0.0; }) == ErrorKind::ConfigInvalid);
    CHECK(broken([](BuildConfig& c) { c.cold_start_fraction = 1.0; }) == ErrorKind::ConfigInvalid);
    CHECK(broken([](BuildConfig& c) { c.max_attempts_per_sample = 0; }) == ErrorKind::ConfigInvalid);
    CHECK(broken([](BuildConfig& c) { c.png_compression = 10; }) == ErrorKind::ConfigInvalid);
    // Depth tasks at zero need no RGB-D corpus.
    BuildConfig rgb_only = ok;
    rgb_only.rgbd_corpora.clear();
    rgb_only.counts[3] = rgb_only.counts[4] = 0;
    CHECK_NOTHROW(rgb_only.validate());
  }

  TEST_CASE("json: defaults, relative paths, weights") {
    const fs::path dir = testing::scratch_dir("cfg_json");
    const auto path = testing::write_config(dir / "c.json", nlohmann::json{{"rgb_corpora", {"imgs", {{"path", "/abs"}, {"weight", 2.5}}}},
                                                                            {"rgbd_corpora", {"d"}},
                                                                            {"master_seed", 77},
                                                                            {"output_dir", "out"}});
    const BuildConfig c = BuildConfig::load(path);
    CHECK(c.rgb_corpora.size() == 2);
    CHECK(c.rgb_corpora[0].path == dir / "imgs");
    CHECK(c.rgb_corpora[1].path == fs::path("/abs"));
    CHECK(c.rgb_corpora[1].weight == 2.5);
    CHECK(c.output_dir == dir / "out");
    CHECK(c.master_seed == 77);
    CHECK(c.counts == kDefaultCounts);
    CHECK(c.shuffle_mix == kDefaultShuffleMix);
    CHECK(c.total() == 81'053);

    testing::write_config(dir / "bad.json", nlohmann::json{{"counts", {{"jigsaw", 3}}}});
    CHECK(kind_of([&] { BuildConfig::load(dir / "bad.json"); }) == ErrorKind::ConfigInvalid);
    CHECK(kind_of([&] { BuildConfig::load(dir / "absent.json"); }) == ErrorKind::ConfigInvalid);
  }

  TEST_CASE("shuffle mix apportionment") {
    CHECK(apportion_shuffle_mix(16'028) == kDefaultShuffleMix);
    for (std::uint64_t total : {0ull, 1ull, 7ull, 100ull, 999ull, 32'056ull}) {
      const ShuffleMix m = apportion_shuffle_mix(total);
      CHECK(m[0] + m[1] + m[2] + m[3] == total);
      for (std::size_t v = 0; v < 4; ++v) {
        const double exact = static_cast<double>(kDefaultShuffleMix[v]) * total / 16'028.0;
        CHECK(std::abs(static_cast<double>(m[v]) - exact) < 1.0);
      }
    }
  }
}

TEST_SUITE("build.split") {
  TEST_CASE("default quotas") {
    std::array<std::uint64_t, 5> quotas{};
    for (std::size_t t = 0; t < 5; ++t) quotas[t] = cold_start_quota(kDefaultCounts[t], 0.044);
    CHECK(quotas == std::array<std::uint64_t, 5>{705, 176, 889, 907, 889});
    for (std::size_t t = 0; t < 5; ++t) CHECK(quotas[t] == std::llround(0.044 * kDefaultCounts[t]));
  }

  TEST_CASE("fraction bounds") {
    Manifest m;
    CHECK(kind_of([&] { split_cold_start(m, 0.0, 1); }) == ErrorKind::FractionOutOfRange);
    CHECK(kind_of([&] { split_cold_start(m, 1.0, 1); }) == ErrorKind::FractionOutOfRange);
    CHECK(kind_of([&] { split_cold_start(m, -0.1, 1); }) == ErrorKind::FractionOutOfRange);
  }

  TEST_CASE("stratified, seeded, order preserving") {
    const BuildResult r = build_dataset(config_for("split_src", 12, 24, 2));
    const SplitResult a = split_cold_start(r.manifest, 0.25, 4);
    const SplitResult b = split_cold_start(r.manifest, 0.25, 4);
    const SplitResult c = split_cold_start(r.manifest, 0.25, 5);
    CHECK(a.cold_start.header.counts == TaskCounts{6, 6, 6, 6, 6});
    CHECK(a.rl.header.counts == TaskCounts{18, 18, 18, 18, 18});
    CHECK(a.cold_start.records == b.cold_start.records);
    CHECK(a.cold_start.records != c.cold_start.records);
    auto position = [&](const std::string& id) {
      for (std::size_t i = 0; i < r.manifest.records.size(); ++i)
        if (r.manifest.records[i].id == id) return i;
      return r.manifest.records.size();
    };
    for (const Manifest* part : {&a.cold_start, &a.rl})
      for (std::size_t i = 1; i < part->records.size(); ++i)
        CHECK(position(part->records[i - 1].id) < position(part->records[i].id));
  }
}
