// Regenerates tests/fixtures/golden: a 20-record manifest (4 per task), five
// responses per record, and the reward server's output for each line.
//
//   make_golden <fixture_dir>

#include <fstream>
#include <iostream>

#include "forge/build/builder.hpp"
#include "forge/build/config.hpp"
#include "forge/server/reward_service.hpp"
#include "forge/verifier/verifier.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using namespace forge;

namespace {

// A well-formed answer for the same task that differs from the truth.
std::string wrong_answer(const QASample& s) {
  switch (s.task) {
    case TaskKind::ShuffleReorder: {
      auto order = s.answer.as<AnswerKey::Ordering>().order;
      std::swap(order[0], order[1]);
      return AnswerKey::ordering(order).canonical();
    }
    case TaskKind::FlipRecognize: {
      const auto f = s.answer.as<AnswerKey::FlipAnswer>();
      return AnswerKey::flip((f.label + 1) % 4, f.direction).canonical();
    }
    case TaskKind::DepthOrder: {
      auto l = s.answer.as<AnswerKey::DepthOrdering>().labels;
      std::swap(l[1], l[2]);
      return AnswerKey::depth_ordering(l).canonical();
    }
    default: {
      const char c = s.answer.as<AnswerKey::OptionLetter>().letter;
      return std::string(1, c == 'D' ? 'A' : static_cast<char>(c + 1));
    }
  }
}

// Same answer in a lenient spelling the canonicalizer accepts.
std::string loose_answer(const QASample& s) {
  std::string out;
  for (char c : s.answer.canonical()) {
    if (c == '-') out += " - ";
    else out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return " " + out + " ";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_golden <fixture_dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);
  const fs::path work = testing::scratch_dir("golden_build");
  testing::write_rgb_corpus(work / "rgb", 12, 41);
  testing::write_rgbd_corpus(work / "rgbd", 8, 42);
  BuildConfig cfg = BuildConfig::from_json(testing::small_config(work / "rgb", work / "rgbd", 2024, 4), {});
  cfg.output_dir = work / "out";
  cfg.threads = 1;
  const BuildResult built = build_dataset(cfg);
  fs::copy_file(built.manifest_path, dir / "manifest.jsonl", fs::copy_options::overwrite_existing);

  const RewardService service(built.manifest);
  std::ofstream requests(dir / "requests.jsonl"), expected(dir / "expected.jsonl");
  for (const QASample& s : built.manifest.records) {
    const std::string gt = s.answer.canonical();
    const std::vector<std::string> responses = {
        "<think>Compare the edges of each region.</think> The answer is \\boxed{" + loose_answer(s) + "}",
        "<think>Looks like this one.</think> \\boxed{" + wrong_answer(s) + "}",
        "<think>Not sure.</think> \\boxed{unsure}",
        "I think it is " + gt + ".",
        "Final answer: \\boxed{" + gt + "}"};
    for (std::size_t k = 0; k < responses.size(); ++k) {
      const std::string line = to_json(ScoreRequest{s.id, responses[k], s.id.substr(0, 8) + "-" + std::to_string(k)}).dump();
      requests << line << '\n';
      expected << service.handle_line(line) << '\n';
    }
  }
  // One request for a sample that does not exist.
  const std::string unknown = to_json(ScoreRequest{"0000000000000000ffffffffffffffff", "\\boxed{A}", "unknown-0"}).dump();
  requests << unknown << '\n';
  expected << service.handle_line(unknown) << '\n';
  std::cout << "wrote " << built.manifest.records.size() << " records to " << dir << "\n";
  return 0;
}
