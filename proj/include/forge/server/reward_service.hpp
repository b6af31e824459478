#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "forge/core/manifest.hpp"
#include "forge/verifier/verifier.hpp"

namespace forge {

struct ScoreRequest {
  std::string sample_id;
  std::string response_text;
  std::string request_id;
};

struct ScoreError {
  std::string code;  // "UnknownSample", "BadRequest"
  std::string message;
};

struct ScoreResponse {
  std::string request_id;
  std::optional<RewardBreakdown> reward;
  std::optional<std::string> canonical_gt;  // only with echo enabled
  std::optional<ScoreError> error;
};

/// Wire schema shared by HTTP and stdio:
///   request   {"sample_id": str, "response_text": str, "request_id": str?}
///   response  {"request_id": str, "r_acc": int, "r_fmt": int, "r": float, "canonical_gt": str?}
///   error     {"request_id": str, "error": {"code": str, "message": str}}
///   batch     {"requests": [request...]} -> {"responses": [response...]}
ScoreRequest request_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScoreRequest& request);
nlohmann::json to_json(const ScoreResponse& response);
ScoreResponse response_from_json(const nlohmann::json& j);

/// Scores responses against an immutable in-memory answer table.
class RewardService {
 public:
  /// Throws Error(ManifestUnreadable) if the manifest fails the fast audit.
  explicit RewardService(const Manifest& manifest, bool echo_gt = false);
  static RewardService load(const std::filesystem::path& manifest_path, bool echo_gt = false);

  RewardService(RewardService&& other) noexcept;

  ScoreResponse score(const ScoreRequest& request) const;
  std::vector<ScoreResponse> score_batch(const std::vector<ScoreRequest>& requests) const;

  /// A single request or {"requests": [...]} in, the matching shape out.
  nlohmann::json handle(const nlohmann::json& body) const;
  /// One line in, one line out; malformed input yields a BadRequest error line.
  std::string handle_line(const std::string& line) const;

  nlohmann::json stats() const;
  std::size_t size() const { return answers_.size(); }

 private:
  struct Entry {
    TaskKind task;
    AnswerKey answer;
  };

  std::unordered_map<std::string, Entry> answers_;
  TaskCounts counts_{};
  bool echo_gt_ = false;
  mutable std::atomic<std::uint64_t> served_{0};
  mutable std::atomic<std::uint64_t> unknown_{0};
};

/// Reads requests line by line until EOF, writing one response line each.
void serve_stdio(const RewardService& service, std::istream& in, std::ostream& out);

}  // namespace forge
