#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "forge/core/answer_key.hpp"
#include "forge/core/sample.hpp"
#include "forge/core/task.hpp"

namespace forge {

inline constexpr double kAccuracyWeight = 0.9;
inline constexpr double kFormatWeight = 0.1;

struct ParsedResponse {
  std::optional<std::string> think_block;
  /// Content of the last \boxed{...} anywhere in the response.
  std::optional<std::string> boxed_answer;
  /// Exactly one <think>...</think> pair opening the response, followed by
  /// exactly one \boxed{...}, with no boxed content inside the think block.
  bool strict_format = false;

  bool operator==(const ParsedResponse&) const = default;
};

struct RewardBreakdown {
  int r_acc = 0;
  int r_fmt = 0;
  double r = 0.0;

  bool operator==(const RewardBreakdown&) const = default;
};

/// Total: never throws, absence is encoded as nullopt.
ParsedResponse parse_response(std::string_view text);

/// Lenient answer grammar (see docs/answer_grammar.ebnf). Returns nullopt for
/// anything unparseable.
std::optional<AnswerKey> canonicalize(TaskKind task, std::string_view raw);

RewardBreakdown make_reward(bool accurate, bool formatted);

/// r = 0.9 * r_acc + 0.1 * r_fmt. Pure and total.
RewardBreakdown score(TaskKind task, const AnswerKey& truth, std::string_view response_text);
RewardBreakdown score(const QASample& sample, std::string_view response_text);

/// "<think>.</think> \boxed{GT}", which scores 1.0 by construction.
std::string wrap_canonical(const AnswerKey& answer);

}  // namespace forge
