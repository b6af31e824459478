#include "forge/verifier/verifier.hpp"

#include <cctype>
#include <vector>

#include "forge/core/error.hpp"

namespace forge {
namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kBoxed = "\\boxed{";

struct BoxedSpan {
  std::size_t begin = 0;  // position of the backslash
  std::size_t end = 0;    // one past the closing brace
  std::string content;
};

std::size_t count_of(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string_view::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

// Every \boxed{...} with balanced braces; unterminated ones are skipped.
std::vector<BoxedSpan> find_boxed(std::string_view text) {
  std::vector<BoxedSpan> out;
  for (std::size_t pos = text.find(kBoxed); pos != std::string_view::npos; pos = text.find(kBoxed, pos + 1)) {
    int depth = 1;
    std::size_t i = pos + kBoxed.size();
    for (; i < text.size() && depth > 0; ++i) {
      if (text[i] == '{') ++depth;
      else if (text[i] == '}') --depth;
    }
    if (depth == 0) {
      const std::size_t content_begin = pos + kBoxed.size();
      out.push_back({pos, i, std::string(text.substr(content_begin, i - 1 - content_begin))});
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// "1 - 3 - 0 - 2" -> {1,3,0,2}; nullopt on anything but digits, spaces and hyphens.
std::optional<std::vector<int>> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t dash = text.find('-', pos);
    const std::string_view token =
        trim(text.substr(pos, dash == std::string_view::npos ? std::string_view::npos : dash - pos));
    if (token.empty() || token.size() > 3) return std::nullopt;
    int value = 0;
    for (char c : token) {
      if (c < '0' || c > '9') return std::nullopt;
      value = value * 10 + (c - '0');
    }
    out.push_back(value);
    if (dash == std::string_view::npos) break;
    pos = dash + 1;
  }
  return out;
}

}  // namespace

ParsedResponse parse_response(std::string_view text) {
  ParsedResponse parsed;
  const std::vector<BoxedSpan> boxed = find_boxed(text);
  if (!boxed.empty()) parsed.boxed_answer = boxed.back().content;

  const std::size_t open = text.find(kThinkOpen);
  const std::size_t close = open == std::string_view::npos ? std::string_view::npos : text.find(kThinkClose, open);
  if (open != std::string_view::npos && close != std::string_view::npos) {
    parsed.think_block = std::string(text.substr(open + kThinkOpen.size(), close - open - kThinkOpen.size()));
  }

  parsed.strict_format = parsed.think_block.has_value() && count_of(text, kThinkOpen) == 1 &&
                         count_of(text, kThinkClose) == 1 && trim(text.substr(0, open)).empty() &&
                         boxed.size() == 1 && count_of(text, "\\boxed") == 1 &&
                         boxed.front().begin >= close + kThinkClose.size() && !trim(boxed.front().content).empty();
  return parsed;
}

std::optional<AnswerKey> canonicalize(TaskKind task, std::string_view raw) {
  const std::string_view text = trim(raw);
  try {
    switch (task) {
      case TaskKind::CropInpaint:
      case TaskKind::RelPosition: {
        if (text.size() != 1) return std::nullopt;
        const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
        if (c < 'A' || c > 'D') return std::nullopt;
        return AnswerKey::option(c);
      }
      case TaskKind::ShuffleReorder: {
        const auto list = parse_int_list(text);
        if (!list || (list->size() != 3 && list->size() != 4)) return std::nullopt;
        return AnswerKey::ordering(*list);
      }
      case TaskKind::FlipRecognize: {
        const auto list = parse_int_list(text);
        if (!list || list->size() != 2 || (*list)[1] > 1) return std::nullopt;
        return AnswerKey::flip((*list)[0], static_cast<FlipDirection>((*list)[1]));
      }
      case TaskKind::DepthOrder: {
        const auto list = parse_int_list(text);
        if (!list || list->size() != 3) return std::nullopt;
        return AnswerKey::depth_ordering({(*list)[0], (*list)[1], (*list)[2]});
      }
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return std::nullopt;
}

RewardBreakdown make_reward(bool accurate, bool formatted) {
  RewardBreakdown b;
  b.r_acc = accurate ? 1 : 0;
  b.r_fmt = formatted ? 1 : 0;
  b.r = kAccuracyWeight * b.r_acc + kFormatWeight * b.r_fmt;
  return b;
}

RewardBreakdown score(TaskKind task, const AnswerKey& truth, std::string_view response_text) {
  const ParsedResponse parsed = parse_response(response_text);
  bool accurate = false;
  if (parsed.boxed_answer) {
    const auto predicted = canonicalize(task, *parsed.boxed_answer);
    accurate = predicted.has_value() && *predicted == truth;
  }
  return make_reward(accurate, parsed.strict_format);
}

RewardBreakdown score(const QASample& sample, std::string_view response_text) {
  return score(sample.task, sample.answer, response_text);
}

std::string wrap_canonical(const AnswerKey& answer) {
  return "<think>.</think> \\boxed{" + answer.canonical() + "}";
}

}  // namespace forge
