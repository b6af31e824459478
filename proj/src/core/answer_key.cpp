#include "forge/core/answer_key.hpp"

#include <algorithm>
#include <charconv>

#include "forge/core/error.hpp"

namespace forge {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidAnswer, what); }

bool is_permutation_of_range(const std::vector<int>& values, int first) {
  std::vector<int> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != first + static_cast<int>(i)) return false;
  }
  return true;
}

// Splits "a-b-c" into integers; no whitespace, no signs.
std::vector<int> split_ints(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t dash = text.find('-', pos);
    const std::string_view token = text.substr(pos, dash == std::string_view::npos ? dash : dash - pos);
    if (token.empty() || token.size() > 3) invalid("malformed integer list '" + std::string(text) + "'");
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      invalid("malformed integer list '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (dash == std::string_view::npos) break;
    pos = dash + 1;
  }
  return out;
}

std::string join(const int* first, const int* last) {
  std::string out;
  for (const int* it = first; it != last; ++it) {
    if (it != first) out += '-';
    out += std::to_string(*it);
  }
  return out;
}

}  // namespace

AnswerKey AnswerKey::ordering(std::vector<int> order) {
  if (order.size() < 2 || !is_permutation_of_range(order, 0)) {
    invalid("ordering must be a permutation of 0..k-1");
  }
  return AnswerKey(Ordering{std::move(order)});
}

AnswerKey AnswerKey::flip(int label, FlipDirection direction) {
  if (label < 0 || label > 3) invalid("flip label out of range: " + std::to_string(label));
  if (direction != FlipDirection::Vertical && direction != FlipDirection::Horizontal) {
    invalid("flip direction must be 0 or 1");
  }
  return AnswerKey(FlipAnswer{label, direction});
}

AnswerKey AnswerKey::option(char letter) {
  if (letter < 'A' || letter > 'D') invalid(std::string("option letter out of range: ") + letter);
  return AnswerKey(OptionLetter{letter});
}

AnswerKey AnswerKey::depth_ordering(std::array<int, 3> labels) {
  if (!is_permutation_of_range(std::vector<int>(labels.begin(), labels.end()), 1)) {
    invalid("depth ordering must be a permutation of {1,2,3}");
  }
  return AnswerKey(DepthOrdering{labels});
}

AnswerKey AnswerKey::parse(TaskKind task, std::string_view text) {
  switch (task) {
    case TaskKind::ShuffleReorder: {
      AnswerKey key = ordering(split_ints(text));
      if (!key.valid_for(task)) invalid("shuffle ordering must have 3 or 4 entries");
      return key;
    }
    case TaskKind::FlipRecognize: {
      const std::vector<int> parts = split_ints(text);
      if (parts.size() != 2 || (parts[1] != 0 && parts[1] != 1)) invalid("flip answer must be 'label-direction'");
      return flip(parts[0], static_cast<FlipDirection>(parts[1]));
    }
    case TaskKind::CropInpaint:
    case TaskKind::RelPosition:
      if (text.size() != 1) invalid("option answer must be one letter");
      return option(text[0]);
    case TaskKind::DepthOrder: {
      const std::vector<int> parts = split_ints(text);
      if (parts.size() != 3) invalid("depth ordering must have 3 entries");
      return depth_ordering({parts[0], parts[1], parts[2]});
    }
  }
  invalid("unknown task");
}

std::string AnswerKey::canonical() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ordering>) {
          return join(v.order.data(), v.order.data() + v.order.size());
        } else if constexpr (std::is_same_v<T, FlipAnswer>) {
          return std::to_string(v.label) + "-" + std::to_string(static_cast<int>(v.direction));
        } else if constexpr (std::is_same_v<T, OptionLetter>) {
          return std::string(1, v.letter);
        } else {
          return join(v.labels.data(), v.labels.data() + v.labels.size());
        }
      },
      value_);
}

bool AnswerKey::valid_for(TaskKind task) const {
  switch (task) {
    case TaskKind::ShuffleReorder: {
      const auto* o = std::get_if<Ordering>(&value_);
      return o && (o->order.size() == 3 || o->order.size() == 4);
    }
    case TaskKind::FlipRecognize: return std::holds_alternative<FlipAnswer>(value_);
    case TaskKind::CropInpaint:
    case TaskKind::RelPosition: return std::holds_alternative<OptionLetter>(value_);
    case TaskKind::DepthOrder: return std::holds_alternative<DepthOrdering>(value_);
  }
  return false;
}

}  // namespace forge
