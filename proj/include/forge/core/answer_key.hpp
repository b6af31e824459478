#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "forge/core/task.hpp"

namespace forge {

/// Canonical ground truth for one sample. Every constructor validates its
/// payload and throws Error(InvalidAnswer) on malformed input.
class AnswerKey {
 public:
  /// Patch ordering for the shuffle task: a permutation of 0..k-1.
  struct Ordering {
    std::vector<int> order;
    bool operator==(const Ordering&) const = default;
  };
  struct FlipAnswer {
    int label = 0;
    FlipDirection direction = FlipDirection::Vertical;
    bool operator==(const FlipAnswer&) const = default;
  };
  struct OptionLetter {
    char letter = 'A';
    bool operator==(const OptionLetter&) const = default;
  };
  /// Displayed labels from closest to farthest: a permutation of {1,2,3}.
  struct DepthOrdering {
    std::array<int, 3> labels{};
    bool operator==(const DepthOrdering&) const = default;
  };

  using Value = std::variant<Ordering, FlipAnswer, OptionLetter, DepthOrdering>;

  static AnswerKey ordering(std::vector<int> order);
  static AnswerKey flip(int label, FlipDirection direction);
  static AnswerKey option(char letter);
  static AnswerKey depth_ordering(std::array<int, 3> labels);

  /// Parses the canonical rendering produced by canonical(). Strict: no
  /// whitespace tolerance. Throws Error(InvalidAnswer).
  static AnswerKey parse(TaskKind task, std::string_view text);

  /// "1-3-0-2", "2-1", "C", "3-1-2".
  std::string canonical() const;
  bool valid_for(TaskKind task) const;

  const Value& value() const { return value_; }
  template <typename T>
  const T& as() const {
    return std::get<T>(value_);
  }

  bool operator==(const AnswerKey&) const = default;

 private:
  explicit AnswerKey(Value value) : value_(std::move(value)) {}
  Value value_;
};

inline constexpr std::array<char, 4> kOptionLetters = {'A', 'B', 'C', 'D'};

}  // namespace forge
