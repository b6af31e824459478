#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace forge {

enum class ErrorKind {
  DimensionMismatch,
  InvalidPermutation,
  IndexOutOfRange,
  OutOfBounds,
  EmptyRect,
  InsufficientValidDepth,
  ImageTooSmall,
  DegenerateImage,
  NoAsymmetricPatch,
  IndistinctDistractor,
  NoValidRegionTriple,
  AmbiguousInstance,
  NoValidPair,
  InvalidAnswer,
  CorpusExhausted,
  ConfigInvalid,
  FractionOutOfRange,
  ManifestUnreadable,
  UnknownSample,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the whole library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Rejections a generator may raise for an otherwise readable source image.
// The builder counts these and moves on to the next image.
bool is_generator_rejection(ErrorKind kind);

}  // namespace forge
