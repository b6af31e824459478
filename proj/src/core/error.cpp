#include "forge/core/error.hpp"

namespace forge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::OutOfBounds: return "OutOfBounds";
    case ErrorKind::EmptyRect: return "EmptyRect";
    case ErrorKind::InsufficientValidDepth: return "InsufficientValidDepth";
    case ErrorKind::ImageTooSmall: return "ImageTooSmall";
    case ErrorKind::DegenerateImage: return "DegenerateImage";
    case ErrorKind::NoAsymmetricPatch: return "NoAsymmetricPatch";
    case ErrorKind::IndistinctDistractor: return "IndistinctDistractor";
    case ErrorKind::NoValidRegionTriple: return "NoValidRegionTriple";
    case ErrorKind::AmbiguousInstance: return "AmbiguousInstance";
    case ErrorKind::NoValidPair: return "NoValidPair";
    case ErrorKind::InvalidAnswer: return "InvalidAnswer";
    case ErrorKind::CorpusExhausted: return "CorpusExhausted";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::FractionOutOfRange: return "FractionOutOfRange";
    case ErrorKind::ManifestUnreadable: return "ManifestUnreadable";
    case ErrorKind::UnknownSample: return "UnknownSample";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

bool is_generator_rejection(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InsufficientValidDepth:
    case ErrorKind::ImageTooSmall:
    case ErrorKind::DegenerateImage:
    case ErrorKind::NoAsymmetricPatch:
    case ErrorKind::IndistinctDistractor:
    case ErrorKind::NoValidRegionTriple:
    case ErrorKind::NoValidPair:
    case ErrorKind::Io:
      return true;
    default:
      return false;
  }
}

}  // namespace forge
