#pragma once

#include <string>
#include <vector>

#include "forge/core/sample.hpp"
#include "forge/imaging/image.hpp"

namespace forge {

/// Provenance handed to a generator by the builder.
struct SampleContext {
  SeedSpec seed;
  std::string source_image;
  int corpus = 0;
  std::string depth_source;  // empty for RGB-only tasks
};

/// A sample before its rasters are written. `sample.id` is filled in,
/// `sample.images` is left empty; `images` is in manifest order.
struct GeneratedSample {
  QASample sample;
  std::vector<Image> images;
};

/// Fills id from content.
void finalize(QASample& sample);

}  // namespace forge
