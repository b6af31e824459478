#pragma once

#include <filesystem>
#include <vector>

#include "forge/imaging/image.hpp"

namespace forge {

/// Reads PNG (8/16-bit, gray/RGB/alpha) or JPEG and converts to 8-bit RGB.
/// Alpha is dropped; 16-bit samples keep their high byte. Throws Error(Io).
Image read_image(const std::filesystem::path& path);

/// Lossless 8-bit RGB PNG. `compression` is the zlib level (0..9).
void write_png(const std::filesystem::path& path, const Image& image, int compression = 6);

/// Depth sidecar formats:
///   *.png  single-channel 16-bit, 0 marks an invalid pixel
///   *.npy  float32/float64, shape (H,W) or (H,W,1); an optional mask file
///          (same shape, any numeric dtype, nonzero = valid) may be given.
RawDepth read_depth(const std::filesystem::path& path, const std::filesystem::path& mask_path = {});

void write_depth_png16(const std::filesystem::path& path, int width, int height, const std::vector<std::uint16_t>& values);
void write_npy_f32(const std::filesystem::path& path, int width, int height, const std::vector<float>& values);

}  // namespace forge
