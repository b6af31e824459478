#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "forge/core/geometry.hpp"

namespace forge {

/// 8-bit RGB raster, row-major, interleaved.
class Image {
 public:
  static constexpr int kChannels = 3;

  Image() = default;
  Image(int width, int height, std::uint8_t fill = 0);
  Image(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  std::uint8_t* pixel(int x, int y) { return data_.data() + offset(x, y); }
  const std::uint8_t* pixel(int x, int y) const { return data_.data() + offset(x, y); }
  std::span<std::uint8_t> row(int y) { return {pixel(0, y), static_cast<std::size_t>(width_) * kChannels}; }
  std::span<const std::uint8_t> row(int y) const {
    return {pixel(0, y), static_cast<std::size_t>(width_) * kChannels};
  }

  std::span<const std::uint8_t> bytes() const { return data_; }
  std::span<std::uint8_t> bytes() { return data_; }

  bool operator==(const Image&) const = default;

 private:
  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Per-pixel normalized depth in [0,1] with a validity mask. Larger is farther.
class DepthMap {
 public:
  DepthMap() = default;
  DepthMap(int width, int height, std::vector<float> values, std::vector<std::uint8_t> valid);

  int width() const { return width_; }
  int height() const { return height_; }
  float at(int x, int y) const { return values_[index(x, y)]; }
  bool valid(int x, int y) const { return valid_[index(x, y)] != 0; }
  double valid_fraction() const;

  std::span<const float> values() const { return values_; }
  std::span<const std::uint8_t> mask() const { return valid_; }

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> values_;
  std::vector<std::uint8_t> valid_;
};

/// Raw depth as read from disk, before normalization.
struct RawDepth {
  int width = 0;
  int height = 0;
  std::vector<float> values;
  std::vector<std::uint8_t> valid;
};

}  // namespace forge
