#pragma once

#include <span>
#include <vector>

#include "forge/core/geometry.hpp"
#include "forge/core/task.hpp"
#include "forge/imaging/image.hpp"

namespace forge {

/// Minimum width and height for any pretext task.
inline constexpr int kMinTaskSide = 64;

struct GridSpec {
  int rows = 2;  // M
  int cols = 2;  // N
  int cells() const { return rows * cols; }
  bool operator==(const GridSpec&) const = default;
};

/// An M x N partition; patches are flattened row-major (k = i*N + j).
struct PatchGrid {
  GridSpec spec;
  int patch_width = 0;
  int patch_height = 0;
  std::vector<Image> patches;
};

/// Throws DimensionMismatch unless rows | height and cols | width.
PatchGrid partition(const Image& image, GridSpec spec);

/// Output slot k holds patch order[k]. Throws InvalidPermutation.
Image compose(const PatchGrid& grid, std::span<const int> order);
Image compose(const PatchGrid& grid);

/// x_vert(r,c) = x(P_H-1-r, c); x_horz(r,c) = x(r, P_W-1-c).
Image flip_patch(const Image& patch, FlipDirection direction);

/// Patch k set to 255 on every channel. Throws IndexOutOfRange.
PatchGrid whiteout_patch(PatchGrid grid, int k);

/// Pixels inside rect set to 0. Throws OutOfBounds.
Image zero_region(const Image& image, const Rect& rect);

/// Pixel-exact copy of rect after clipping to the image. Throws EmptyRect.
Image crop(const Image& image, const Rect& rect);

/// Writes `patch` into `image` with its top-left corner at (x, y). Throws OutOfBounds.
void paste(Image& image, const Image& patch, int x, int y);

/// Bilinear resampling with half-pixel centers; identity when sizes match.
Image resize_bilinear(const Image& image, int width, int height);

Image rotate90(const Image& image, bool clockwise);

/// Rectangle of the largest (multiple_w, multiple_h)-divisible size, centered.
Rect center_trim_rect(int width, int height, int multiple_w, int multiple_h);

/// Radius of an annotation disc for an image of this size.
int mark_radius(int width, int height);

/// Marks each center with a filled disc and its numeral. Throws OutOfBounds
/// if a center lies outside the image or the list lengths differ.
Image annotate_labels(const Image& image, std::span<const Pixel> centers, std::span<const int> labels);

/// Min-max normalization over valid pixels; all-equal valid depth maps to 0.
/// Non-positive and non-finite raw values are treated as invalid. Throws
/// InsufficientValidDepth when fewer than half the pixels are valid.
DepthMap normalize_depth(const RawDepth& raw);

/// Standard deviation over every channel sample.
double pixel_stddev(const Image& image);
/// Mean absolute per-sample difference; images must be the same size.
double mean_abs_diff(const Image& a, const Image& b);

}  // namespace forge
