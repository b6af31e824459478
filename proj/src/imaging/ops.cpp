#include "forge/imaging/ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <string>

#include "forge/core/error.hpp"

namespace forge {

Image::Image(int width, int height, std::uint8_t fill)
    : width_(width), height_(height),
      data_(static_cast<std::size_t>(width) * height * kChannels, fill) {}

Image::Image(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), data_(std::move(pixels)) {
  if (data_.size() != static_cast<std::size_t>(width) * height * kChannels) {
    throw Error(ErrorKind::DimensionMismatch, "pixel buffer does not match " + std::to_string(width) + "x" +
                                                  std::to_string(height));
  }
}

DepthMap::DepthMap(int width, int height, std::vector<float> values, std::vector<std::uint8_t> valid)
    : width_(width), height_(height), values_(std::move(values)), valid_(std::move(valid)) {
  const auto n = static_cast<std::size_t>(width) * height;
  if (values_.size() != n || valid_.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "depth buffers do not match dimensions");
  }
}

double DepthMap::valid_fraction() const {
  if (valid_.empty()) return 0.0;
  const auto n = std::count_if(valid_.begin(), valid_.end(), [](std::uint8_t v) { return v != 0; });
  return static_cast<double>(n) / static_cast<double>(valid_.size());
}

PatchGrid partition(const Image& image, GridSpec spec) {
  if (spec.rows <= 0 || spec.cols <= 0 || image.height() % spec.rows != 0 || image.width() % spec.cols != 0) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(spec.rows) + "x" + std::to_string(spec.cols) + " grid does not divide " +
                    std::to_string(image.width()) + "x" + std::to_string(image.height()));
  }
  PatchGrid grid;
  grid.spec = spec;
  grid.patch_height = image.height() / spec.rows;
  grid.patch_width = image.width() / spec.cols;
  grid.patches.reserve(static_cast<std::size_t>(spec.cells()));
  const std::size_t row_bytes = static_cast<std::size_t>(grid.patch_width) * Image::kChannels;
  for (int i = 0; i < spec.rows; ++i) {
    for (int j = 0; j < spec.cols; ++j) {
      Image patch(grid.patch_width, grid.patch_height);
      for (int r = 0; r < grid.patch_height; ++r) {
        std::memcpy(patch.pixel(0, r), image.pixel(j * grid.patch_width, i * grid.patch_height + r), row_bytes);
      }
      grid.patches.push_back(std::move(patch));
    }
  }
  return grid;
}

Image compose(const PatchGrid& grid, std::span<const int> order) {
  const int cells = grid.spec.cells();
  if (static_cast<int>(order.size()) != cells) throw Error(ErrorKind::InvalidPermutation, "order has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(cells), false);
  for (int k : order) {
    if (k < 0 || k >= cells || seen[static_cast<std::size_t>(k)]) {
      throw Error(ErrorKind::InvalidPermutation, "order is not a permutation");
    }
    seen[static_cast<std::size_t>(k)] = true;
  }
  Image out(grid.patch_width * grid.spec.cols, grid.patch_height * grid.spec.rows);
  const std::size_t row_bytes = static_cast<std::size_t>(grid.patch_width) * Image::kChannels;
  for (int slot = 0; slot < cells; ++slot) {
    const Image& patch = grid.patches[static_cast<std::size_t>(order[static_cast<std::size_t>(slot)])];
    const int i = slot / grid.spec.cols;
    const int j = slot % grid.spec.cols;
    for (int r = 0; r < grid.patch_height; ++r) {
      std::memcpy(out.pixel(j * grid.patch_width, i * grid.patch_height + r), patch.pixel(0, r), row_bytes);
    }
  }
  return out;
}

Image compose(const PatchGrid& grid) {
  std::vector<int> identity(static_cast<std::size_t>(grid.spec.cells()));
  for (std::size_t k = 0; k < identity.size(); ++k) identity[k] = static_cast<int>(k);
  return compose(grid, identity);
}

Image flip_patch(const Image& patch, FlipDirection direction) {
  const int h = patch.height();
  const int w = patch.width();
  Image out(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::uint8_t* src = direction == FlipDirection::Vertical ? patch.pixel(c, h - 1 - r)
                                                                     : patch.pixel(w - 1 - c, r);
      std::memcpy(out.pixel(c, r), src, Image::kChannels);
    }
  }
  return out;
}

PatchGrid whiteout_patch(PatchGrid grid, int k) {
  if (k < 0 || k >= static_cast<int>(grid.patches.size())) {
    throw Error(ErrorKind::IndexOutOfRange, "patch index " + std::to_string(k));
  }
  auto bytes = grid.patches[static_cast<std::size_t>(k)].bytes();
  std::fill(bytes.begin(), bytes.end(), std::uint8_t{255});
  return grid;
}

Image zero_region(const Image& image, const Rect& rect) {
  if (!rect.within(image.width(), image.height())) throw Error(ErrorKind::OutOfBounds, "zero_region rect");
  Image out = image;
  for (int y = rect.y; y < rect.y + rect.height; ++y) {
    std::memset(out.pixel(rect.x, y), 0, static_cast<std::size_t>(rect.width) * Image::kChannels);
  }
  return out;
}

Image crop(const Image& image, const Rect& rect) {
  const Rect r = rect.clipped(image.width(), image.height());
  if (r.empty()) throw Error(ErrorKind::EmptyRect, "crop rect is empty after clipping");
  Image out(r.width, r.height);
  for (int y = 0; y < r.height; ++y) {
    std::memcpy(out.pixel(0, y), image.pixel(r.x, r.y + y), static_cast<std::size_t>(r.width) * Image::kChannels);
  }
  return out;
}

void paste(Image& image, const Image& patch, int x, int y) {
  if (!Rect{x, y, patch.width(), patch.height()}.within(image.width(), image.height())) {
    throw Error(ErrorKind::OutOfBounds, "paste outside image");
  }
  for (int r = 0; r < patch.height(); ++r) {
    std::memcpy(image.pixel(x, y + r), patch.pixel(0, r), static_cast<std::size_t>(patch.width()) * Image::kChannels);
  }
}

Image resize_bilinear(const Image& image, int width, int height) {
  if (width <= 0 || height <= 0 || image.empty()) throw Error(ErrorKind::EmptyRect, "resize to empty size");
  if (width == image.width() && height == image.height()) return image;

  struct Tap {
    int i0, i1;
    double f;
  };
  auto taps = [](int out_size, int in_size) {
    std::vector<Tap> out(static_cast<std::size_t>(out_size));
    const double scale = static_cast<double>(in_size) / out_size;
    for (int o = 0; o < out_size; ++o) {
      const double s = std::clamp((o + 0.5) * scale - 0.5, 0.0, static_cast<double>(in_size - 1));
      const int i0 = static_cast<int>(std::floor(s));
      out[static_cast<std::size_t>(o)] = {i0, std::min(i0 + 1, in_size - 1), s - i0};
    }
    return out;
  };
  const auto xs = taps(width, image.width());
  const auto ys = taps(height, image.height());

  Image out(width, height);
  for (int y = 0; y < height; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    for (int x = 0; x < width; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      const std::uint8_t* p00 = image.pixel(tx.i0, ty.i0);
      const std::uint8_t* p01 = image.pixel(tx.i1, ty.i0);
      const std::uint8_t* p10 = image.pixel(tx.i0, ty.i1);
      const std::uint8_t* p11 = image.pixel(tx.i1, ty.i1);
      std::uint8_t* dst = out.pixel(x, y);
      for (int c = 0; c < Image::kChannels; ++c) {
        const double top = p00[c] + (p01[c] - p00[c]) * tx.f;
        const double bottom = p10[c] + (p11[c] - p10[c]) * tx.f;
        const double v = top + (bottom - top) * ty.f;
        dst[c] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
      }
    }
  }
  return out;
}

Image rotate90(const Image& image, bool clockwise) {
  const int w = image.width();
  const int h = image.height();
  Image out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // Clockwise: (x, y) -> (h-1-y, x). Counterclockwise: (x, y) -> (y, w-1-x).
      std::uint8_t* dst = clockwise ? out.pixel(h - 1 - y, x) : out.pixel(y, w - 1 - x);
      std::memcpy(dst, image.pixel(x, y), Image::kChannels);
    }
  }
  return out;
}

Rect center_trim_rect(int width, int height, int multiple_w, int multiple_h) {
  const int w = width - width % multiple_w;
  const int h = height - height % multiple_h;
  return {(width - w) / 2, (height - h) / 2, w, h};
}

int mark_radius(int width, int height) {
  return std::max(6, static_cast<int>(std::lround(0.015 * std::min(width, height))));
}

namespace {

// 5x7 digits, one byte per row, low five bits used, MSB of those is the left column.
constexpr std::array<std::array<std::uint8_t, 7>, 10> kDigitGlyphs = {{
    {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E},  // 0
    {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E},  // 1
    {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F},  // 2
    {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E},  // 3
    {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02},  // 4
    {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E},  // 5
    {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E},  // 6
    {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08},  // 7
    {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E},  // 8
    {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C},  // 9
}};

void set_pixel(Image& image, int x, int y, std::uint8_t value) {
  if (x < 0 || y < 0 || x >= image.width() || y >= image.height()) return;
  std::uint8_t* p = image.pixel(x, y);
  p[0] = p[1] = p[2] = value;
}

double disc_luminance(const Image& image, Pixel center, int radius) {
  double sum = 0.0;
  long count = 0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const int x = center.x + dx;
      const int y = center.y + dy;
      if (dx * dx + dy * dy > radius * radius || x < 0 || y < 0 || x >= image.width() || y >= image.height()) continue;
      const std::uint8_t* p = image.pixel(x, y);
      sum += 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
      ++count;
    }
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace

Image annotate_labels(const Image& image, std::span<const Pixel> centers, std::span<const int> labels) {
  if (centers.size() != labels.size()) throw Error(ErrorKind::OutOfBounds, "centers and labels differ in length");
  for (const Pixel& c : centers) {
    if (c.x < 0 || c.y < 0 || c.x >= image.width() || c.y >= image.height()) {
      throw Error(ErrorKind::OutOfBounds, "label center outside image");
    }
  }
  const int radius = mark_radius(image.width(), image.height());
  const int scale = std::max(1, (2 * radius * 6 / 10) / 7);
  Image out = image;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const Pixel c = centers[i];
    // Contrast is decided against the unannotated source.
    const bool dark_background = disc_luminance(image, c, radius) < 128.0;
    const std::uint8_t disc = dark_background ? 255 : 0;
    const std::uint8_t ink = dark_background ? 0 : 255;
    for (int dy = -radius; dy <= radius; ++dy) {
      for (int dx = -radius; dx <= radius; ++dx) {
        if (dx * dx + dy * dy <= radius * radius) set_pixel(out, c.x + dx, c.y + dy, disc);
      }
    }
    const std::string digits = std::to_string(labels[i]);
    const int glyph_w = 5 * scale;
    const int glyph_h = 7 * scale;
    const int total_w = static_cast<int>(digits.size()) * glyph_w + (static_cast<int>(digits.size()) - 1) * scale;
    const int x0 = c.x - total_w / 2;
    const int y0 = c.y - glyph_h / 2;
    for (std::size_t d = 0; d < digits.size(); ++d) {
      if (digits[d] < '0' || digits[d] > '9') continue;
      const auto& glyph = kDigitGlyphs[static_cast<std::size_t>(digits[d] - '0')];
      const int gx = x0 + static_cast<int>(d) * (glyph_w + scale);
      for (int gy = 0; gy < glyph_h; ++gy) {
        for (int gxo = 0; gxo < glyph_w; ++gxo) {
          const int row = gy / scale;
          const int col = gxo / scale;
          if (glyph[static_cast<std::size_t>(row)] & (0x10 >> col)) set_pixel(out, gx + gxo, y0 + gy, ink);
        }
      }
    }
  }
  return out;
}

DepthMap normalize_depth(const RawDepth& raw) {
  const auto n = static_cast<std::size_t>(raw.width) * raw.height;
  if (raw.values.size() != n || (!raw.valid.empty() && raw.valid.size() != n)) {
    throw Error(ErrorKind::DimensionMismatch, "raw depth buffers do not match dimensions");
  }
  std::vector<std::uint8_t> valid(n, 0);
  double lo = 0.0, hi = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const float v = raw.values[i];
    if ((!raw.valid.empty() && raw.valid[i] == 0) || !std::isfinite(v) || v <= 0.0f) continue;
    valid[i] = 1;
    if (count == 0) {
      lo = hi = v;
    } else {
      lo = std::min<double>(lo, v);
      hi = std::max<double>(hi, v);
    }
    ++count;
  }
  if (n == 0 || 2 * count < n) {
    throw Error(ErrorKind::InsufficientValidDepth,
                std::to_string(count) + " of " + std::to_string(n) + " depth pixels valid");
  }
  std::vector<float> values(n, 0.0f);
  const double span = hi - lo;
  if (span > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (valid[i]) values[i] = static_cast<float>(std::clamp((raw.values[i] - lo) / span, 0.0, 1.0));
    }
  }
  return DepthMap(raw.width, raw.height, std::move(values), std::move(valid));
}

double pixel_stddev(const Image& image) {
  const auto bytes = image.bytes();
  if (bytes.empty()) return 0.0;
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint8_t b : bytes) {
    sum += b;
    sum_sq += static_cast<double>(b) * b;
  }
  const double n = static_cast<double>(bytes.size());
  const double mean = sum / n;
  return std::sqrt(std::max(0.0, sum_sq / n - mean * mean));
}

double mean_abs_diff(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorKind::DimensionMismatch, "mean_abs_diff on different sizes");
  }
  const auto x = a.bytes();
  const auto y = b.bytes();
  if (x.empty()) return 0.0;
  long total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) total += std::abs(static_cast<int>(x[i]) - static_cast<int>(y[i]));
  return static_cast<double>(total) / static_cast<double>(x.size());
}

}  // namespace forge
