#pragma once

#include <algorithm>

namespace forge {

/// Pixel coordinate; x is the column, y is the row.
struct Pixel {
  int x = 0;
  int y = 0;
  bool operator==(const Pixel&) const = default;
};

/// Axis-aligned pixel rectangle, half-open: [x, x+width) x [y, y+height).
struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  bool empty() const { return width <= 0 || height <= 0; }
  long area() const { return empty() ? 0 : static_cast<long>(width) * height; }
  bool contains(int px, int py) const {
    return px >= x && px < x + width && py >= y && py < y + height;
  }
  bool within(int image_width, int image_height) const {
    return x >= 0 && y >= 0 && x + width <= image_width && y + height <= image_height;
  }
  Rect clipped(int image_width, int image_height) const {
    const int x0 = std::clamp(x, 0, image_width);
    const int y0 = std::clamp(y, 0, image_height);
    const int x1 = std::clamp(x + width, 0, image_width);
    const int y1 = std::clamp(y + height, 0, image_height);
    return {x0, y0, x1 - x0, y1 - y0};
  }

  bool operator==(const Rect&) const = default;
};

}  // namespace forge
