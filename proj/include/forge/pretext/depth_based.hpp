#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "forge/core/rng.hpp"
#include "forge/imaging/ops.hpp"
#include "forge/pretext/generated.hpp"

namespace forge {

// ---- regional depth ordering ------------------------------------------

inline constexpr double kMaxRegionRange = 0.15;  // r_max, normalized depth
inline constexpr double kMinRegionGap = 0.05;    // d_min, normalized depth
inline constexpr double kRegionSideFraction = 0.07;
inline constexpr double kMinRegionValidFraction = 0.9;
inline constexpr int kMaxRegionAttempts = 500;

struct RegionStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  long valid = 0;
  long total = 0;
};

/// Statistics over the valid pixels of `window`.
RegionStats region_stats(const DepthMap& depth, const Rect& window);

struct DepthRegionSet {
  /// Closest first.
  std::array<Rect, 3> windows{};
  /// labels[i] is the numeral displayed on windows[i].
  std::array<int, 3> labels{};
};

int region_side(int width, int height);

/// Rejection-samples three disjoint windows satisfying the range and gap
/// constraints. Throws NoValidRegionTriple.
DepthRegionSet select_depth_regions(const DepthMap& depth, Rng& rng);

inline Pixel window_center(const Rect& r) { return {r.x + r.width / 2, r.y + r.height / 2}; }

GeneratedSample gen_depth_order(const Image& image, const DepthMap& depth, Rng& rng, const SampleContext& ctx);

// ---- relative position prediction -------------------------------------

inline constexpr double kParallelThresholdPx = 150.0;
inline constexpr double kPerpendicularThresholdNd = 0.25;
inline constexpr int kMinPointSeparationPx = 50;
inline constexpr int kMaxPairAttempts = 500;

struct RelPosSpec {
  ScenePoint anchor;
  ScenePoint query;
  Orientation theta = Orientation::Away;
};

/// Query position in the anchor object's frame (x to its right, z forward).
struct ObjectOffset {
  double x = 0.0;
  double z = 0.0;
};

/// Translate to the anchor, then rotate by theta in the xz-plane. y is ignored.
ObjectOffset relpos_transform(const RelPosSpec& spec);

struct RelPosThresholds {
  double x = 0.0;
  double z = 0.0;
};

/// Image-plane-parallel axes are measured in pixels, the perpendicular axis in
/// normalized depth; a quarter turn swaps which object axis is which.
RelPosThresholds relpos_thresholds(Orientation theta);

enum class Lateral { None, Left, Right };
enum class Longitudinal { None, Front, Back };

struct RelPosLabel {
  Lateral x = Lateral::None;
  Longitudinal z = Longitudinal::None;

  /// "Left", "Back", "Right-Front", ...
  std::string text() const;
  bool operator==(const RelPosLabel&) const = default;
};

inline constexpr std::array<std::string_view, 8> kDirectionLabels = {
    "Front", "Back", "Left", "Right", "Left-Front", "Left-Back", "Right-Front", "Right-Back"};

std::optional<RelPosLabel> try_classify_relpos(ObjectOffset offset, Orientation theta);
/// Throws AmbiguousInstance when neither axis clears its threshold.
RelPosLabel classify_relpos(ObjectOffset offset, Orientation theta);

GeneratedSample gen_relpos(const Image& image, const DepthMap& depth, Rng& rng, const SampleContext& ctx);

}  // namespace forge
