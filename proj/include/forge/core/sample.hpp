#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "forge/core/answer_key.hpp"
#include "forge/core/geometry.hpp"
#include "forge/core/rng.hpp"
#include "forge/core/task.hpp"

namespace forge {

/// Object orientation for the relative-position task, counterclockwise from
/// the camera's forward axis. Only the four cardinal angles exist.
enum class Orientation { Away = 0, Left = 90, Toward = 180, Right = 270 };

inline constexpr std::array<Orientation, 4> kAllOrientations = {
    Orientation::Away, Orientation::Left, Orientation::Toward, Orientation::Right};

inline constexpr int degrees(Orientation o) { return static_cast<int>(o); }
/// Throws Error(InvalidAnswer) for non-cardinal angles.
Orientation orientation_from_degrees(int deg);

enum class DistractorMethod { Interior, Exterior025, Exterior050, RotateClockwise, RotateCounterClockwise };

inline constexpr std::array<DistractorMethod, 5> kAllDistractorMethods = {
    DistractorMethod::Interior, DistractorMethod::Exterior025, DistractorMethod::Exterior050,
    DistractorMethod::RotateClockwise, DistractorMethod::RotateCounterClockwise};

std::string_view to_string(DistractorMethod method);
DistractorMethod distractor_from_string(std::string_view name);

// Task-specific parameter records. `corpus` indexes ManifestHeader::corpora.

struct ShuffleAux {
  ShuffleVariant variant = ShuffleVariant::Grid2x2;
  int rows = 2;
  int cols = 2;
  /// Displayed slot k holds original patch permutation[k].
  std::vector<int> permutation;
  std::optional<int> mask_slot;
  Rect trim;
  int corpus = 0;
  bool operator==(const ShuffleAux&) const = default;
};

struct FlipAux {
  int target = 0;
  FlipDirection direction = FlipDirection::Vertical;
  Rect trim;
  int corpus = 0;
  bool operator==(const FlipAux&) const = default;
};

struct InpaintAux {
  int side = 0;
  int top = 0;
  int left = 0;
  /// Source of each option in letter order; nullopt marks the true crop.
  std::array<std::optional<DistractorMethod>, 4> options{};
  int corpus = 0;
  bool operator==(const InpaintAux&) const = default;
};

struct DepthRegion {
  Rect window;
  int label = 0;
  bool operator==(const DepthRegion&) const = default;
};

struct DepthOrderAux {
  /// Ordered closest to farthest.
  std::array<DepthRegion, 3> regions{};
  std::string depth_source;
  int corpus = 0;
  bool operator==(const DepthOrderAux&) const = default;
};

struct ScenePoint {
  int x = 0;
  int y = 0;
  double z = 0.0;  // normalized depth
  bool operator==(const ScenePoint&) const = default;
};

struct RelPosAux {
  ScenePoint anchor;  // object position
  ScenePoint query;
  Orientation theta = Orientation::Away;
  double delta_x = 0.0;
  double delta_z = 0.0;
  std::string gt_label;
  int anchor_label = 1;  // displayed numeral at the anchor, the query gets the other one
  std::array<std::string, 4> options{};
  std::string depth_source;
  int corpus = 0;
  bool operator==(const RelPosAux&) const = default;
};

using SampleAux = std::variant<ShuffleAux, FlipAux, InpaintAux, DepthOrderAux, RelPosAux>;

struct QASample {
  std::string id;
  TaskKind task = TaskKind::ShuffleReorder;
  std::string question;
  /// Paths relative to the manifest directory.
  std::vector<std::string> images;
  AnswerKey answer = AnswerKey::option('A');
  SeedSpec seed;
  std::string source_image;
  SampleAux aux;

  bool operator==(const QASample&) const = default;
};

/// Content hash over (task, question, canonical answer, seed, source_image);
/// the id field and image paths are ignored.
std::string sample_id(const QASample& sample);

/// Throws Error(InvalidAnswer) if the sample violates a structural invariant
/// (answer/task mismatch, wrong image count, aux variant mismatch).
void validate(const QASample& sample);

inline constexpr std::size_t expected_image_count(TaskKind task) {
  return task == TaskKind::CropInpaint ? 5 : 1;
}

}  // namespace forge
