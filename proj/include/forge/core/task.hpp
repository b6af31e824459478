#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace forge {

enum class TaskKind { ShuffleReorder, FlipRecognize, CropInpaint, DepthOrder, RelPosition };

inline constexpr std::array<TaskKind, 5> kAllTasks = {
    TaskKind::ShuffleReorder, TaskKind::FlipRecognize, TaskKind::CropInpaint,
    TaskKind::DepthOrder, TaskKind::RelPosition};

inline constexpr std::size_t task_index(TaskKind task) { return static_cast<std::size_t>(task); }

/// Stable serialized names: "shuffle", "flip", "inpaint", "depth_order", "rel_position".
std::string_view to_string(TaskKind task);
/// Throws Error(ConfigInvalid) on an unknown name.
TaskKind task_from_string(std::string_view name);

inline constexpr bool needs_depth(TaskKind task) {
  return task == TaskKind::DepthOrder || task == TaskKind::RelPosition;
}

/// Sub-variants of the shuffle task, one per row of the patchify table.
enum class ShuffleVariant { Grid2x2, Grid2x2Masked, Horizontal, Vertical };

inline constexpr std::array<ShuffleVariant, 4> kAllShuffleVariants = {
    ShuffleVariant::Grid2x2, ShuffleVariant::Grid2x2Masked, ShuffleVariant::Horizontal,
    ShuffleVariant::Vertical};

std::string_view to_string(ShuffleVariant variant);
ShuffleVariant shuffle_variant_from_string(std::string_view name);

enum class FlipDirection { Vertical = 0, Horizontal = 1 };

}  // namespace forge
