#include "forge/core/task.hpp"

#include <string>

#include "forge/core/error.hpp"

namespace forge {

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::ShuffleReorder: return "shuffle";
    case TaskKind::FlipRecognize: return "flip";
    case TaskKind::CropInpaint: return "inpaint";
    case TaskKind::DepthOrder: return "depth_order";
    case TaskKind::RelPosition: return "rel_position";
  }
  return "";
}

TaskKind task_from_string(std::string_view name) {
  for (TaskKind task : kAllTasks) {
    if (to_string(task) == name) return task;
  }
  throw Error(ErrorKind::ConfigInvalid, "unknown task '" + std::string(name) + "'");
}

std::string_view to_string(ShuffleVariant variant) {
  switch (variant) {
    case ShuffleVariant::Grid2x2: return "grid_2x2";
    case ShuffleVariant::Grid2x2Masked: return "grid_2x2_masked";
    case ShuffleVariant::Horizontal: return "horizontal";
    case ShuffleVariant::Vertical: return "vertical";
  }
  return "";
}

ShuffleVariant shuffle_variant_from_string(std::string_view name) {
  for (ShuffleVariant v : kAllShuffleVariants) {
    if (to_string(v) == name) return v;
  }
  throw Error(ErrorKind::ConfigInvalid, "unknown shuffle variant '" + std::string(name) + "'");
}

}  // namespace forge
