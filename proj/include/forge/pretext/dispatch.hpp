#pragma once

#include "forge/core/rng.hpp"
#include "forge/core/task.hpp"
#include "forge/pretext/generated.hpp"

namespace forge {

/// Runs the generator for `task`. `depth` is required for depth-based tasks
/// and ignored otherwise; `variant` only matters for the shuffle task.
GeneratedSample generate(TaskKind task, ShuffleVariant variant, const Image& image, const DepthMap* depth, Rng& rng,
                         const SampleContext& ctx);

}  // namespace forge
