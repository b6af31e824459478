#include "forge/pretext/dispatch.hpp"

#include "forge/core/error.hpp"
#include "forge/pretext/depth_based.hpp"
#include "forge/pretext/depth_free.hpp"

namespace forge {

GeneratedSample generate(TaskKind task, ShuffleVariant variant, const Image& image, const DepthMap* depth, Rng& rng,
                         const SampleContext& ctx) {
  if (needs_depth(task) && depth == nullptr) {
    throw Error(ErrorKind::InsufficientValidDepth, "depth-based task without a depth map");
  }
  switch (task) {
    case TaskKind::ShuffleReorder: return gen_shuffle(image, variant, rng, ctx);
    case TaskKind::FlipRecognize: return gen_flip(image, rng, ctx);
    case TaskKind::CropInpaint: return gen_inpaint(image, rng, ctx);
    case TaskKind::DepthOrder: return gen_depth_order(image, *depth, rng, ctx);
    case TaskKind::RelPosition: return gen_relpos(image, *depth, rng, ctx);
  }
  throw Error(ErrorKind::ConfigInvalid, "unknown task");
}

}  // namespace forge
