#include "forge/pretext/depth_free.hpp"

#include <algorithm>
#include <numeric>

#include "forge/core/error.hpp"
#include "forge/pretext/templates.hpp"

namespace forge {
namespace {

void require_size(const Image& image) {
  if (image.width() < kMinTaskSide || image.height() < kMinTaskSide) {
    throw Error(ErrorKind::ImageTooSmall,
                std::to_string(image.width()) + "x" + std::to_string(image.height()) + " is below the size gate");
  }
}

void require_texture(const Image& image) {
  if (pixel_stddev(image) < kDegenerateStddev) throw Error(ErrorKind::DegenerateImage, "near-uniform image");
}

bool is_identity(const std::vector<int>& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != static_cast<int>(i)) return false;
  }
  return true;
}

}  // namespace

void finalize(QASample& sample) { sample.id = sample_id(sample); }

GridSpec shuffle_grid(ShuffleVariant variant, int slots) {
  switch (variant) {
    case ShuffleVariant::Grid2x2:
    case ShuffleVariant::Grid2x2Masked: return {2, 2};
    case ShuffleVariant::Horizontal: return {1, slots};
    case ShuffleVariant::Vertical: return {slots, 1};
  }
  return {2, 2};
}

std::vector<int> inverse_permutation(std::span<const int> permutation) {
  std::vector<int> inverse(permutation.size(), -1);
  for (std::size_t k = 0; k < permutation.size(); ++k) {
    const int v = permutation[k];
    if (v < 0 || v >= static_cast<int>(permutation.size()) || inverse[static_cast<std::size_t>(v)] != -1) {
      throw Error(ErrorKind::InvalidPermutation, "not a permutation");
    }
    inverse[static_cast<std::size_t>(v)] = static_cast<int>(k);
  }
  return inverse;
}

AnswerKey shuffle_answer(std::span<const int> permutation) {
  return AnswerKey::ordering(inverse_permutation(permutation));
}

Image render_shuffle(const Image& image, const ShuffleSpec& spec) {
  const PatchGrid grid = partition(image, spec.grid);
  inverse_permutation(spec.permutation);  // validates
  if (static_cast<int>(spec.permutation.size()) != spec.grid.cells()) {
    throw Error(ErrorKind::InvalidPermutation, "permutation length does not match grid");
  }
  PatchGrid displayed = grid;
  for (std::size_t k = 0; k < spec.permutation.size(); ++k) {
    displayed.patches[k] = grid.patches[static_cast<std::size_t>(spec.permutation[k])];
  }
  if (spec.mask_slot) displayed = whiteout_patch(std::move(displayed), *spec.mask_slot);
  return compose(displayed);
}

GeneratedSample gen_shuffle(const Image& image, ShuffleVariant variant, Rng& rng, const SampleContext& ctx) {
  require_size(image);
  const bool strips = variant == ShuffleVariant::Horizontal || variant == ShuffleVariant::Vertical;
  const int slots = strips ? static_cast<int>(3 + rng.uniform(2)) : 4;
  ShuffleSpec spec;
  spec.grid = shuffle_grid(variant, slots);

  const Rect trim = center_trim_rect(image.width(), image.height(), spec.grid.cols, spec.grid.rows);
  const Image trimmed = crop(image, trim);
  require_texture(trimmed);

  do {
    spec.permutation = rng.permutation(spec.grid.cells());
  } while (is_identity(spec.permutation));
  if (variant == ShuffleVariant::Grid2x2Masked) spec.mask_slot = static_cast<int>(rng.uniform(4));

  GeneratedSample out;
  out.images.push_back(render_shuffle(trimmed, spec));

  QASample& s = out.sample;
  s.task = TaskKind::ShuffleReorder;
  s.question = templates::shuffle_question(variant, spec.grid.cells());
  s.answer = shuffle_answer(spec.permutation);
  s.seed = ctx.seed;
  s.source_image = ctx.source_image;
  s.aux = ShuffleAux{variant, spec.grid.rows, spec.grid.cols, spec.permutation, spec.mask_slot, trim, ctx.corpus};
  finalize(s);
  return out;
}

bool flip_eligible(const Image& patch, FlipDirection direction) {
  const Image vertical = flip_patch(patch, FlipDirection::Vertical);
  const Image horizontal = flip_patch(patch, FlipDirection::Horizontal);
  const Image& flipped = direction == FlipDirection::Vertical ? vertical : horizontal;
  return mean_abs_diff(patch, flipped) > kFlipAsymmetry && mean_abs_diff(vertical, horizontal) > kFlipAsymmetry;
}

Image render_flip(const Image& image, const FlipSpec& spec) {
  PatchGrid grid = partition(image, {2, 2});
  if (spec.target < 0 || spec.target >= 4) throw Error(ErrorKind::IndexOutOfRange, "flip target");
  auto& patch = grid.patches[static_cast<std::size_t>(spec.target)];
  patch = flip_patch(patch, spec.direction);
  return compose(grid);
}

GeneratedSample gen_flip(const Image& image, Rng& rng, const SampleContext& ctx) {
  require_size(image);
  const Rect trim = center_trim_rect(image.width(), image.height(), 2, 2);
  const Image trimmed = crop(image, trim);
  require_texture(trimmed);

  FlipSpec spec;
  spec.direction = rng.uniform(2) == 0 ? FlipDirection::Vertical : FlipDirection::Horizontal;
  const PatchGrid grid = partition(trimmed, {2, 2});
  std::vector<int> candidates;
  for (int k = 0; k < 4; ++k) {
    if (flip_eligible(grid.patches[static_cast<std::size_t>(k)], spec.direction)) candidates.push_back(k);
  }
  if (candidates.empty()) throw Error(ErrorKind::NoAsymmetricPatch, "no patch survives the asymmetry filter");
  spec.target = candidates[rng.uniform(candidates.size())];

  GeneratedSample out;
  out.images.push_back(render_flip(trimmed, spec));

  QASample& s = out.sample;
  s.task = TaskKind::FlipRecognize;
  s.question = templates::flip_question();
  s.answer = AnswerKey::flip(spec.target, spec.direction);
  s.seed = ctx.seed;
  s.source_image = ctx.source_image;
  s.aux = FlipAux{spec.target, spec.direction, trim, ctx.corpus};
  finalize(s);
  return out;
}

int crop_side(int width, int height) { return std::min(height / 2, width / 2); }

Image make_distractor(const Image& image, const Rect& crop_rect, DistractorMethod method) {
  const int s = crop_rect.width;
  switch (method) {
    case DistractorMethod::Interior: {
      const Image gt = crop(image, crop_rect);
      const int lo = s / 4;
      const int hi = (3 * s) / 4;  // exclusive bound of [s/4, 3s/4 - 1]
      return resize_bilinear(crop(gt, {lo, lo, hi - lo, hi - lo}), s, s);
    }
    case DistractorMethod::Exterior025:
    case DistractorMethod::Exterior050: {
      const int margin = method == DistractorMethod::Exterior025 ? s / 4 : s / 2;
      const Rect outer{crop_rect.x - margin, crop_rect.y - margin, s + 2 * margin, s + 2 * margin};
      return resize_bilinear(crop(image, outer), s, s);
    }
    case DistractorMethod::RotateClockwise: return rotate90(crop(image, crop_rect), true);
    case DistractorMethod::RotateCounterClockwise: return rotate90(crop(image, crop_rect), false);
  }
  throw Error(ErrorKind::InvalidAnswer, "unknown distractor method");
}

InpaintRender render_inpaint(const Image& image, const CropSpec& spec) {
  const Rect rect = spec.rect();
  if (!rect.within(image.width(), image.height())) throw Error(ErrorKind::OutOfBounds, "crop outside image");
  std::array<Image, 4> sources{crop(image, rect), make_distractor(image, rect, spec.distractors[0]),
                               make_distractor(image, rect, spec.distractors[1]),
                               make_distractor(image, rect, spec.distractors[2])};
  InpaintRender out;
  out.masked = zero_region(image, rect);
  for (std::size_t letter = 0; letter < 4; ++letter) {
    out.options[letter] = sources[static_cast<std::size_t>(spec.option_order[letter])];
  }
  return out;
}

GeneratedSample gen_inpaint(const Image& image, Rng& rng, const SampleContext& ctx) {
  require_size(image);
  require_texture(image);

  CropSpec spec;
  spec.side = crop_side(image.width(), image.height());
  spec.top = static_cast<int>(rng.uniform_int(0, image.height() - spec.side));
  spec.left = static_cast<int>(rng.uniform_int(0, image.width() - spec.side));
  const Rect rect = spec.rect();
  const Image gt = crop(image, rect);

  std::array<Image, 3> distractors;
  bool distinct = false;
  for (int plan = 0; plan < kMaxDistractorPlans && !distinct; ++plan) {
    const std::vector<int> methods = rng.permutation(static_cast<int>(kAllDistractorMethods.size()));
    for (std::size_t i = 0; i < 3; ++i) {
      spec.distractors[i] = kAllDistractorMethods[static_cast<std::size_t>(methods[i])];
      distractors[i] = make_distractor(image, rect, spec.distractors[i]);
    }
    distinct = gt != distractors[0] && gt != distractors[1] && gt != distractors[2] &&
               distractors[0] != distractors[1] && distractors[0] != distractors[2] &&
               distractors[1] != distractors[2];
  }
  if (!distinct) throw Error(ErrorKind::IndistinctDistractor, "distractors collide after resampling");

  const std::vector<int> order = rng.permutation(4);
  std::copy(order.begin(), order.end(), spec.option_order.begin());

  GeneratedSample out;
  out.images.push_back(zero_region(image, rect));
  const std::array<const Image*, 4> sources{&gt, &distractors[0], &distractors[1], &distractors[2]};
  InpaintAux aux;
  aux.side = spec.side;
  aux.top = spec.top;
  aux.left = spec.left;
  aux.corpus = ctx.corpus;
  char answer = 'A';
  for (std::size_t letter = 0; letter < 4; ++letter) {
    const int src = spec.option_order[letter];
    out.images.push_back(*sources[static_cast<std::size_t>(src)]);
    if (src == 0) {
      answer = kOptionLetters[letter];
    } else {
      aux.options[letter] = spec.distractors[static_cast<std::size_t>(src - 1)];
    }
  }

  QASample& s = out.sample;
  s.task = TaskKind::CropInpaint;
  s.question = templates::inpaint_question();
  s.answer = AnswerKey::option(answer);
  s.seed = ctx.seed;
  s.source_image = ctx.source_image;
  s.aux = aux;
  finalize(s);
  return out;
}

}  // namespace forge
