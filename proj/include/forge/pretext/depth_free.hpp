#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "forge/core/rng.hpp"
#include "forge/imaging/ops.hpp"
#include "forge/pretext/generated.hpp"

namespace forge {

/// Images whose pixel standard deviation falls below this carry no usable cues.
inline constexpr double kDegenerateStddev = 8.0;
/// A patch qualifies for flipping only if flipping changes it by more than this (mean abs, 8-bit).
inline constexpr double kFlipAsymmetry = 5.0;
inline constexpr int kMaxDistractorPlans = 8;

// ---- shuffled patch reordering ----------------------------------------

struct ShuffleSpec {
  GridSpec grid;
  /// Displayed slot k shows original patch permutation[k].
  std::vector<int> permutation;
  /// Displayed slot whose patch is whited out (2x2 only).
  std::optional<int> mask_slot;
};

GridSpec shuffle_grid(ShuffleVariant variant, int slots);
std::vector<int> inverse_permutation(std::span<const int> permutation);

/// The answer lists, for each original position, the displayed slot that belongs there.
AnswerKey shuffle_answer(std::span<const int> permutation);

/// `image` must already be divisible by the grid.
Image render_shuffle(const Image& image, const ShuffleSpec& spec);

GeneratedSample gen_shuffle(const Image& image, ShuffleVariant variant, Rng& rng, const SampleContext& ctx);

// ---- flipped patch recognition ----------------------------------------

struct FlipSpec {
  int target = 0;
  FlipDirection direction = FlipDirection::Vertical;
};

/// Flipping in `direction` must change the patch, and the two flips must differ
/// from each other, so that both the label and the direction are recoverable.
bool flip_eligible(const Image& patch, FlipDirection direction);

/// `image` must be divisible by 2x2.
Image render_flip(const Image& image, const FlipSpec& spec);

GeneratedSample gen_flip(const Image& image, Rng& rng, const SampleContext& ctx);

// ---- cropped patch inpainting -----------------------------------------

struct CropSpec {
  int side = 0;
  int top = 0;   // row of the crop origin
  int left = 0;  // column of the crop origin
  std::array<DistractorMethod, 3> distractors{};
  /// option_order[letter] = 0 for the true crop, i+1 for distractors[i].
  std::array<int, 4> option_order{};

  Rect rect() const { return {left, top, side, side}; }
};

/// s = min(H/2, W/2).
int crop_side(int width, int height);

/// Builds one distractor of size side x side from the source image.
Image make_distractor(const Image& image, const Rect& crop_rect, DistractorMethod method);

struct InpaintRender {
  Image masked;
  std::array<Image, 4> options;
};

InpaintRender render_inpaint(const Image& image, const CropSpec& spec);

GeneratedSample gen_inpaint(const Image& image, Rng& rng, const SampleContext& ctx);

}  // namespace forge
