#include "forge/pretext/templates.hpp"

#include "forge/core/error.hpp"

namespace forge::templates {
namespace {

constexpr std::string_view kVisualClues = "Based on visual clues such as continuity, alignment, and context, ";

}  // namespace

std::string shuffle_question(ShuffleVariant variant, int slots) {
  switch (variant) {
    case ShuffleVariant::Grid2x2:
      return "The image has been divided into 4 shuffled patches labeled 0, 1, 2, and 3. " + std::string(kVisualClues) +
             "answer the correct arrangement of the patches to restore the original image, where the format is "
             "'TopLeft-TopRight-BottomLeft-BottomRight'.";
    case ShuffleVariant::Grid2x2Masked:
      return "The image has been divided into 4 shuffled patches labeled 0, 1, 2, and 3. One of the four patches is "
             "masked completely by white pixels. " +
             std::string(kVisualClues) +
             "answer the correct arrangement of the patches to restore the original image, where the format is "
             "'TopLeft-TopRight-BottomLeft-BottomRight'.";
    case ShuffleVariant::Horizontal:
    case ShuffleVariant::Vertical: {
      if (slots != 3 && slots != 4) throw Error(ErrorKind::InvalidAnswer, "strip count must be 3 or 4");
      const bool horizontal = variant == ShuffleVariant::Horizontal;
      const std::string format =
          horizontal ? (slots == 3 ? "Left-Middle-Right" : "Left-Middle1-Middle2-Right")
                     : (slots == 3 ? "Top-Middle-Bottom" : "Top-Middle1-Middle2-Bottom");
      return "The image has been divided into " + std::to_string(slots) + " shuffled " +
             (horizontal ? "horizontal" : "vertical") + " strips labeled 0, 1, 2, and 3. " +
             std::string(kVisualClues) +
             "answer the correct arrangement of the strips to restore the original image, where the format is '" +
             format + "'.";
    }
  }
  throw Error(ErrorKind::InvalidAnswer, "unknown shuffle variant");
}

std::string flip_question() {
  return "The image has been divided into 4 labeled 0, 1, 2, and 3. One of the four patches is flipped either "
         "horizontally or vertically. " +
         std::string(kVisualClues) +
         "answer the correct patch that is flipped and the direction the flip, where the format is "
         "'Label-Direction'. The direction can only be 0(flipped vertically) or 1(flipped horizontally).";
}

std::string inpaint_question() {
  return "Which image is the missing part in the first image <image1>? Based on visual clues such as alignment, "
         "image content, and positional relationship, select one of the four options "
         "<image2><image3><image4><image5> as the final answer. The final answer should be chosen from 'A', 'B', "
         "'C', and 'D'.";
}

std::string depth_order_question() {
  return "The original image has three regions marked as 1, 2, and 3. Consider the content, positional "
         "relationships, depths of the three regions and other cues, and sort the depths of the three regions from "
         "smallest to largest from the camera, where the format of the answer is 'Smallest-Middle-Largest'.";
}

std::string_view orientation_phrase(Orientation theta) {
  switch (theta) {
    case Orientation::Away: return "facing away from the camera";
    case Orientation::Left: return "facing to the left of the image";
    case Orientation::Toward: return "facing the camera";
    case Orientation::Right: return "facing to the right of the image";
  }
  return "";
}

std::string relpos_question(int anchor_label, Orientation theta, const std::array<std::string, 4>& options) {
  if (anchor_label != 1 && anchor_label != 2) throw Error(ErrorKind::InvalidAnswer, "anchor label must be 1 or 2");
  const int query_label = 3 - anchor_label;
  return "I've taken an image and there are two regions marked as 1, and 2 on the image. Assume that there is a "
         "camera at position '" +
         std::to_string(anchor_label) + "' and it's " + std::string(orientation_phrase(theta)) +
         ". According to the camera, where is the region marked '" + std::to_string(query_label) + "'? A. " +
         options[0] + " B. " + options[1] + " C. " + options[2] + " D. " + options[3] +
         ". Consider cues such as depth, orientation, and 3D spatial relationship. The final answer should be "
         "chosen from 'A', 'B', 'C', and 'D'.";
}

std::string training_prompt(const std::string& question) { return question + " " + std::string(kFormatPrompt); }

}  // namespace forge::templates
