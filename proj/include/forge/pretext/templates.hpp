#pragma once

#include <array>
#include <string>
#include <string_view>

#include "forge/core/sample.hpp"

namespace forge::templates {

/// Appended to every question at training time.
inline constexpr std::string_view kFormatPrompt =
    "You FIRST think about the reasoning process as an internal monologue and then provide the final answer. "
    "The reasoning process MUST BE enclosed within <think> </think> tags. The final answer MUST BE put in "
    "\\boxed{}.";

/// slots = number of patches or strips (3 or 4; 2x2 variants always 4).
std::string shuffle_question(ShuffleVariant variant, int slots);
std::string flip_question();
std::string inpaint_question();
std::string depth_order_question();
std::string relpos_question(int anchor_label, Orientation theta, const std::array<std::string, 4>& options);

/// Phrase describing where the hypothetical camera at the anchor faces.
std::string_view orientation_phrase(Orientation theta);

/// Question followed by the format prompt.
std::string training_prompt(const std::string& question);

}  // namespace forge::templates
