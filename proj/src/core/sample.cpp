#include "forge/core/sample.hpp"

#include "forge/core/digest.hpp"
#include "forge/core/error.hpp"

namespace forge {

Orientation orientation_from_degrees(int deg) {
  for (Orientation o : kAllOrientations) {
    if (degrees(o) == deg) return o;
  }
  throw Error(ErrorKind::InvalidAnswer, "orientation must be cardinal, got " + std::to_string(deg));
}

std::string_view to_string(DistractorMethod method) {
  switch (method) {
    case DistractorMethod::Interior: return "interior";
    case DistractorMethod::Exterior025: return "exterior_0.25";
    case DistractorMethod::Exterior050: return "exterior_0.5";
    case DistractorMethod::RotateClockwise: return "rotate_cw";
    case DistractorMethod::RotateCounterClockwise: return "rotate_ccw";
  }
  return "";
}

DistractorMethod distractor_from_string(std::string_view name) {
  for (DistractorMethod m : kAllDistractorMethods) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorKind::InvalidAnswer, "unknown distractor method '" + std::string(name) + "'");
}

std::string sample_id(const QASample& sample) {
  // Fields are length-prefixed so no concatenation can alias another.
  Sha256 hash;
  auto field = [&hash](std::string_view value) {
    hash.update(std::to_string(value.size())).update(":").update(value);
  };
  field(to_string(sample.task));
  field(sample.question);
  field(sample.answer.canonical());
  field(std::to_string(sample.seed.master_seed));
  field(std::to_string(sample.seed.sample_index));
  field(sample.source_image);
  return hash.hex_digest().substr(0, 32);
}

void validate(const QASample& sample) {
  auto fail = [&sample](const std::string& what) {
    throw Error(ErrorKind::InvalidAnswer, "sample " + sample.id + ": " + what);
  };
  if (!sample.answer.valid_for(sample.task)) fail("answer does not fit task");
  if (!sample.images.empty() && sample.images.size() != expected_image_count(sample.task)) {
    fail("wrong image count");
  }
  if (sample.aux.index() != task_index(sample.task)) fail("aux record does not match task");
}

}  // namespace forge
