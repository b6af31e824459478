#include "forge/pretext/depth_based.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "forge/core/error.hpp"
#include "forge/pretext/templates.hpp"

namespace forge {
namespace {

void require_pair(const Image& image, const DepthMap& depth) {
  if (image.width() < kMinTaskSide || image.height() < kMinTaskSide) {
    throw Error(ErrorKind::ImageTooSmall,
                std::to_string(image.width()) + "x" + std::to_string(image.height()) + " is below the size gate");
  }
  if (image.width() != depth.width() || image.height() != depth.height()) {
    throw Error(ErrorKind::DimensionMismatch, "depth map is not pixel-aligned with the image");
  }
}

double distance(Pixel a, Pixel b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

RegionStats region_stats(const DepthMap& depth, const Rect& window) {
  RegionStats stats;
  double sum = 0.0;
  for (int y = window.y; y < window.y + window.height; ++y) {
    for (int x = window.x; x < window.x + window.width; ++x) {
      ++stats.total;
      if (!depth.valid(x, y)) continue;
      const double v = depth.at(x, y);
      if (stats.valid == 0) {
        stats.min = stats.max = v;
      } else {
        stats.min = std::min(stats.min, v);
        stats.max = std::max(stats.max, v);
      }
      sum += v;
      ++stats.valid;
    }
  }
  if (stats.valid > 0) stats.mean = sum / static_cast<double>(stats.valid);
  return stats;
}

int region_side(int width, int height) {
  return std::max(4, static_cast<int>(std::lround(kRegionSideFraction * std::min(width, height))));
}

DepthRegionSet select_depth_regions(const DepthMap& depth, Rng& rng) {
  const int w = region_side(depth.width(), depth.height());
  const double separation = std::max(2.0 * w, 2.0 * mark_radius(depth.width(), depth.height()) + 2.0);
  if (depth.width() < w || depth.height() < w) throw Error(ErrorKind::NoValidRegionTriple, "depth map too small");

  auto draw_window = [&]() {
    const int x = static_cast<int>(rng.uniform_int(0, depth.width() - w));
    const int y = static_cast<int>(rng.uniform_int(0, depth.height() - w));
    return Rect{x, y, w, w};
  };

  for (int attempt = 0; attempt < kMaxRegionAttempts; ++attempt) {
    std::array<Rect, 3> windows{draw_window(), draw_window(), draw_window()};
    if (distance(window_center(windows[0]), window_center(windows[1])) < separation ||
        distance(window_center(windows[0]), window_center(windows[2])) < separation ||
        distance(window_center(windows[1]), window_center(windows[2])) < separation) {
      continue;
    }
    std::array<RegionStats, 3> stats;
    bool ok = true;
    for (std::size_t i = 0; i < 3 && ok; ++i) {
      stats[i] = region_stats(depth, windows[i]);
      ok = static_cast<double>(stats[i].valid) >= kMinRegionValidFraction * static_cast<double>(stats[i].total) &&
           stats[i].max - stats[i].min < kMaxRegionRange;
    }
    if (!ok) continue;

    std::array<std::size_t, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return stats[a].min < stats[b].min; });
    if (stats[order[1]].min - stats[order[0]].max <= kMinRegionGap ||
        stats[order[2]].min - stats[order[1]].max <= kMinRegionGap) {
      continue;
    }

    DepthRegionSet set;
    const std::vector<int> labels = rng.permutation(3);
    for (std::size_t i = 0; i < 3; ++i) {
      set.windows[i] = windows[order[i]];
      set.labels[i] = labels[i] + 1;
    }
    return set;
  }
  throw Error(ErrorKind::NoValidRegionTriple, "no region triple satisfies the range and gap constraints");
}

GeneratedSample gen_depth_order(const Image& image, const DepthMap& depth, Rng& rng, const SampleContext& ctx) {
  require_pair(image, depth);
  const DepthRegionSet regions = select_depth_regions(depth, rng);

  std::array<Pixel, 3> centers{};
  DepthOrderAux aux;
  aux.depth_source = ctx.depth_source;
  aux.corpus = ctx.corpus;
  for (std::size_t i = 0; i < 3; ++i) {
    centers[i] = window_center(regions.windows[i]);
    aux.regions[i] = {regions.windows[i], regions.labels[i]};
  }

  GeneratedSample out;
  out.images.push_back(annotate_labels(image, centers, regions.labels));

  QASample& s = out.sample;
  s.task = TaskKind::DepthOrder;
  s.question = templates::depth_order_question();
  s.answer = AnswerKey::depth_ordering(regions.labels);
  s.seed = ctx.seed;
  s.source_image = ctx.source_image;
  s.aux = aux;
  finalize(s);
  return out;
}

ObjectOffset relpos_transform(const RelPosSpec& spec) {
  // Exact cosine/sine for the four cardinal angles.
  int c = 1, s = 0;
  switch (spec.theta) {
    case Orientation::Away: c = 1, s = 0; break;
    case Orientation::Left: c = 0, s = 1; break;
    case Orientation::Toward: c = -1, s = 0; break;
    case Orientation::Right: c = 0, s = -1; break;
  }
  const double dx = static_cast<double>(spec.query.x - spec.anchor.x);
  const double dz = spec.query.z - spec.anchor.z;
  return {c * dx + s * dz, -s * dx + c * dz};
}

RelPosThresholds relpos_thresholds(Orientation theta) {
  if (theta == Orientation::Away || theta == Orientation::Toward) {
    return {kParallelThresholdPx, kPerpendicularThresholdNd};
  }
  return {kPerpendicularThresholdNd, kParallelThresholdPx};
}

std::string RelPosLabel::text() const {
  const std::string lateral = x == Lateral::Left ? "Left" : x == Lateral::Right ? "Right" : "";
  const std::string depthwise = z == Longitudinal::Front ? "Front" : z == Longitudinal::Back ? "Back" : "";
  if (lateral.empty()) return depthwise;
  if (depthwise.empty()) return lateral;
  return lateral + "-" + depthwise;
}

std::optional<RelPosLabel> try_classify_relpos(ObjectOffset offset, Orientation theta) {
  const RelPosThresholds t = relpos_thresholds(theta);
  RelPosLabel label;
  if (offset.x > t.x) label.x = Lateral::Right;
  else if (offset.x < -t.x) label.x = Lateral::Left;
  if (offset.z > t.z) label.z = Longitudinal::Front;
  else if (offset.z < -t.z) label.z = Longitudinal::Back;
  if (label.x == Lateral::None && label.z == Longitudinal::None) return std::nullopt;
  return label;
}

RelPosLabel classify_relpos(ObjectOffset offset, Orientation theta) {
  if (auto label = try_classify_relpos(offset, theta)) return *label;
  throw Error(ErrorKind::AmbiguousInstance, "query lies within both thresholds");
}

GeneratedSample gen_relpos(const Image& image, const DepthMap& depth, Rng& rng, const SampleContext& ctx) {
  require_pair(image, depth);
  const Orientation theta = kAllOrientations[rng.uniform(4)];
  const int anchor_label = static_cast<int>(rng.uniform(2)) + 1;
  const double separation = std::max<double>(kMinPointSeparationPx, 2.0 * mark_radius(image.width(), image.height()) + 2.0);

  auto draw_valid_pixel = [&]() -> std::optional<Pixel> {
    for (int tries = 0; tries < 64; ++tries) {
      const Pixel p{static_cast<int>(rng.uniform(static_cast<std::uint64_t>(depth.width()))),
                    static_cast<int>(rng.uniform(static_cast<std::uint64_t>(depth.height())))};
      if (depth.valid(p.x, p.y)) return p;
    }
    return std::nullopt;
  };

  for (int attempt = 0; attempt < kMaxPairAttempts; ++attempt) {
    const auto a = draw_valid_pixel();
    const auto q = draw_valid_pixel();
    if (!a || !q || distance(*a, *q) < separation) continue;
    RelPosSpec spec{{a->x, a->y, depth.at(a->x, a->y)}, {q->x, q->y, depth.at(q->x, q->y)}, theta};
    const auto label = try_classify_relpos(relpos_transform(spec), theta);
    if (!label) continue;

    const std::string gt = label->text();
    std::vector<std::string> decoys;
    for (std::string_view d : kDirectionLabels) {
      if (d != gt) decoys.emplace_back(d);
    }
    rng.shuffle(decoys);
    std::array<std::string, 4> pool{gt, decoys[0], decoys[1], decoys[2]};
    const std::vector<int> order = rng.permutation(4);

    RelPosAux aux;
    aux.anchor = spec.anchor;
    aux.query = spec.query;
    aux.theta = theta;
    const RelPosThresholds t = relpos_thresholds(theta);
    aux.delta_x = t.x;
    aux.delta_z = t.z;
    aux.gt_label = gt;
    aux.anchor_label = anchor_label;
    aux.depth_source = ctx.depth_source;
    aux.corpus = ctx.corpus;
    char answer = 'A';
    for (std::size_t letter = 0; letter < 4; ++letter) {
      aux.options[letter] = pool[static_cast<std::size_t>(order[letter])];
      if (order[letter] == 0) answer = kOptionLetters[letter];
    }

    const std::array<Pixel, 2> centers{Pixel{spec.anchor.x, spec.anchor.y}, Pixel{spec.query.x, spec.query.y}};
    const std::array<int, 2> labels{anchor_label, 3 - anchor_label};

    GeneratedSample out;
    out.images.push_back(annotate_labels(image, centers, labels));
    QASample& s = out.sample;
    s.task = TaskKind::RelPosition;
    s.question = templates::relpos_question(anchor_label, theta, aux.options);
    s.answer = AnswerKey::option(answer);
    s.seed = ctx.seed;
    s.source_image = ctx.source_image;
    s.aux = aux;
    finalize(s);
    return out;
  }
  throw Error(ErrorKind::NoValidPair, "no unambiguous point pair found");
}

}  // namespace forge
