#include "alignkit/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace alignkit {

int DetectionSet::count(std::string_view category) const {
  return static_cast<int>(std::count_if(instances.begin(), instances.end(),
                                        [&](const auto& d) { return d.category == category; }));
}

void check_config(const PostProcessConfig& cfg) {
  if (!(cfg.confidence_threshold >= 0.0 && cfg.confidence_threshold <= 1.0)) {
    throw std::invalid_argument("confidence threshold must lie in [0, 1]");
  }
  if (!(cfg.dedup_iou_threshold >= 0.0 && cfg.dedup_iou_threshold <= 1.0)) {
    throw std::invalid_argument("dedup IoU threshold must lie in [0, 1]");
  }
  if (!(cfg.min_side >= 0.0)) throw std::invalid_argument("min side must be >= 0");
  if (!(cfg.relation_offset >= 0.0)) throw std::invalid_argument("relation offset must be >= 0");
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double ix = std::min(a.cx + a.w / 2, b.cx + b.w / 2) - std::max(a.cx - a.w / 2, b.cx - b.w / 2);
  const double iy = std::min(a.cy + a.h / 2, b.cy + b.h / 2) - std::max(a.cy - a.h / 2, b.cy - b.h / 2);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

Color classify_color(const ColorScores& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return kPalette[best];
}

Color classify_color(const std::map<std::string, double, std::less<>>& scores) {
  ColorScores dense{};
  for (const auto& [name, value] : scores) {
    if (!parse_color(name)) throw std::invalid_argument("unknown color '" + name + "'");
  }
  for (std::size_t i = 0; i < kPalette.size(); ++i) {
    auto it = scores.find(to_string(kPalette[i]));
    if (it == scores.end()) {
      throw std::invalid_argument("missing color score for '" + std::string(to_string(kPalette[i])) + "'");
    }
    dense[i] = it->second;
  }
  return classify_color(dense);
}

DetectionSet post_process(std::span<const RawDetection> raw, const PostProcessConfig& cfg) {
  check_config(cfg);

  std::vector<const RawDetection*> confident;
  for (const auto& d : raw) {
    if (!(d.confidence < cfg.confidence_threshold)) confident.push_back(&d);
  }
  std::stable_sort(confident.begin(), confident.end(),
                   [](const RawDetection* a, const RawDetection* b) {
                     return a->confidence > b->confidence;
                   });

  std::vector<const RawDetection*> kept;
  for (const auto* d : confident) {
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const RawDetection* k) {
      return k->category == d->category && iou(k->box, d->box) > cfg.dedup_iou_threshold;
    });
    if (!duplicate) kept.push_back(d);
  }

  DetectionSet out;
  for (const auto* d : kept) {
    if (std::min(d->box.w, d->box.h) < cfg.min_side) continue;
    out.instances.push_back(
        {d->category, d->confidence, d->box, d->color_scores, classify_color(d->color_scores)});
  }
  return out;
}

std::vector<RawDetection> to_raw(const DetectionSet& dets) {
  std::vector<RawDetection> out;
  out.reserve(dets.instances.size());
  for (const auto& d : dets.instances) {
    out.push_back({d.category, d.confidence, d.box, d.color_scores});
  }
  return out;
}

std::vector<RelationKind> RelationSet::kinds() const {
  std::vector<RelationKind> out;
  for (auto k : kRelationKinds) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

RelationSet relations_between(const BoundingBox& first, const BoundingBox& second, double c) {
  RelationSet s;
  const double dx = c * (first.w + second.w);
  const double dy = c * (first.h + second.h);
  // x2 < x1 - d is evaluated as x1 > x2 + d so that swapping the pair
  // mirrors Right/Left and Below/Above bit-for-bit.
  if (second.cx > first.cx + dx) s.insert(RelationKind::Right);
  if (first.cx > second.cx + dx) s.insert(RelationKind::Left);
  if (second.cy > first.cy + dy) s.insert(RelationKind::Below);
  if (first.cy > second.cy + dy) s.insert(RelationKind::Above);
  return s;
}

RelationMap extract_relations(const DetectionSet& dets, const PostProcessConfig& cfg) {
  check_config(cfg);
  const auto n = dets.instances.size();
  RelationMap map(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      map.set(i, j, relations_between(dets.instances[i].box, dets.instances[j].box,
                                      cfg.relation_offset));
    }
  }
  return map;
}

}  // namespace alignkit
