#pragma once

#include <random>
#include <vector>

#include "alignkit/detection.hpp"
#include "alignkit/scene.hpp"

namespace testing_support {

struct SceneShape {
  int max_instances = 5;
  int max_relations = 6;
  /// Categories are drawn from the first `category_pool` of a fixed list;
  /// a small pool forces same-category multiplicities.
  int category_pool = 3;
  double color_probability = 0.8;
};

/// Unvalidated scene: ordinals 1..n_k per category, random colors, relations
/// on random distinct pairs (rings allowed).
alignkit::StructuredScene random_scene(std::mt19937_64& rng, const SceneShape& shape = {});

/// Up to `max_detections` detections drawn from the scene's categories (plus
/// an occasional foreign one) on a coarse grid, so relation thresholds and
/// color ties are hit often.
alignkit::DetectionSet random_detections(std::mt19937_64& rng, const alignkit::StructuredScene& scene,
                                         int max_detections = 5);

/// Raw detections for post-processing properties, with confidences, sides and
/// overlaps clustered around the default thresholds.
std::vector<alignkit::RawDetection> random_raw(std::mt19937_64& rng, int max_detections = 8);

}  // namespace testing_support
