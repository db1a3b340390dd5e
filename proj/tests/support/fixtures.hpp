#pragma once

#include "alignkit/detection.hpp"
#include "alignkit/scene.hpp"

namespace testing_support {

/// Three benches (white, black, red) and a green boat; the first bench is on
/// the left of the boat.
inline alignkit::StructuredScene bench_boat_scene() {
  using namespace alignkit;
  return StructuredScene({{"bench", 1, Color::White},
                          {"bench", 2, Color::Black},
                          {"bench", 3, Color::Red},
                          {"boat", 1, Color::Green}},
                         {{{"bench", 1}, {"boat", 1}, RelationKind::Left}});
}

inline const char* bench_boat_prompt() {
  return "A photo-realistic image of three bench, one boat. The first bench is white, on the left of the "
         "first boat. The second bench is black. The third bench is red. The first boat is green.";
}

/// Palette scores with a single winner.
inline alignkit::ColorScores scores_for(alignkit::Color c) {
  alignkit::ColorScores s{};
  s.fill(0.1);
  s[static_cast<std::size_t>(c)] = 0.9;
  return s;
}

inline alignkit::DetectedInstance detected(const char* category, alignkit::Color color,
                                           alignkit::BoundingBox box, double confidence = 0.9) {
  return {category, confidence, box, scores_for(color), color};
}

}  // namespace testing_support
