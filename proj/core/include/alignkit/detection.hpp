#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alignkit/scene.hpp"

namespace alignkit {

/// Axis-aligned box in pixels, center-anchored. The y axis grows downward.
struct BoundingBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Similarity score per palette color, indexed in palette order.
using ColorScores = std::array<double, kPaletteSize>;

struct RawDetection {
  std::string category;
  double confidence = 0.0;
  BoundingBox box;
  ColorScores color_scores{};

  friend bool operator==(const RawDetection&, const RawDetection&) = default;
};

struct DetectedInstance {
  std::string category;
  double confidence = 0.0;
  BoundingBox box;
  ColorScores color_scores{};
  Color color = Color::Green;

  friend bool operator==(const DetectedInstance&, const DetectedInstance&) = default;
};

/// Post-processed detections, sorted by descending confidence.
struct DetectionSet {
  std::vector<DetectedInstance> instances;

  std::size_t total() const { return instances.size(); }
  int count(std::string_view category) const;

  friend bool operator==(const DetectionSet&, const DetectionSet&) = default;
};

struct PostProcessConfig {
  /// Detections with confidence below this are dropped.
  double confidence_threshold = 0.3;
  /// Same-category boxes overlapping a kept box by more than this are dropped.
  double dedup_iou_threshold = 0.9;
  /// Boxes with a side shorter than this (pixels) are dropped.
  double min_side = 5.0;
  /// Relation offset coefficient.
  double relation_offset = 0.1;
};

/// Throws std::invalid_argument on out-of-range settings.
void check_config(const PostProcessConfig& cfg);

double iou(const BoundingBox& a, const BoundingBox& b);

/// Confidence filter, then same-category dedup scanning in descending
/// confidence, then the small-box filter. Survivors are colored by argmax.
DetectionSet post_process(std::span<const RawDetection> raw, const PostProcessConfig& cfg = {});

/// Inverse view of a detection set, so post_process can be re-applied.
std::vector<RawDetection> to_raw(const DetectionSet& dets);

/// Argmax over the palette; ties go to the earlier palette color.
Color classify_color(const ColorScores& scores);

/// Keyed variant. Throws std::invalid_argument if a palette color is missing
/// or an unknown color name is present.
Color classify_color(const std::map<std::string, double, std::less<>>& scores);

/// Bitmask over RelationKind.
class RelationSet {
 public:
  constexpr RelationSet() = default;
  void insert(RelationKind k) { bits_ |= bit(k); }
  bool contains(RelationKind k) const { return (bits_ & bit(k)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::vector<RelationKind> kinds() const;
  friend bool operator==(RelationSet, RelationSet) = default;

 private:
  static constexpr std::uint8_t bit(RelationKind k) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k));
  }
  std::uint8_t bits_ = 0;
};

/// Geometric relations of `second` relative to `first`: Right when
/// x2 > x1 + c(w1 + w2), Left when x2 < x1 - c(w1 + w2), Below when
/// y2 > y1 + c(h1 + h2), Above when y2 < y1 - c(h1 + h2).
RelationSet relations_between(const BoundingBox& first, const BoundingBox& second, double c);

/// Pairwise relations over a detection set. Entry (i, j) holds the relations
/// of detection j relative to detection i.
class RelationMap {
 public:
  RelationMap() = default;
  explicit RelationMap(std::size_t n) : n_(n), sets_(n * n) {}

  std::size_t size() const { return n_; }
  RelationSet at(std::size_t first, std::size_t second) const { return sets_[first * n_ + second]; }
  void set(std::size_t first, std::size_t second, RelationSet s) { sets_[first * n_ + second] = s; }

  /// Does "detection `subject` is <kind> detection `object`" hold?
  bool holds(std::size_t subject, std::size_t object, RelationKind kind) const {
    return at(object, subject).contains(kind);
  }
  /// Every kind for which `holds(subject, object, kind)` is true.
  RelationSet of_subject(std::size_t subject, std::size_t object) const {
    return at(object, subject);
  }

 private:
  std::size_t n_ = 0;
  std::vector<RelationSet> sets_;
};

RelationMap extract_relations(const DetectionSet& dets, const PostProcessConfig& cfg = {});

}  // namespace alignkit
