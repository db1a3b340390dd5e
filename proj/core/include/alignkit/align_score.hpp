#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alignkit/detection.hpp"
#include "alignkit/scene.hpp"

namespace alignkit {

/// Category-respecting injection from prompt instances (canonical order) to
/// detection indices; nullopt is a blank placeholder.
///
/// Within a category with n_k prompted and m_k detected instances, at most
/// max(0, n_k - m_k) instances may map to blanks.
struct Matching {
  std::vector<std::optional<std::size_t>> targets;

  friend bool operator==(const Matching&, const Matching&) = default;
};

/// Empty string when valid, otherwise the first problem found.
std::string check_matching(const Matching& f, const StructuredScene& scene, const DetectionSet& dets);

struct CountVerdict {
  std::string category;
  int required = 0;
  int detected = 0;

  bool correct() const { return required == detected; }
  friend bool operator==(const CountVerdict&, const CountVerdict&) = default;
};

struct ColorVerdict {
  InstanceRef instance;
  Color required = Color::Green;
  std::optional<std::size_t> target;
  std::optional<Color> detected;
  bool correct = false;

  friend bool operator==(const ColorVerdict&, const ColorVerdict&) = default;
};

struct RelationVerdict {
  RelationSpec relation;
  /// Relations of the matched subject relative to the matched object; nullopt
  /// if either endpoint is blank.
  std::optional<RelationSet> detected;
  bool correct = false;

  friend bool operator==(const RelationVerdict&, const RelationVerdict&) = default;
};

struct MatchScore {
  double acc = 0.0;
  std::size_t correct = 0;
  std::size_t normalizer = 0;
  std::vector<ColorVerdict> colors;
  std::vector<RelationVerdict> relations;
};

struct ScoreReport {
  int bias = 0;
  double acc = 0.0;
  double align_score = 0.0;
  std::size_t normalizer = 0;
  std::size_t correct = 0;
  Matching matching;
  std::vector<CountVerdict> counts;
  std::vector<ColorVerdict> colors;
  std::vector<RelationVerdict> relations;

  bool perfect() const { return bias == 0 && correct == normalizer; }
  friend bool operator==(const ScoreReport&, const ScoreReport&) = default;
};

/// Sum over prompt categories of |n_k - m_k|. Detected categories the prompt
/// does not mention are ignored.
int compute_bias(const StructuredScene& scene, const DetectionSet& dets);

/// (Acc + 1 / (Bias + 1)) / 2. Bias may be a mean, hence double.
double align_score(double acc, double bias);

/// Fraction of satisfied checks under `f`. The normalizer counts instances
/// with a specified color plus specified relation pairs; a scene with no
/// checks scores 1. Blank targets fail every check they touch. Throws
/// std::invalid_argument if `f` is not a valid matching.
MatchScore score_matching(const StructuredScene& scene, const DetectionSet& dets,
                          const RelationMap& relations, const Matching& f);

struct BestMatch {
  Matching matching;
  double acc = 0.0;
  std::size_t correct = 0;
  std::size_t normalizer = 0;
};

/// Acc-maximizing matching by exhaustive depth-first search over
/// per-instance assignments, pruned with an optimistic bound (every remaining
/// check passes). Among equally good matchings the first found in
/// enumeration order (detections by index, blank last) is returned.
BestMatch best_matching(const StructuredScene& scene, const DetectionSet& dets,
                        const RelationMap& relations);
BestMatch best_matching(const StructuredScene& scene, const DetectionSet& dets,
                        const PostProcessConfig& cfg = {});

/// Bias, best matching over geometric relations, AlignScore and verdicts.
ScoreReport evaluate(const StructuredScene& scene, const DetectionSet& dets,
                     const PostProcessConfig& cfg = {});

struct AggregateScore {
  std::size_t count = 0;
  double mean_acc = 0.0;
  double mean_bias = 0.0;
  /// AlignScore of the mean Acc and mean Bias (default reporting).
  double align_score = 0.0;
  /// Mean of per-prompt AlignScores.
  double mean_align_score = 0.0;
};

/// Throws std::invalid_argument on empty input.
AggregateScore aggregate(std::span<const ScoreReport> reports);

}  // namespace alignkit
