#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "alignkit/align_score.hpp"

namespace alignkit {

/// Scene facts kept alongside a score so reports can be analyzed without the
/// benchmark file.
struct SceneSummary {
  int total_instances = 0;
  int category_count = 0;
  int relation_count = 0;
  int max_same_category = 0;

  friend bool operator==(const SceneSummary&, const SceneSummary&) = default;
};

SceneSummary summarize(const StructuredScene& scene);

struct ScoredPrompt {
  std::int64_t id = 0;
  SceneSummary summary;
  ScoreReport report;
  /// No detection record was found; scored against an empty detection set.
  bool missing_detections = false;

  friend bool operator==(const ScoredPrompt&, const ScoredPrompt&) = default;
};

enum class GroupKey { TotalInstances, CategoryCount, RelationCount, MaxSameCategory, RelationKind };

std::string_view to_string(GroupKey k);
std::optional<GroupKey> parse_group_key(std::string_view s);

struct GroupStats {
  std::size_t size = 0;
  double mean_acc = 0.0;
  double mean_bias = 0.0;
  double mean_align_score = 0.0;
};

/// Group value -> stats. For RelationKind the value is the enum's integer and
/// a prompt joins every kind it specifies, so groups overlap.
struct GroupedMetrics {
  GroupKey key = GroupKey::TotalInstances;
  std::map<int, GroupStats> groups;
  /// Notes about omitted (empty) groups.
  std::vector<std::string> notes;
};

struct GroupFilter {
  std::optional<int> total_instances;
};

GroupedMetrics group_scores(std::span<const ScoredPrompt> prompts, GroupKey key,
                            const GroupFilter& filter = {});

struct DirectionAccuracy {
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy() const { return static_cast<double>(correct) / static_cast<double>(total); }
};

/// Kinds with no verdicts are absent from the map.
std::map<RelationKind, DirectionAccuracy> relation_direction_accuracy(
    std::span<const ScoredPrompt> prompts);

class UndefinedStatistic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Throws std::invalid_argument on length mismatch or n < 2 and
/// UndefinedStatistic when a series is constant.
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);
/// Tie-adjusted tau-b.
double kendall_tau(std::span<const double> x, std::span<const double> y);

/// Average ranks (1-based), ties sharing their mean rank.
std::vector<double> average_ranks(std::span<const double> x);

/// Interval-level Krippendorff's alpha. `ratings[a][u]` is annotator a's value
/// for item u; nullopt is missing. Throws std::invalid_argument with fewer
/// than two annotators, two items or two pairable values, and
/// UndefinedStatistic when all pairable values are equal.
double krippendorff_alpha(const std::vector<std::vector<std::optional<double>>>& ratings);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n - 1)
};

/// Throws std::invalid_argument for fewer than two runs.
MeanSd stability(std::span<const double> runs);

struct StabilityReport {
  std::size_t runs = 0;
  MeanSd acc;
  MeanSd bias;
  MeanSd align_score;
};

StabilityReport stability_report(std::span<const AggregateScore> runs);

}  // namespace alignkit
