#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "alignkit/rng.hpp"
#include "alignkit/scene.hpp"

namespace alignkit {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GeneratorConfig {
  /// Probability of each of the four relation kinds per unordered pair; no
  /// relation with probability 1 - 4p.
  double relation_probability = 0.05;
  std::size_t max_instances = 5;
  std::size_t max_relations = 6;
  std::size_t max_categories = 5;
  std::size_t max_prompt_words = 78;
  /// Relation resampling attempts before falling back to dropping relations.
  int cycle_resample_attempts = 16;
  std::uint64_t seed = 0;
  /// Non-owning; null means the built-in default table.
  const CompatibilityTable* table = nullptr;
  /// Worker threads for build_benchmark; 0 picks hardware concurrency.
  unsigned threads = 1;

  const CompatibilityTable& compatibility() const {
    return table ? *table : default_compatibility_table();
  }
  SceneLimits limits() const { return {max_instances, max_relations}; }
};

/// Throws ConfigError on inconsistent settings.
void check_config(const GeneratorConfig& config);

/// Samples categories, per-category counts and colors. The scene has no
/// relations. Total instances are uniform in [1, max_instances]; the number
/// of categories is uniform in [1, min(total, max_categories, |vocabulary|)];
/// counts are a uniform composition of the total into that many parts.
StructuredScene sample_scene(const GeneratorConfig& config, Rng& rng);

/// Independently draws a relation kind (or none) for every unordered pair in
/// canonical order, the earlier instance being the subject. Ring handling
/// and caps are applied afterwards; see the implementation notes.
std::vector<RelationSpec> generate_relations(const StructuredScene& scene,
                                             const GeneratorConfig& config, Rng& rng);

/// Scene plus relations, rendered, for one entry seed.
BenchmarkEntry generate_entry(const GeneratorConfig& config, std::int64_t id, std::uint64_t seed);

/// `count` entries; entry i uses derive_seed(config.seed, i). Deterministic
/// for a given config regardless of thread count.
std::vector<BenchmarkEntry> build_benchmark(const GeneratorConfig& config, std::size_t count);

struct BenchmarkStats {
  std::size_t entries = 0;
  std::map<int, std::size_t> total_instances;
  std::map<int, std::size_t> category_count;
  std::map<int, std::size_t> relation_count;
  std::map<int, std::size_t> max_same_category;
  std::map<int, std::size_t> prompt_words;
  /// Split = (total instances, category count).
  std::map<std::pair<int, int>, std::size_t> splits;
  std::size_t max_words = 0;
};

/// Throws std::invalid_argument on empty input.
BenchmarkStats benchmark_stats(std::span<const BenchmarkEntry> entries);

}  // namespace alignkit
