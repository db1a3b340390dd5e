#include "alignkit/generator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <thread>

#include "alignkit/acyclic.hpp"
#include "alignkit/prompt.hpp"

namespace alignkit {

namespace {

// Partial Fisher-Yates: the first k elements of `items` become a uniform
// ordered sample without replacement.
template <typename T>
void partial_shuffle(std::vector<T>& items, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k && i + 1 < items.size(); ++i) {
    auto j = i + rng.uniform_index(items.size() - i);
    std::swap(items[i], items[j]);
  }
}

std::vector<IndexedRelation> draw_relation_set(std::size_t n, double p, Rng& rng) {
  std::vector<IndexedRelation> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double u = rng.uniform01();
      const auto slot = static_cast<std::size_t>(u / p);
      if (p > 0.0 && u < 4.0 * p && slot < kRelationKinds.size()) {
        out.push_back({i, j, kRelationKinds[slot]});
      }
    }
  }
  return out;
}

bool acyclic_both(std::size_t n, const std::vector<IndexedRelation>& rels) {
  return check_acyclic(n, rels, Axis::Horizontal) == RingCheck::NoRing &&
         check_acyclic(n, rels, Axis::Vertical) == RingCheck::NoRing;
}

// Does relation `idx` lie on a directed ring of its axis?
bool on_ring(std::size_t n, const std::vector<IndexedRelation>& rels, std::size_t idx) {
  const auto axis = axis_of(rels[idx].kind);
  auto oriented = [](const IndexedRelation& r) {
    const bool forward = r.kind == RelationKind::Left || r.kind == RelationKind::Above;
    return forward ? std::pair{r.subject, r.object} : std::pair{r.object, r.subject};
  };
  const auto [from, to] = oriented(rels[idx]);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{to};
  seen[to] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (v == from) return true;
    for (const auto& r : rels) {
      if (axis_of(r.kind) != axis) continue;
      auto [a, b] = oriented(r);
      if (a == v && !seen[b]) {
        seen[b] = true;
        stack.push_back(b);
      }
    }
  }
  return false;
}

std::vector<RelationSpec> to_specs(const StructuredScene& scene,
                                   const std::vector<IndexedRelation>& rels) {
  std::vector<RelationSpec> out;
  out.reserve(rels.size());
  for (const auto& r : rels) {
    out.push_back({scene.instances()[r.subject].ref(), scene.instances()[r.object].ref(), r.kind});
  }
  return out;
}

}  // namespace

void check_config(const GeneratorConfig& config) {
  const auto& table = config.compatibility();
  if (table.empty()) throw ConfigError("compatibility table is empty");
  if (!(config.relation_probability >= 0.0 && config.relation_probability <= 0.25)) {
    throw ConfigError("relation probability must lie in [0, 0.25] (four kinds share 4p)");
  }
  if (config.max_instances < 1 || config.max_relations < 1 || config.max_categories < 1) {
    throw ConfigError("maxima must be >= 1");
  }
  if (config.max_instances > 10) throw ConfigError("max instances above 10 cannot be rendered");
  if (config.max_categories > table.size()) {
    throw ConfigError("max categories (" + std::to_string(config.max_categories) +
                      ") exceeds vocabulary size (" + std::to_string(table.size()) + ")");
  }
  if (config.max_prompt_words < 1) throw ConfigError("max prompt words must be >= 1");
  if (config.cycle_resample_attempts < 1) throw ConfigError("resample attempts must be >= 1");
}

StructuredScene sample_scene(const GeneratorConfig& config, Rng& rng) {
  check_config(config);
  const auto& table = config.compatibility();

  const int total = rng.uniform_int(1, static_cast<int>(config.max_instances));
  const int max_k = static_cast<int>(
      std::min({static_cast<std::size_t>(total), config.max_categories, table.size()}));
  const int k = rng.uniform_int(1, max_k);

  std::vector<std::size_t> vocab(table.size());
  std::iota(vocab.begin(), vocab.end(), 0);
  partial_shuffle(vocab, static_cast<std::size_t>(k), rng);

  // Uniform composition of `total` into k positive parts via k-1 cut points.
  std::vector<int> cuts(static_cast<std::size_t>(total - 1));
  std::iota(cuts.begin(), cuts.end(), 1);
  partial_shuffle(cuts, static_cast<std::size_t>(k - 1), rng);
  cuts.resize(static_cast<std::size_t>(k - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(total);

  std::vector<InstanceSpec> instances;
  int previous = 0;
  for (int c = 0; c < k; ++c) {
    const auto& name = table.categories()[vocab[static_cast<std::size_t>(c)]];
    const auto& colors = table.colors(name);
    const int n_k = cuts[static_cast<std::size_t>(c)] - previous;
    previous = cuts[static_cast<std::size_t>(c)];
    for (int ordinal = 1; ordinal <= n_k; ++ordinal) {
      instances.push_back({name, ordinal, colors[rng.uniform_index(colors.size())]});
    }
  }
  return StructuredScene(std::move(instances), {});
}

// Ring handling: a relation set with a ring on either axis is redrawn, up to
// `cycle_resample_attempts` draws. If every draw rings, the last draw is kept
// and its latest-sampled relation lying on a ring is dropped until both axes
// are clear. A set larger than max_relations then loses uniformly chosen
// relations. Dropping relations never creates a ring.
std::vector<RelationSpec> generate_relations(const StructuredScene& scene,
                                             const GeneratorConfig& config, Rng& rng) {
  check_config(config);
  const auto n = scene.total_number();
  if (config.relation_probability == 0.0 || n < 2) return {};

  std::vector<IndexedRelation> rels;
  for (int attempt = 0; attempt < config.cycle_resample_attempts; ++attempt) {
    rels = draw_relation_set(n, config.relation_probability, rng);
    if (acyclic_both(n, rels)) break;
  }
  while (!acyclic_both(n, rels)) {
    for (std::size_t i = rels.size(); i-- > 0;) {
      if (on_ring(n, rels, i)) {
        rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }
    }
  }

  if (rels.size() > config.max_relations) {
    std::vector<std::size_t> order(rels.size());
    std::iota(order.begin(), order.end(), 0);
    const auto excess = rels.size() - config.max_relations;
    partial_shuffle(order, excess, rng);
    std::vector<bool> drop(rels.size(), false);
    for (std::size_t i = 0; i < excess; ++i) drop[order[i]] = true;
    std::vector<IndexedRelation> kept;
    for (std::size_t i = 0; i < rels.size(); ++i) {
      if (!drop[i]) kept.push_back(rels[i]);
    }
    rels = std::move(kept);
  }
  return to_specs(scene, rels);
}

BenchmarkEntry generate_entry(const GeneratorConfig& config, std::int64_t id,
                              std::uint64_t seed) {
  Rng rng(seed);
  auto base = sample_scene(config, rng);
  auto relations = generate_relations(base, config, rng);

  StructuredScene scene(base.instances(), relations);
  auto prompt = render_prompt(scene);
  // Prompt-length cap: drop the last relation until the prompt fits.
  while (word_count(prompt) > config.max_prompt_words && !relations.empty()) {
    relations.pop_back();
    scene = StructuredScene(base.instances(), relations);
    prompt = render_prompt(scene);
  }
  if (word_count(prompt) > config.max_prompt_words) {
    throw ConfigError("max prompt words too small for a relation-free scene");
  }
  return {id, seed, std::move(scene), std::move(prompt)};
}

std::vector<BenchmarkEntry> build_benchmark(const GeneratorConfig& config, std::size_t count) {
  if (count < 1) throw ConfigError("benchmark size must be >= 1");
  check_config(config);

  std::vector<BenchmarkEntry> entries(count);
  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(count, 64)));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned worker) {
    try {
      for (auto i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        entries[i] =
            generate_entry(config, static_cast<std::int64_t>(i), derive_seed(config.seed, i));
      }
    } catch (...) {
      errors[worker] = std::current_exception();
      next.store(count);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return entries;
}

BenchmarkStats benchmark_stats(std::span<const BenchmarkEntry> entries) {
  if (entries.empty()) throw std::invalid_argument("benchmark_stats: no entries");
  BenchmarkStats stats;
  stats.entries = entries.size();
  for (const auto& e : entries) {
    const auto& s = e.scene;
    const int total = static_cast<int>(s.total_number());
    const int cats = static_cast<int>(s.category_count());
    const auto words = word_count(e.prompt);
    ++stats.total_instances[total];
    ++stats.category_count[cats];
    ++stats.relation_count[static_cast<int>(s.relations().size())];
    ++stats.max_same_category[s.max_same_category()];
    ++stats.prompt_words[static_cast<int>(words)];
    ++stats.splits[{total, cats}];
    stats.max_words = std::max(stats.max_words, words);
  }
  return stats;
}

}  // namespace alignkit
