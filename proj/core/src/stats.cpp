#include "alignkit/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace alignkit {

SceneSummary summarize(const StructuredScene& scene) {
  return {static_cast<int>(scene.total_number()), static_cast<int>(scene.category_count()),
          static_cast<int>(scene.relations().size()), scene.max_same_category()};
}

std::string_view to_string(GroupKey k) {
  switch (k) {
    case GroupKey::TotalInstances: return "total";
    case GroupKey::CategoryCount: return "categories";
    case GroupKey::RelationCount: return "relations";
    case GroupKey::MaxSameCategory: return "max-same";
    case GroupKey::RelationKind: return "relation-kind";
  }
  return "?";
}

std::optional<GroupKey> parse_group_key(std::string_view s) {
  for (auto k : {GroupKey::TotalInstances, GroupKey::CategoryCount, GroupKey::RelationCount,
                 GroupKey::MaxSameCategory, GroupKey::RelationKind}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

GroupedMetrics group_scores(std::span<const ScoredPrompt> prompts, GroupKey key,
                            const GroupFilter& filter) {
  GroupedMetrics out;
  out.key = key;
  auto add = [&](int value, const ScoreReport& r) {
    auto& g = out.groups[value];
    ++g.size;
    g.mean_acc += r.acc;
    g.mean_bias += r.bias;
    g.mean_align_score += r.align_score;
  };
  for (const auto& p : prompts) {
    if (filter.total_instances && p.summary.total_instances != *filter.total_instances) continue;
    switch (key) {
      case GroupKey::TotalInstances: add(p.summary.total_instances, p.report); break;
      case GroupKey::CategoryCount: add(p.summary.category_count, p.report); break;
      case GroupKey::RelationCount: add(p.summary.relation_count, p.report); break;
      case GroupKey::MaxSameCategory: add(p.summary.max_same_category, p.report); break;
      case GroupKey::RelationKind: {
        std::array<bool, 4> seen{};
        for (const auto& v : p.report.relations) seen[static_cast<std::size_t>(v.relation.kind)] = true;
        for (std::size_t k = 0; k < seen.size(); ++k) {
          if (seen[k]) add(static_cast<int>(k), p.report);
        }
        break;
      }
    }
  }
  for (auto& [value, g] : out.groups) {
    const auto n = static_cast<double>(g.size);
    g.mean_acc /= n;
    g.mean_bias /= n;
    g.mean_align_score /= n;
  }
  if (out.groups.empty()) out.notes.push_back("no prompts matched; all groups omitted");
  return out;
}

std::map<RelationKind, DirectionAccuracy> relation_direction_accuracy(
    std::span<const ScoredPrompt> prompts) {
  std::map<RelationKind, DirectionAccuracy> out;
  for (const auto& p : prompts) {
    for (const auto& v : p.report.relations) {
      auto& d = out[v.relation.kind];
      ++d.total;
      if (v.correct) ++d.correct;
    }
  }
  return out;
}

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("series lengths differ");
  if (x.size() < 2) throw std::invalid_argument("need at least two observations");
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedStatistic("correlation of a constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  // O(n^2) pair count; rating studies are a few hundred items.
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double n1 = static_cast<double>(concordant + discordant + ties_x);
  const double n2 = static_cast<double>(concordant + discordant + ties_y);
  if (n1 == 0.0 || n2 == 0.0) throw UndefinedStatistic("kendall tau of a constant series");
  return std::clamp(static_cast<double>(concordant - discordant) / std::sqrt(n1 * n2), -1.0, 1.0);
}

double krippendorff_alpha(const std::vector<std::vector<std::optional<double>>>& ratings) {
  if (ratings.size() < 2) throw std::invalid_argument("krippendorff alpha: need >= 2 annotators");
  const auto items = ratings.front().size();
  for (const auto& row : ratings) {
    if (row.size() != items) throw std::invalid_argument("krippendorff alpha: ragged matrix");
  }
  if (items < 2) throw std::invalid_argument("krippendorff alpha: need >= 2 items");

  // Pairable values: those in items rated by at least two annotators.
  std::vector<std::vector<double>> units;
  for (std::size_t u = 0; u < items; ++u) {
    std::vector<double> values;
    for (const auto& row : ratings) {
      if (row[u]) values.push_back(*row[u]);
    }
    if (values.size() >= 2) units.push_back(std::move(values));
  }
  std::vector<double> pooled;
  for (const auto& u : units) pooled.insert(pooled.end(), u.begin(), u.end());
  const auto n = static_cast<double>(pooled.size());
  if (pooled.size() < 2) throw std::invalid_argument("krippendorff alpha: fewer than two pairable values");

  // Observed disagreement: within-unit ordered pairs weighted by 1 / (m_u - 1).
  double observed = 0.0;
  for (const auto& u : units) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (i != j) s += (u[i] - u[j]) * (u[i] - u[j]);
      }
    }
    observed += s / static_cast<double>(u.size() - 1);
  }
  observed /= n;

  // Expected disagreement over all ordered pairs of pooled values.
  double expected = 0.0;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    for (std::size_t j = 0; j < pooled.size(); ++j) {
      if (i != j) expected += (pooled[i] - pooled[j]) * (pooled[i] - pooled[j]);
    }
  }
  expected /= n * (n - 1.0);
  if (expected == 0.0) throw UndefinedStatistic("krippendorff alpha: no variation in values");
  return 1.0 - observed / expected;
}

MeanSd stability(std::span<const double> runs) {
  if (runs.size() < 2) throw std::invalid_argument("stability: need at least two runs");
  const auto n = static_cast<double>(runs.size());
  const double mean = std::accumulate(runs.begin(), runs.end(), 0.0) / n;
  double ss = 0.0;
  for (double r : runs) ss += (r - mean) * (r - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

StabilityReport stability_report(std::span<const AggregateScore> runs) {
  if (runs.size() < 2) throw std::invalid_argument("stability: need at least two runs");
  std::vector<double> acc, bias, align;
  for (const auto& r : runs) {
    acc.push_back(r.mean_acc);
    bias.push_back(r.mean_bias);
    align.push_back(r.align_score);
  }
  return {runs.size(), stability(acc), stability(bias), stability(align)};
}

}  // namespace alignkit
