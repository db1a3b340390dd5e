#include "alignkit/align_score.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace alignkit {

namespace {

struct ResolvedRelation {
  std::size_t subject;
  std::size_t object;
  RelationKind kind;
};

std::vector<ResolvedRelation> resolve(const StructuredScene& scene) {
  std::vector<ResolvedRelation> out;
  for (const auto& r : scene.relations()) {
    auto s = scene.index_of(r.subject);
    auto o = scene.index_of(r.object);
    if (!s || !o) throw std::invalid_argument("relation references an unknown instance");
    out.push_back({*s, *o, r.kind});
  }
  return out;
}

std::map<std::string, int, std::less<>> blank_budget(const StructuredScene& scene,
                                                     const DetectionSet& dets) {
  std::map<std::string, int, std::less<>> budget;
  for (const auto& c : scene.categories()) {
    budget[c] = std::max(0, scene.count(c) - dets.count(c));
  }
  return budget;
}

// Depth-first search over instance assignments in canonical order. Counts are
// integers so ties and improvements are exact.
class MatchSearch {
 public:
  MatchSearch(const StructuredScene& scene, const DetectionSet& dets, const RelationMap& rel)
      : scene_(scene), dets_(dets), rel_(rel), relations_(resolve(scene)) {
    const auto n = scene.total_number();
    candidates_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < dets.instances.size(); ++j) {
        if (dets.instances[j].category == scene.instances()[i].category) {
          candidates_[i].push_back(j);
        }
      }
    }
    // Checks still open after instance i is assigned: colors of later
    // instances plus relations whose later endpoint comes after i.
    closing_.resize(n);
    for (std::size_t r = 0; r < relations_.size(); ++r) {
      closing_[std::max(relations_[r].subject, relations_[r].object)].push_back(r);
    }
    open_after_.assign(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
      open_after_[i] = open_after_[i + 1] + (scene.instances()[i].color ? 1 : 0) + closing_[i].size();
    }
    budget_ = blank_budget(scene, dets);
    used_.assign(dets.instances.size(), false);
    current_.targets.assign(n, std::nullopt);
  }

  BestMatch run() {
    best_.normalizer = scene_.check_count();
    best_correct_ = -1;
    descend(0, 0);
    best_.correct = static_cast<std::size_t>(best_correct_);
    best_.acc = best_.normalizer == 0
                    ? 1.0
                    : static_cast<double>(best_.correct) / static_cast<double>(best_.normalizer);
    return best_;
  }

 private:
  void descend(std::size_t i, std::size_t correct) {
    if (best_correct_ == static_cast<long>(best_.normalizer)) return;
    if (i == current_.targets.size()) {
      if (static_cast<long>(correct) > best_correct_) {
        best_correct_ = static_cast<long>(correct);
        best_.matching = current_;
      }
      return;
    }
    if (static_cast<long>(correct + open_after_[i]) <= best_correct_) return;

    const auto& inst = scene_.instances()[i];
    for (auto j : candidates_[i]) {
      if (used_[j]) continue;
      used_[j] = true;
      current_.targets[i] = j;
      descend(i + 1, correct + gained(i));
      used_[j] = false;
    }
    auto& blanks = budget_.find(inst.category)->second;
    if (blanks > 0) {
      --blanks;
      current_.targets[i] = std::nullopt;
      descend(i + 1, correct);  // a blank satisfies nothing
      ++blanks;
    }
    current_.targets[i] = std::nullopt;
  }

  // Checks settled by assigning instance i (already stored in current_).
  std::size_t gained(std::size_t i) const {
    std::size_t g = 0;
    const auto& inst = scene_.instances()[i];
    const auto t = *current_.targets[i];
    if (inst.color && dets_.instances[t].color == *inst.color) ++g;
    for (auto r : closing_[i]) {
      const auto& rel = relations_[r];
      const auto& s = current_.targets[rel.subject];
      const auto& o = current_.targets[rel.object];
      if (s && o && rel_.holds(*s, *o, rel.kind)) ++g;
    }
    return g;
  }

  const StructuredScene& scene_;
  const DetectionSet& dets_;
  const RelationMap& rel_;
  std::vector<ResolvedRelation> relations_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::vector<std::size_t>> closing_;
  std::vector<std::size_t> open_after_;
  std::map<std::string, int, std::less<>> budget_;
  std::vector<bool> used_;
  Matching current_;
  BestMatch best_;
  long best_correct_ = -1;
};

}  // namespace

std::string check_matching(const Matching& f, const StructuredScene& scene,
                           const DetectionSet& dets) {
  if (f.targets.size() != scene.total_number()) return "matching size differs from instance count";
  std::vector<bool> used(dets.instances.size(), false);
  auto budget = blank_budget(scene, dets);
  for (std::size_t i = 0; i < f.targets.size(); ++i) {
    const auto& inst = scene.instances()[i];
    const auto& t = f.targets[i];
    if (!t) {
      if (--budget[inst.category] < 0) return "too many blanks for '" + inst.category + "'";
      continue;
    }
    if (*t >= dets.instances.size()) return "target index out of range";
    if (dets.instances[*t].category != inst.category) return "target category mismatch";
    if (used[*t]) return "matching is not injective";
    used[*t] = true;
  }
  return {};
}

int compute_bias(const StructuredScene& scene, const DetectionSet& dets) {
  int bias = 0;
  for (const auto& c : scene.categories()) bias += std::abs(scene.count(c) - dets.count(c));
  return bias;
}

double align_score(double acc, double bias) { return 0.5 * (acc + 1.0 / (bias + 1.0)); }

MatchScore score_matching(const StructuredScene& scene, const DetectionSet& dets,
                          const RelationMap& relations, const Matching& f) {
  if (auto problem = check_matching(f, scene, dets); !problem.empty()) {
    throw std::invalid_argument("invalid matching: " + problem);
  }
  if (relations.size() != dets.instances.size()) {
    throw std::invalid_argument("relation map does not match the detection set");
  }
  MatchScore out;
  for (std::size_t i = 0; i < scene.total_number(); ++i) {
    const auto& inst = scene.instances()[i];
    if (!inst.color) continue;
    ColorVerdict v{inst.ref(), *inst.color, f.targets[i], std::nullopt, false};
    if (v.target) {
      v.detected = dets.instances[*v.target].color;
      v.correct = *v.detected == v.required;
    }
    out.correct += v.correct ? 1 : 0;
    out.colors.push_back(std::move(v));
  }
  for (const auto& r : resolve(scene)) {
    RelationVerdict v{{scene.instances()[r.subject].ref(), scene.instances()[r.object].ref(), r.kind},
                      std::nullopt, false};
    const auto& s = f.targets[r.subject];
    const auto& o = f.targets[r.object];
    if (s && o) {
      v.detected = relations.of_subject(*s, *o);
      v.correct = v.detected->contains(r.kind);
    }
    out.correct += v.correct ? 1 : 0;
    out.relations.push_back(std::move(v));
  }
  out.normalizer = scene.check_count();
  out.acc = out.normalizer == 0
                ? 1.0
                : static_cast<double>(out.correct) / static_cast<double>(out.normalizer);
  return out;
}

BestMatch best_matching(const StructuredScene& scene, const DetectionSet& dets,
                        const RelationMap& relations) {
  if (relations.size() != dets.instances.size()) {
    throw std::invalid_argument("relation map does not match the detection set");
  }
  return MatchSearch(scene, dets, relations).run();
}

BestMatch best_matching(const StructuredScene& scene, const DetectionSet& dets,
                        const PostProcessConfig& cfg) {
  const auto relations = extract_relations(dets, cfg);
  return best_matching(scene, dets, relations);
}

ScoreReport evaluate(const StructuredScene& scene, const DetectionSet& dets,
                     const PostProcessConfig& cfg) {
  const auto relations = extract_relations(dets, cfg);
  auto best = best_matching(scene, dets, relations);
  auto scored = score_matching(scene, dets, relations, best.matching);

  ScoreReport report;
  report.bias = compute_bias(scene, dets);
  report.acc = scored.acc;
  report.align_score = align_score(report.acc, report.bias);
  report.normalizer = scored.normalizer;
  report.correct = scored.correct;
  report.matching = std::move(best.matching);
  for (const auto& c : scene.categories()) {
    report.counts.push_back({c, scene.count(c), dets.count(c)});
  }
  report.colors = std::move(scored.colors);
  report.relations = std::move(scored.relations);
  return report;
}

AggregateScore aggregate(std::span<const ScoreReport> reports) {
  if (reports.empty()) throw std::invalid_argument("aggregate: no reports");
  AggregateScore out;
  out.count = reports.size();
  for (const auto& r : reports) {
    out.mean_acc += r.acc;
    out.mean_bias += r.bias;
    out.mean_align_score += r.align_score;
  }
  const auto n = static_cast<double>(reports.size());
  out.mean_acc /= n;
  out.mean_bias /= n;
  out.mean_align_score /= n;
  out.align_score = align_score(out.mean_acc, out.mean_bias);
  return out;
}

}  // namespace alignkit
