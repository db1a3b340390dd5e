#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "alignkit/align_score.hpp"
#include "brute_matcher.hpp"
#include "random_cases.hpp"

using namespace alignkit;

namespace {

int direct_bias(const StructuredScene& scene, const DetectionSet& dets) {
  int bias = 0;
  for (const auto& c : scene.categories()) {
    int detected = 0;
    for (const auto& d : dets.instances) detected += d.category == c;
    bias += std::abs(scene.count(c) - detected);
  }
  return bias;
}

}  // namespace

TEST(MatcherProperties, BestMatchingAgreesWithBruteForce) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 3000; ++i) {
    const auto scene = testing_support::random_scene(rng);
    const auto dets = testing_support::random_detections(rng, scene);
    const auto best = best_matching(scene, dets);
    const auto brute = oracle::brute_force_best(scene, dets, 0.1);
    ASSERT_EQ(best.correct, brute.best_correct) << "case " << i;
    ASSERT_EQ(best.normalizer, brute.normalizer);
    ASSERT_EQ(best.normalizer, scene.check_count());
    ASSERT_EQ(check_matching(best.matching, scene, dets), "");
    ASSERT_EQ(oracle::score_assignment(scene, dets, best.matching.targets, 0.1), best.correct);
  }
}

TEST(MatcherProperties, EvaluateIsConsistent) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 3000; ++i) {
    const auto scene = testing_support::random_scene(rng);
    const auto dets = testing_support::random_detections(rng, scene);
    const auto r = evaluate(scene, dets);
    ASSERT_EQ(r.bias, direct_bias(scene, dets));
    ASSERT_EQ(r.bias, compute_bias(scene, dets));
    ASSERT_GE(r.acc, 0.0);
    ASSERT_LE(r.acc, 1.0);
    ASSERT_GT(r.align_score, 0.0);
    ASSERT_LE(r.align_score, 1.0);
    ASSERT_EQ(r.align_score, align_score(r.acc, r.bias));
    ASSERT_EQ(r.colors.size() + r.relations.size(), r.normalizer);
    const auto correct = std::count_if(r.colors.begin(), r.colors.end(), [](auto& v) { return v.correct; }) +
                         std::count_if(r.relations.begin(), r.relations.end(), [](auto& v) { return v.correct; });
    ASSERT_EQ(static_cast<std::size_t>(correct), r.correct);
    ASSERT_EQ(r.perfect(), r.bias == 0 && r.acc == 1.0);
  }
}

TEST(MatcherProperties, AccIgnoresDetectionOrderAndForeignCategories) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    const auto scene = testing_support::random_scene(rng);
    auto dets = testing_support::random_detections(rng, scene);
    const auto base = evaluate(scene, dets);
    std::shuffle(dets.instances.begin(), dets.instances.end(), rng);
    dets.instances.push_back({"toaster", 0.99, {50, 50, 10, 10}, {}, Color::Blue});
    const auto moved = evaluate(scene, dets);
    ASSERT_EQ(moved.acc, base.acc);
    ASSERT_EQ(moved.bias, base.bias);
  }
}

TEST(MatcherProperties, AlignScoreIsMonotone) {
  for (int bias = 0; bias < 20; ++bias) {
    for (int k = 0; k < 10; ++k) {
      const double acc = k / 10.0;
      EXPECT_LT(align_score(acc, bias), align_score(acc + 0.1, bias));
      EXPECT_GT(align_score(acc, bias), align_score(acc, bias + 1));
    }
  }
  EXPECT_EQ(align_score(1.0, 0.0), 1.0);
}
