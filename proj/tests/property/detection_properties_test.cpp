#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "alignkit/detection.hpp"
#include "brute_matcher.hpp"
#include "random_cases.hpp"

using namespace alignkit;

namespace {

BoundingBox random_box(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pos(0, 40), side(1, 16);
  return {2.5 * pos(rng), 2.5 * pos(rng), 2.5 * side(rng), 2.5 * side(rng)};
}

}  // namespace

TEST(DetectionProperties, PostProcessIsIdempotent) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5000; ++i) {
    const auto raw = testing_support::random_raw(rng);
    const auto once = post_process(raw);
    const auto again = to_raw(once);
    ASSERT_EQ(post_process(again), once);
  }
}

TEST(DetectionProperties, PostProcessOutputInvariants) {
  std::mt19937_64 rng(2);
  const PostProcessConfig cfg;
  for (int i = 0; i < 5000; ++i) {
    const auto raw = testing_support::random_raw(rng);
    const auto dets = post_process(raw, cfg);
    ASSERT_LE(dets.total(), raw.size());
    for (std::size_t a = 0; a < dets.total(); ++a) {
      const auto& d = dets.instances[a];
      ASSERT_GE(d.confidence, cfg.confidence_threshold);
      ASSERT_GE(std::min(d.box.w, d.box.h), cfg.min_side);
      ASSERT_EQ(static_cast<std::size_t>(d.color), oracle::argmax_color(d.color_scores));
      if (a > 0) ASSERT_GE(dets.instances[a - 1].confidence, d.confidence);
      for (std::size_t b = a + 1; b < dets.total(); ++b) {
        if (dets.instances[b].category == d.category) ASSERT_LE(iou(d.box, dets.instances[b].box), 0.9);
      }
    }
  }
}

TEST(DetectionProperties, DedupNeverRemovesTheMostConfidentBox) {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int i = 0; i < 5000; ++i) {
    auto raw = testing_support::random_raw(rng);
    if (raw.empty()) continue;
    const auto top = std::max_element(raw.begin(), raw.end(),
                                      [](const auto& a, const auto& b) { return a.confidence < b.confidence; });
    if (std::count_if(raw.begin(), raw.end(), [&](const auto& r) { return r.confidence == top->confidence; }) > 1) {
      continue;
    }
    if (top->confidence < 0.3 || std::min(top->box.w, top->box.h) < 5.0) continue;
    const auto dets = post_process(raw);
    ASSERT_FALSE(dets.instances.empty());
    ASSERT_EQ(dets.instances.front().box, top->box);
    ++checked;
  }
  EXPECT_GT(checked, 1000);
}

TEST(DetectionProperties, IouIsSymmetricAndBounded) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_box(rng), b = random_box(rng);
    const double v = iou(a, b);
    ASSERT_EQ(v, iou(b, a));
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
    ASSERT_DOUBLE_EQ(iou(a, a), 1.0);
  }
}

TEST(DetectionProperties, RelationsAreAntisymmetric) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20000; ++i) {
    const auto a = random_box(rng), b = random_box(rng);
    const auto ab = relations_between(a, b, 0.1), ba = relations_between(b, a, 0.1);
    for (auto k : kRelationKinds) ASSERT_EQ(ab.contains(k), ba.contains(inverse(k)));
    ASSERT_FALSE(ab.contains(RelationKind::Left) && ab.contains(RelationKind::Right));
    ASSERT_FALSE(ab.contains(RelationKind::Above) && ab.contains(RelationKind::Below));
    ASSERT_TRUE(relations_between(a, a, 0.1).empty());
  }
}

TEST(DetectionProperties, RelationsAgreeWithOracleGeometry) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20000; ++i) {
    const auto s = random_box(rng), o = random_box(rng);
    DetectionSet dets;
    dets.instances = {{"cat", 0.9, s, {}, Color::Green}, {"cat", 0.8, o, {}, Color::Green}};
    const auto map = extract_relations(dets);
    for (auto k : kRelationKinds) ASSERT_EQ(map.holds(0, 1, k), oracle::relation_holds(s, o, k, 0.1));
  }
}

TEST(DetectionProperties, RelationsAreScaleAndTranslationInvariant) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const auto a = random_box(rng), b = random_box(rng);
    // Powers of two and integer shifts keep every comparison exact.
    for (double s : {0.25, 2.0, 8.0}) {
      const BoundingBox as{a.cx * s + 64, a.cy * s - 32, a.w * s, a.h * s};
      const BoundingBox bs{b.cx * s + 64, b.cy * s - 32, b.w * s, b.h * s};
      ASSERT_EQ(relations_between(as, bs, 0.1), relations_between(a, b, 0.1));
    }
  }
}

TEST(DetectionProperties, ColorIsFirstArgmax) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> score(0, 2);
  for (int i = 0; i < 10000; ++i) {
    ColorScores s{};
    for (auto& v : s) v = score(rng);
    ASSERT_EQ(static_cast<std::size_t>(classify_color(s)), oracle::argmax_color(s));
  }
}
