#include <gtest/gtest.h>

#include <random>

#include "alignkit/guidance.hpp"

using namespace alignkit::guidance;

namespace {

Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-4.0, 4.0);
  Vector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

ToyDenoiser random_model(std::mt19937_64& rng, std::size_t n) {
  std::map<std::string, Vector> e;
  for (const char* name : {"a", "b", "c", "d"}) e[name] = random_vector(rng, n);
  return ToyDenoiser(n, random_vector(rng, n * n), e);
}

}  // namespace

TEST(GuidanceProperties, ExtendedRulesReduceToCfgExactly) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> weight(0.0, 12.0);
  for (int i = 0; i < 5000; ++i) {
    const auto u = random_vector(rng, 6), c = random_vector(rng, 6), c1 = random_vector(rng, 6),
               c2 = random_vector(rng, 6);
    const double w = weight(rng), wp = weight(rng);
    const auto cfg = cfg_combine(u, c, w);
    ASSERT_EQ(rte_combine(u, c, c1, c2, w, 0.0), cfg);
    ASSERT_EQ(rte_combine(u, c, c1, c1, w, wp), cfg);
    ASSERT_EQ(negative_combine(u, c, u, w), cfg);
    ASSERT_EQ(positive_combine(u, c, c1, w, 0.0), cfg);
    ASSERT_EQ(positive_combine(u, c, u, w, wp), cfg);
    ASSERT_EQ(cfg_combine(u, c, 0.0), u);
    const auto one = cfg_combine(u, c, 1.0);
    for (std::size_t k = 0; k < c.size(); ++k) ASSERT_NEAR(one[k], c[k], 1e-14);
  }
}

TEST(GuidanceProperties, CombinationsAreAffineInTheirInputs) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 2000; ++i) {
    const auto u = random_vector(rng, 5), c = random_vector(rng, 5), c1 = random_vector(rng, 5),
               c2 = random_vector(rng, 5);
    const auto r = rte_combine(u, c, c1, c2, 3.0, 1.5);
    for (std::size_t k = 0; k < 5; ++k) {
      const double expected = (1 - 3.0) * u[k] + 3.0 * c[k] + 1.5 * c1[k] - 1.5 * c2[k];
      ASSERT_NEAR(r[k], expected, 1e-12);
    }
  }
}

TEST(GuidanceProperties, ToyPredictionSeparatesStateAndCondition) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 500; ++i) {
    const auto model = random_model(rng, 4);
    const auto x = random_vector(rng, 4);
    const GuidanceSpec spec{Mode::Rte, 5.0, 2.0, "a", "b", "c"};
    const auto z = guided_prediction(model, spec, x, 0);
    const auto ax = model.predict(x, 0, nullptr);
    for (std::size_t k = 0; k < 4; ++k) {
      // A x carries weight 1 - w + w + w' - w' = 1.
      const double expected = ax[k] + 5.0 * model.embedding("a")[k] +
                              2.0 * (model.embedding("b")[k] - model.embedding("c")[k]);
      ASSERT_NEAR(z[k], expected, 1e-9);
    }
  }
}

TEST(GuidanceProperties, EmptyConditionIsUnconditional) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 500; ++i) {
    const auto model = random_model(rng, 3);
    const auto x = random_vector(rng, 3);
    const auto plain = guided_prediction(model, {Mode::Cfg, 4.0, 0.0, "a", {}, {}}, x, 0);
    ASSERT_EQ(guided_prediction(model, {Mode::Negative, 4.0, 0.0, "a", {}, std::string()}, x, 0), plain);
    ASSERT_EQ(guided_prediction(model, {Mode::Cfg, 4.0, 0.0, "", {}, {}}, x, 0), model.predict(x, 0, nullptr));
  }
}

TEST(GuidanceProperties, LoopReturnsEveryState) {
  std::mt19937_64 rng(35);
  const auto model = random_model(rng, 3);
  const auto x0 = random_vector(rng, 3);
  const GuidanceSpec spec{Mode::Cfg, 2.0, 0.0, "a", {}, {}};
  const auto states = denoise_loop(model, spec, x0, 6, 0.01);
  ASSERT_EQ(states.size(), 7u);
  EXPECT_EQ(states.front(), x0);
  for (std::size_t t = 1; t < states.size(); ++t) {
    const auto z = guided_prediction(model, spec, states[t - 1], static_cast<int>(t - 1));
    for (std::size_t k = 0; k < 3; ++k) ASSERT_EQ(states[t][k], states[t - 1][k] - 0.01 * z[k]);
  }
}
