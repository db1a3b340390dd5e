#include <gtest/gtest.h>

#include "alignkit/guidance.hpp"

using namespace alignkit::guidance;

namespace {

ToyDenoiser toy() {
  return ToyDenoiser(2, {0.5, 0.25, -0.125, 0.5},
                     {{"king", {1.0, 0.5}}, {"woman", {0.25, -0.5}}, {"man", {0.5, 0.25}}, {"queen", {0.75, -0.25}}});
}

}  // namespace

TEST(Combine, CfgExamples) {
  EXPECT_EQ(cfg_combine(Vector{0, 0}, Vector{1, 2}, 7.0), (Vector{7, 14}));
  const Vector u{0.3, -1.7}, c{2.5, 0.1};
  // u + (c - u) rounds, so w = 1 recovers c only to within an ulp or so.
  const auto one = cfg_combine(u, c, 1.0);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(one[i], c[i], 1e-15);
  EXPECT_EQ(cfg_combine(u, c, 0.0), u);
}

TEST(Combine, NegativeAndPositiveExamples) {
  EXPECT_EQ(negative_combine(Vector{0}, Vector{3}, Vector{1}, 2.0), (Vector{4}));
  EXPECT_EQ(negative_combine(Vector{0.7}, Vector{3}, Vector{1}, 0.0), (Vector{0.7}));
  EXPECT_EQ(positive_combine(Vector{0}, Vector{1}, Vector{2}, 1.0, 1.0), (Vector{3}));
  EXPECT_EQ(rte_combine(Vector{0}, Vector{1}, Vector{5}, Vector{2}, 2.0, 0.5), (Vector{3.5}));
}

TEST(Combine, DimensionMismatchThrows) {
  EXPECT_THROW(cfg_combine(Vector{0, 0}, Vector{1}, 1.0), std::invalid_argument);
  EXPECT_THROW(rte_combine(Vector{0}, Vector{1}, Vector{1, 2}, Vector{1}, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(negative_combine(Vector{0}, Vector{1}, Vector{}, 1.0), std::invalid_argument);
  EXPECT_THROW(positive_combine(Vector{0}, Vector{1, 1}, Vector{1}, 1.0, 1.0), std::invalid_argument);
}

TEST(Spec, RequiredConditions) {
  EXPECT_THROW(check_spec({Mode::Rte, 1, 1, "king", "woman", std::nullopt}), std::invalid_argument);
  EXPECT_THROW(check_spec({Mode::Rte, 1, 1, "king", std::nullopt, "man"}), std::invalid_argument);
  EXPECT_THROW(check_spec({Mode::Negative, 1, 0, "king", std::nullopt, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(check_spec({Mode::Positive, 1, 1, "king", std::nullopt, std::nullopt}), std::invalid_argument);
  EXPECT_NO_THROW(check_spec({Mode::Cfg, 1, 0, "king", std::nullopt, std::nullopt}));
  EXPECT_EQ(parse_mode("rte"), Mode::Rte);
  EXPECT_FALSE(parse_mode("cfg++"));
  for (auto m : {Mode::Cfg, Mode::Rte, Mode::Negative, Mode::Positive}) EXPECT_EQ(parse_mode(to_string(m)), m);
}

TEST(ToyDenoiser, LinearPrediction) {
  const auto t = toy();
  const Vector x{2.0, -4.0};
  EXPECT_EQ(t.predict(x, 0, nullptr), (Vector{0.0, -2.25}));
  const std::string king = "king";
  EXPECT_EQ(t.predict(x, 0, &king), (Vector{1.0, -1.75}));
  const std::string unknown = "bishop";
  EXPECT_THROW(t.predict(x, 0, &unknown), std::out_of_range);
  EXPECT_THROW(t.predict(Vector{1.0}, 0, nullptr), std::invalid_argument);
  EXPECT_THROW(ToyDenoiser(2, {1.0}, {}), std::invalid_argument);
  EXPECT_THROW(ToyDenoiser(2, {1, 0, 0, 1}, {{"x", {1.0}}}), std::invalid_argument);
}

TEST(DenoiseLoop, SingleStepClosedForm) {
  const auto t = toy();
  const Vector x0{2.0, -4.0};
  const double eta = 0.125;
  const auto states = denoise_loop(t, {Mode::Cfg, 1.0, 0.0, "king", {}, {}}, x0, 1, eta);
  ASSERT_EQ(states.size(), 2u);
  EXPECT_EQ(states[0], x0);
  // x0 - eta (A x0 + E(king)) = (2, -4) - 0.125 (1, -1.75)
  EXPECT_EQ(states[1], (Vector{1.875, -3.78125}));
}

TEST(DenoiseLoop, RteWithEqualPairMatchesCfg) {
  const auto t = toy();
  const Vector x0{1.0, 1.0};
  const auto cfg = denoise_loop(t, {Mode::Cfg, 3.0, 0.0, "king", {}, {}}, x0, 25, 0.1);
  const auto rte = denoise_loop(t, {Mode::Rte, 3.0, 1.5, "king", "woman", "woman"}, x0, 25, 0.1);
  EXPECT_EQ(cfg, rte);
}

TEST(DenoiseLoop, QueenIdentityAtEveryState) {
  const auto t = toy();
  for (const Vector& x : {Vector{0.0, 0.0}, Vector{3.5, -2.0}, Vector{-1.25, 8.0}}) {
    const auto rte = guided_prediction(t, {Mode::Rte, 1.0, 1.0, "king", "woman", "man"}, x, 0);
    const auto cfg = guided_prediction(t, {Mode::Cfg, 1.0, 0.0, "queen", {}, {}}, x, 0);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(rte[i], cfg[i], 1e-12);
  }
}

TEST(DenoiseLoop, EmptyTokenIsUnconditional) {
  const auto t = toy();
  const Vector x0{1.0, -1.0};
  const auto neg = denoise_loop(t, {Mode::Negative, 4.0, 0.0, "king", {}, ""}, x0, 10, 0.05);
  const auto cfg = denoise_loop(t, {Mode::Cfg, 4.0, 0.0, "king", {}, {}}, x0, 10, 0.05);
  EXPECT_EQ(neg, cfg);
}

TEST(DenoiseLoop, Errors) {
  const auto t = toy();
  EXPECT_THROW(denoise_loop(t, {}, Vector{1.0, 1.0}, 0, 0.1), std::invalid_argument);
  EXPECT_THROW(denoise_loop(t, {Mode::Cfg, 1, 0, "king", {}, {}}, Vector{1.0}, 3, 0.1), std::invalid_argument);
  const ToyDenoiser blowup(1, {1e300}, {{"k", {0.0}}});
  EXPECT_THROW(denoise_loop(blowup, {Mode::Cfg, 1, 0, "k", {}, {}}, Vector{1e10}, 5, -1e10), std::runtime_error);
}
