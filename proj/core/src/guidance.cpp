#include "alignkit/guidance.hpp"

#include <cmath>
#include <stdexcept>

namespace alignkit::guidance {

namespace {

void require_same(std::size_t n, std::span<const double> v, const char* name) {
  if (v.size() != n) {
    throw std::invalid_argument(std::string("dimension mismatch for ") + name + ": " +
                                std::to_string(v.size()) + " vs " + std::to_string(n));
  }
}

// The empty token is the unconditional input.
const std::string* condition_ptr(const std::string& c) { return c.empty() ? nullptr : &c; }

}  // namespace

Vector cfg_combine(std::span<const double> z_uncond, std::span<const double> z_cond, double w) {
  require_same(z_uncond.size(), z_cond, "z_cond");
  Vector out(z_uncond.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = z_uncond[i] + w * (z_cond[i] - z_uncond[i]);
  }
  return out;
}

Vector rte_combine(std::span<const double> z_uncond, std::span<const double> z_c0,
                   std::span<const double> z_c1, std::span<const double> z_c2, double w,
                   double w_prime) {
  const auto n = z_uncond.size();
  require_same(n, z_c0, "z_c0");
  require_same(n, z_c1, "z_c1");
  require_same(n, z_c2, "z_c2");
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = z_uncond[i] + w * (z_c0[i] - z_uncond[i]) + w_prime * (z_c1[i] - z_c2[i]);
  }
  return out;
}

Vector negative_combine(std::span<const double> z_uncond, std::span<const double> z_cond,
                        std::span<const double> z_c2, double w) {
  const auto n = z_uncond.size();
  require_same(n, z_cond, "z_cond");
  require_same(n, z_c2, "z_c2");
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = z_uncond[i] + w * (z_cond[i] - z_c2[i]);
  return out;
}

Vector positive_combine(std::span<const double> z_uncond, std::span<const double> z_cond,
                        std::span<const double> z_c1, double w, double w_prime) {
  const auto n = z_uncond.size();
  require_same(n, z_cond, "z_cond");
  require_same(n, z_c1, "z_c1");
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = z_uncond[i] + w * (z_cond[i] - z_uncond[i]) + w_prime * (z_c1[i] - z_uncond[i]);
  }
  return out;
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Cfg: return "cfg";
    case Mode::Rte: return "rte";
    case Mode::Negative: return "negative";
    case Mode::Positive: return "positive";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
  for (auto m : {Mode::Cfg, Mode::Rte, Mode::Negative, Mode::Positive}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

void check_spec(const GuidanceSpec& spec) {
  const bool need_c1 = spec.mode == Mode::Rte || spec.mode == Mode::Positive;
  const bool need_c2 = spec.mode == Mode::Rte || spec.mode == Mode::Negative;
  if (need_c1 && !spec.c1) {
    throw std::invalid_argument(std::string(to_string(spec.mode)) + " guidance requires c1");
  }
  if (need_c2 && !spec.c2) {
    throw std::invalid_argument(std::string(to_string(spec.mode)) + " guidance requires c2");
  }
}

Vector guided_prediction(const Denoiser& model, const GuidanceSpec& spec,
                         std::span<const double> x, int step) {
  check_spec(spec);
  const auto z_u = model.predict(x, step, nullptr);
  const auto z_c0 = model.predict(x, step, condition_ptr(spec.c0));
  switch (spec.mode) {
    case Mode::Cfg:
      return cfg_combine(z_u, z_c0, spec.w);
    case Mode::Rte:
      return rte_combine(z_u, z_c0, model.predict(x, step, condition_ptr(*spec.c1)),
                         model.predict(x, step, condition_ptr(*spec.c2)), spec.w, spec.w_prime);
    case Mode::Negative:
      return negative_combine(z_u, z_c0, model.predict(x, step, condition_ptr(*spec.c2)), spec.w);
    case Mode::Positive:
      return positive_combine(z_u, z_c0, model.predict(x, step, condition_ptr(*spec.c1)), spec.w, spec.w_prime);
  }
  throw std::logic_error("unhandled guidance mode");
}

ToyDenoiser::ToyDenoiser(std::size_t dim, Vector a, std::map<std::string, Vector> embeddings)
    : dim_(dim), a_(std::move(a)), embeddings_(std::move(embeddings)) {
  if (dim_ == 0) throw std::invalid_argument("toy denoiser: dimension must be positive");
  if (a_.size() != dim_ * dim_) throw std::invalid_argument("toy denoiser: matrix must be dim x dim");
  for (const auto& [name, e] : embeddings_) {
    if (e.size() != dim_) {
      throw std::invalid_argument("toy denoiser: embedding '" + name + "' has wrong dimension");
    }
  }
}

const Vector& ToyDenoiser::embedding(const std::string& condition) const {
  auto it = embeddings_.find(condition);
  if (it == embeddings_.end()) throw std::out_of_range("no embedding for condition '" + condition + "'");
  return it->second;
}

Vector ToyDenoiser::predict(std::span<const double> x, int /*step*/,
                            const std::string* condition) const {
  require_same(dim_, x, "state");
  Vector z(dim_, 0.0);
  for (std::size_t r = 0; r < dim_; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) acc += a_[r * dim_ + c] * x[c];
    z[r] = acc;
  }
  if (condition) {
    const auto& e = embedding(*condition);
    for (std::size_t r = 0; r < dim_; ++r) z[r] += e[r];
  }
  return z;
}

std::vector<Vector> denoise_loop(const Denoiser& model, const GuidanceSpec& spec,
                                 std::span<const double> x0, int steps, double eta) {
  if (steps < 1) throw std::invalid_argument("denoise_loop: steps must be >= 1");
  check_spec(spec);
  require_same(model.dimension(), x0, "x0");

  std::vector<Vector> states;
  states.reserve(static_cast<std::size_t>(steps) + 1);
  states.emplace_back(x0.begin(), x0.end());
  for (int t = 0; t < steps; ++t) {
    const auto& x = states.back();
    const auto z = guided_prediction(model, spec, x, t);
    Vector next(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      next[i] = x[i] - eta * z[i];
      if (!std::isfinite(next[i])) {
        throw std::runtime_error("denoise_loop: non-finite state at step " + std::to_string(t + 1));
      }
    }
    states.push_back(std::move(next));
  }
  return states;
}

}  // namespace alignkit::guidance
