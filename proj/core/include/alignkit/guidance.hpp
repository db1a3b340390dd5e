#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace alignkit::guidance {

using Vector = std::vector<double>;

// Guided noise predictions. Each throws std::invalid_argument on a dimension
// mismatch. Terms are accumulated in the order written so that the
// degenerate cases of the extended rules reproduce plain CFG bit-for-bit.

/// z_u + w (z_c - z_u)
Vector cfg_combine(std::span<const double> z_uncond, std::span<const double> z_cond, double w);

/// z_u + w (z_c0 - z_u) + w' (z_c1 - z_c2)
Vector rte_combine(std::span<const double> z_uncond, std::span<const double> z_c0,
                   std::span<const double> z_c1, std::span<const double> z_c2, double w,
                   double w_prime);

/// z_u + w (z_c - z_c2)
Vector negative_combine(std::span<const double> z_uncond, std::span<const double> z_cond,
                        std::span<const double> z_c2, double w);

/// z_u + w (z_c - z_u) + w' (z_c1 - z_u)
Vector positive_combine(std::span<const double> z_uncond, std::span<const double> z_cond,
                        std::span<const double> z_c1, double w, double w_prime);

enum class Mode { Cfg, Rte, Negative, Positive };

std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

/// Conditions are opaque tokens; only a denoiser gives them meaning. The
/// empty token stands for the unconditional input.
struct GuidanceSpec {
  Mode mode = Mode::Cfg;
  double w = 1.0;
  double w_prime = 0.0;
  std::string c0;
  std::optional<std::string> c1;
  std::optional<std::string> c2;
};

/// Throws std::invalid_argument when the mode's conditions are missing.
void check_spec(const GuidanceSpec& spec);

/// Abstract noise predictor z(x, c); a null condition is unconditional.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  virtual std::size_t dimension() const = 0;
  virtual Vector predict(std::span<const double> x, int step,
                         const std::string* condition) const = 0;
};

/// z_t for `spec` at state `x`.
Vector guided_prediction(const Denoiser& model, const GuidanceSpec& spec,
                         std::span<const double> x, int step);

/// Linear stand-in: z(x, c) = A x + E(c), z(x, null) = A x.
class ToyDenoiser final : public Denoiser {
 public:
  /// `a` is row-major dim x dim. Throws std::invalid_argument on bad shapes.
  ToyDenoiser(std::size_t dim, Vector a, std::map<std::string, Vector> embeddings);

  std::size_t dimension() const override { return dim_; }
  Vector predict(std::span<const double> x, int step, const std::string* condition) const override;

  /// Throws std::out_of_range for an unknown condition.
  const Vector& embedding(const std::string& condition) const;
  const Vector& matrix() const { return a_; }

 private:
  std::size_t dim_;
  Vector a_;
  std::map<std::string, Vector> embeddings_;
};

/// Runs x_{t+1} = x_t - eta * z_t for `steps` steps. Returns the states
/// x_0 .. x_steps. Throws std::invalid_argument for steps < 1 and
/// std::runtime_error on a non-finite state.
std::vector<Vector> denoise_loop(const Denoiser& model, const GuidanceSpec& spec,
                                 std::span<const double> x0, int steps, double eta);

}  // namespace alignkit::guidance
