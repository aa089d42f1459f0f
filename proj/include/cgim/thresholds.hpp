#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cgim/rng.hpp"

namespace cgim {

/// Distribution of the per-node adoption threshold delta = pA / (pA + pB),
/// described by its CDF F on [0, 1].
class ThresholdModel {
 public:
  enum class Kind {
    Linear,         ///< F(x) = x
    ConcaveSquare,  ///< delta = X^2, F(x) = sqrt(x)
    ConvexSqrt,     ///< delta = sqrt(X), F(x) = x^2
    Constant,       ///< delta = delta0, F(x) = [x >= delta0]
    PowerLaw,       ///< pA = 1, pB power-law with exponent gamma: F(x) = x^(gamma-1)
  };

  static ThresholdModel linear() { return ThresholdModel(Kind::Linear, 0.0); }
  static ThresholdModel concave_square() { return ThresholdModel(Kind::ConcaveSquare, 0.0); }
  static ThresholdModel convex_sqrt() { return ThresholdModel(Kind::ConvexSqrt, 0.0); }
  /// 0 < delta0 <= 1.
  static ThresholdModel constant(double delta0);
  /// gamma > 1.
  static ThresholdModel power_law(double gamma);

  Kind kind() const noexcept { return kind_; }
  /// delta0 for Constant, gamma for PowerLaw, 0 otherwise.
  double parameter() const noexcept { return param_; }
  bool continuous() const noexcept { return kind_ != Kind::Constant; }

  bool operator==(const ThresholdModel&) const = default;

 private:
  ThresholdModel(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;
};

/// Accepts `linear`, `concave`, `convex`, `majority:<delta0>`, `powerlaw:<gamma>`,
/// case-insensitively. Throws ParseError.
ThresholdModel parse_model_spec(std::string_view spec);
std::string to_spec(const ThresholdModel& model);

double cdf(const ThresholdModel& model, double x);
/// F^-1(u) for u in (0, 1]; delta0 for Constant.
double inverse_cdf(const ThresholdModel& model, double u);

/// Inverse-CDF sample. Constant draws nothing from the stream.
double sample_threshold(const ThresholdModel& model, Rng& rng);

/// pA / (pA + pB) for strictly positive payoffs.
double delta_from_payoffs(double payoff_a, double payoff_b);

enum class ConcavityJudgment { ConcaveContinuousIncreasing, NotConcave, Discontinuous };

std::string_view to_string(ConcavityJudgment j);

/// Analytic judgment of the concave threshold property, per variant.
ConcavityJudgment is_concave_cdf(const ThresholdModel& model);

/// Numeric cross-check: F((a+b)/2) >= (F(a)+F(b))/2 - tol over all pairs of a
/// uniform grid with `grid_points` points on [0, 1].
bool midpoint_concave(const ThresholdModel& model, std::size_t grid_points = 1000,
                      double tolerance = 1e-9);

/// Least integer k with meets_threshold(k, delta, degree), floored at 1 so
/// that nobody adopts with zero adopting neighbors. Degree 0 yields 1: an
/// isolated node never activates unless seeded.
std::uint32_t requirement_for(double delta, std::size_t degree);

/// Absolute slack in the threshold comparison. A threshold written as a
/// decimal (0.2 with degree 5) lands on a tie instead of just above it.
inline constexpr double kTieTolerance = 1e-9;

/// True iff `active_neighbors >= delta * degree`; ties activate.
bool meets_threshold(std::size_t active_neighbors, double delta, std::size_t degree);

/// p[k] = Pr[requirement_for(delta, degree) == k], k = 0..degree.
std::vector<double> requirement_distribution(const ThresholdModel& model, std::size_t degree);

}  // namespace cgim
