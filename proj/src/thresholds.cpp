#include "cgim/thresholds.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cgim/errors.hpp"

namespace cgim {

ThresholdModel ThresholdModel::constant(double delta0) {
  // delta0 = 0 would flip every node with zero adopting neighbors.
  if (!(delta0 > 0.0 && delta0 <= 1.0)) throw ContractViolation("constant threshold must lie in (0, 1]");
  return ThresholdModel(Kind::Constant, delta0);
}

ThresholdModel ThresholdModel::power_law(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw ContractViolation("power-law exponent must exceed 1");
  return ThresholdModel(Kind::PowerLaw, gamma);
}

namespace {

double parse_real(std::string_view text, std::string_view spec) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    throw ParseError("bad numeric parameter in model spec '" + std::string(spec) + "'");
  return value;
}

}  // namespace

ThresholdModel parse_model_spec(std::string_view spec) {
  std::string lower(spec);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto colon = lower.find(':');
  const std::string name = lower.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  const std::string_view arg =
      has_arg ? std::string_view(lower).substr(colon + 1) : std::string_view();

  try {
    if (!has_arg) {
      if (name == "linear") return ThresholdModel::linear();
      if (name == "concave") return ThresholdModel::concave_square();
      if (name == "convex") return ThresholdModel::convex_sqrt();
    } else {
      if (name == "majority") return ThresholdModel::constant(parse_real(arg, spec));
      if (name == "powerlaw") return ThresholdModel::power_law(parse_real(arg, spec));
    }
  } catch (const ContractViolation& e) {
    throw ParseError(std::string(e.what()) + " in model spec '" + std::string(spec) + "'");
  }
  throw ParseError("unknown model spec '" + std::string(spec) +
                   "' (expected linear, concave, convex, majority:<d>, powerlaw:<g>)");
}

std::string to_spec(const ThresholdModel& model) {
  std::ostringstream out;
  switch (model.kind()) {
    case ThresholdModel::Kind::Linear: return "linear";
    case ThresholdModel::Kind::ConcaveSquare: return "concave";
    case ThresholdModel::Kind::ConvexSqrt: return "convex";
    case ThresholdModel::Kind::Constant: out << "majority:" << model.parameter(); break;
    case ThresholdModel::Kind::PowerLaw: out << "powerlaw:" << model.parameter(); break;
  }
  return out.str();
}

double cdf(const ThresholdModel& model, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ContractViolation("cdf argument outside [0, 1]");
  switch (model.kind()) {
    case ThresholdModel::Kind::Linear: return x;
    case ThresholdModel::Kind::ConcaveSquare: return std::sqrt(x);
    case ThresholdModel::Kind::ConvexSqrt: return x * x;
    case ThresholdModel::Kind::Constant: return x >= model.parameter() ? 1.0 : 0.0;
    case ThresholdModel::Kind::PowerLaw: return std::pow(x, model.parameter() - 1.0);
  }
  return 0.0;
}

double inverse_cdf(const ThresholdModel& model, double u) {
  switch (model.kind()) {
    case ThresholdModel::Kind::Linear: return u;
    case ThresholdModel::Kind::ConcaveSquare: return u * u;
    case ThresholdModel::Kind::ConvexSqrt: return std::sqrt(u);
    case ThresholdModel::Kind::Constant: return model.parameter();
    case ThresholdModel::Kind::PowerLaw: return std::pow(u, 1.0 / (model.parameter() - 1.0));
  }
  return 0.0;
}

double sample_threshold(const ThresholdModel& model, Rng& rng) {
  if (model.kind() == ThresholdModel::Kind::Constant) return model.parameter();
  return inverse_cdf(model, rng.uniform01());
}

double delta_from_payoffs(double payoff_a, double payoff_b) {
  if (!(payoff_a > 0.0) || !(payoff_b > 0.0)) throw ContractViolation("payoffs must be positive");
  return payoff_a / (payoff_a + payoff_b);
}

std::string_view to_string(ConcavityJudgment j) {
  switch (j) {
    case ConcavityJudgment::ConcaveContinuousIncreasing: return "concave";
    case ConcavityJudgment::NotConcave: return "not concave";
    case ConcavityJudgment::Discontinuous: return "discontinuous";
  }
  return "?";
}

ConcavityJudgment is_concave_cdf(const ThresholdModel& model) {
  switch (model.kind()) {
    case ThresholdModel::Kind::Linear:
    case ThresholdModel::Kind::ConcaveSquare: return ConcavityJudgment::ConcaveContinuousIncreasing;
    case ThresholdModel::Kind::ConvexSqrt: return ConcavityJudgment::NotConcave;
    case ThresholdModel::Kind::Constant: return ConcavityJudgment::Discontinuous;
    case ThresholdModel::Kind::PowerLaw:
      return model.parameter() <= 2.0 ? ConcavityJudgment::ConcaveContinuousIncreasing
                                       : ConcavityJudgment::NotConcave;
  }
  return ConcavityJudgment::NotConcave;
}

bool midpoint_concave(const ThresholdModel& model, std::size_t grid_points, double tolerance) {
  if (grid_points < 2) throw ContractViolation("grid needs at least two points");
  std::vector<double> xs(grid_points), fs(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    xs[i] = static_cast<double>(i) / static_cast<double>(grid_points - 1);
    fs[i] = cdf(model, xs[i]);
  }
  for (std::size_t i = 0; i < grid_points; ++i)
    for (std::size_t j = i + 1; j < grid_points; ++j)
      if (cdf(model, 0.5 * (xs[i] + xs[j])) < 0.5 * (fs[i] + fs[j]) - tolerance) return false;
  return true;
}

bool meets_threshold(std::size_t active_neighbors, double delta, std::size_t degree) {
  return static_cast<double>(active_neighbors) + kTieTolerance >= delta * static_cast<double>(degree);
}

std::uint32_t requirement_for(double delta, std::size_t degree) {
  if (degree == 0) return 1;
  const double product = std::max(0.0, delta * static_cast<double>(degree));
  auto k = static_cast<std::size_t>(product);
  if (!meets_threshold(k, delta, degree)) ++k;
  return static_cast<std::uint32_t>(std::max<std::size_t>(k, 1));
}

std::vector<double> requirement_distribution(const ThresholdModel& model, std::size_t degree) {
  if (degree < 1) throw ContractViolation("requirement_distribution needs degree >= 1");
  std::vector<double> p(degree + 1, 0.0);
  if (!model.continuous()) {
    p[requirement_for(model.parameter(), degree)] = 1.0;
    return p;
  }
  const double d = static_cast<double>(degree);
  double previous = cdf(model, 0.0);
  p[0] = previous;
  for (std::size_t k = 1; k <= degree; ++k) {
    const double current = k == degree ? 1.0 : cdf(model, static_cast<double>(k) / d);
    p[k] = current - previous;
    previous = current;
  }
  return p;
}

}  // namespace cgim
