#include "transplanck/bogoliubov.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "transplanck/errors.hpp"
#include "transplanck/numeric.hpp"

namespace transplanck {

using std::numbers::pi;

void validate(const BogoliubovParams& p) {
  if (!(p.B >= 0.0 && p.B < 2.0)) throw DomainError("B must lie in [0, 2)");
  if (!(p.eta_ratio > 0.0) || !std::isfinite(p.eta_ratio))
    throw DomainError("eta_ratio must be finite and positive");
  if (!(p.x0 >= 0.0 && p.x0 <= 1.0)) throw DomainError("x0 must lie in [0, 1]");
}

double gamma(double B, double x0) {
  if (!(B >= 0.0)) throw DomainError("B must be nonnegative");
  const double b = B * std::exp(-x0);
  const double d = 4.0 * b;
  if (d >= 1.0) {
    const double c = std::cosh(0.5 * pi * std::sqrt(d - 1.0));
    return c * c;
  }
  // cos((π/2) s) = sin((π/2)(1 - s)) and 1 - s = 4b / (1 + s): exact zero at b = 0.
  const double s = std::sqrt(1.0 - d);
  const double t = std::sin(0.5 * pi * d / (1.0 + s));
  return t * t;
}

double omega_hat_plus(const BogoliubovParams& p, double k) {
  validate(p);
  if (!(k > 0.0)) throw DomainError("omega_hat needs k > 0");
  return (1.0 - 0.5 * p.B) * p.eta_ratio / k;
}

double omega_hat_minus(const BogoliubovParams& p, double k) {
  validate(p);
  if (!(k > 0.0)) throw DomainError("omega_hat needs k > 0");
  return 0.5 * p.B * p.eta_ratio / k;
}

double beta_k_squared(const BogoliubovParams& p, double k) {
  validate(p);
  if (!(k > 0.0) || !std::isfinite(k))
    throw DomainError("beta_k_squared needs finite k > 0");
  if (p.B >= 1.0)
    throw DegenerateDenominatorError(
        "B >= 1 leaves sinh^2(2 pi Omega+) <= sinh^2(2 pi Omega-)");

  const double g = gamma(p.B, p.x0);
  const double a_minus = pi * p.B * p.eta_ratio / k;  // 2π Ω̂₋
  if (a_minus == 0.0 && g == 0.0) return 0.0;

  // sinh²(a₊) - sinh²(a₋) = sinh(a₊ + a₋) sinh(a₊ - a₋)
  const double a_sum = 2.0 * pi * p.eta_ratio / k;
  const double a_diff = 2.0 * pi * (1.0 - p.B) * p.eta_ratio / k;
  const double log_den = log_sinh(a_sum) + log_sinh(a_diff);

  const double ninf = -std::numeric_limits<double>::infinity();
  const double log_sinh2_minus = a_minus > 0.0 ? 2.0 * log_sinh(a_minus) : ninf;
  const double log_gamma = g > 0.0 ? std::log(g) : ninf;
  return std::exp(log_add_exp(log_sinh2_minus, log_gamma) - log_den);
}

ConstantApproximation thermal_constant_approx(const BogoliubovParams& p,
                                              double k_lo, double k_hi,
                                              int n_samples) {
  if (!(k_lo > 0.0 && k_lo < k_hi))
    throw DomainError("thermal_constant_approx needs 0 < k_lo < k_hi");
  if (n_samples < 1) throw DomainError("n_samples must be positive");

  std::vector<double> values(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double t = n_samples == 1 ? 0.0 : static_cast<double>(i) / (n_samples - 1);
    values[i] = beta_k_squared(p, k_lo * std::pow(k_hi / k_lo, t));
  }
  ConstantApproximation r;
  r.mean = compensated_sum(values) / n_samples;
  if (r.mean == 0.0) return r;
  for (double v : values)
    r.max_relative_deviation =
        std::fmax(r.max_relative_deviation, std::fabs(v - r.mean) / r.mean);
  return r;
}

}  // namespace transplanck
