#pragma once

namespace transplanck {

/// Inputs to |β_k|²: thermality B, conformal-time ratio |η/η_c| and x₀.
struct BogoliubovParams {
  double B = 1e-3;
  double eta_ratio = 1.0;
  double x0 = 1e-2;
};

/// Throws DomainError unless 0 <= B < 2, eta_ratio > 0 and 0 <= x0 <= 1.
void validate(const BogoliubovParams& p);

/// Deviation-from-thermality function Γ. With b = B e^{-x₀}:
///   4b >= 1: cosh²((π/2) √(4b - 1))
///   4b <  1: cos²((π/2) √(1 - 4b))
/// the two sides of one analytic function, both equal to 1 at 4b = 1.
double gamma(double B, double x0);

/// Ω̂₊ = (1 - B/2) |η/η_c| / k.
double omega_hat_plus(const BogoliubovParams& p, double k);
/// Ω̂₋ = (B/2) |η/η_c| / k.
double omega_hat_minus(const BogoliubovParams& p, double k);

/// |β_k|² = [sinh²(2πΩ̂₋) + Γ] / [sinh²(2πΩ̂₊) - sinh²(2πΩ̂₋)].
///
/// Evaluated in log space with the denominator written as
/// sinh(2π(Ω̂₊+Ω̂₋)) sinh(2π(Ω̂₊-Ω̂₋)), so neither small-k overflow nor
/// small-argument cancellation occurs. Exactly 0 at B = 0.
/// Throws DegenerateDenominatorError for B >= 1.
double beta_k_squared(const BogoliubovParams& p, double k);

struct ConstantApproximation {
  double mean = 0.0;
  double max_relative_deviation = 0.0;
};

/// Samples |β_k|² on a log grid over [k_lo, k_hi] and reports how far it is
/// from a constant.
ConstantApproximation thermal_constant_approx(const BogoliubovParams& p,
                                              double k_lo, double k_hi,
                                              int n_samples);

}  // namespace transplanck
