#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "transplanck/dispersion.hpp"

namespace transplanck {

/// Which printed form of the marching relation Δ²a_i ± (ω_i² - k_i²) a_i = 0.
enum class SignMode {
  Eq27c,  ///< '+': Δ²a = (k² - ω²) a, the a''/a = k² - ω² identification
  Eq27d,  ///< '-': Δ²a = (ω² - k²) a
};

enum class Normalization {
  PaperLiteral,      ///< difference of one-sided slopes, no 1/h
  SecondDerivative,  ///< the same scaled by 2 / (τ_{i+1} - τ_{i-1})
};

enum class Regime { LinearGrowth, Intermediate, ExponentialGrowth };

std::string_view to_string(SignMode s);
SignMode sign_mode_from_string(std::string_view s);
std::string_view to_string(Normalization n);
Normalization normalization_from_string(std::string_view s);
std::string_view to_string(Regime r);

struct ReconstructionConfig {
  double k_init = 0.0;
  double c1 = 1.0;
  double k_evol = 1.0;
  double A = 1.0;
  std::vector<double> tau_grid;
  /// Phantom value before the first node. When absent the first step
  /// mirrors a_2 about τ_1 (zero initial slope, second order).
  std::optional<double> a_initial;
  /// Offset of the phantom time before τ_1; defaults to τ_2 - τ_1.
  std::optional<double> tau_star;
  double a1 = 1.0;
  SignMode sign_mode = SignMode::Eq27c;
  Normalization normalization = Normalization::SecondDerivative;
  double regime_eps = 1e-3;
};

/// Throws DomainError on a grid with fewer than three points or not strictly
/// increasing, non-positive a1 / a_initial / tau_star / k_evol / regime_eps.
void validate(const ReconstructionConfig& cfg);

struct Trajectory {
  std::vector<double> tau;
  std::vector<double> k;
  std::vector<double> a;
  std::vector<double> u_t;  ///< k² - ω², the a''/a the frequency implies
  std::vector<Regime> regime;
  bool zero_crossing = false;  ///< some a_i <= 0
};

/// k(τ) = k_init + c1 k_evol τ^A.
/// Throws DomainError at τ = 0 with A < 0, for τ < 0 with non-integer A and
/// when the result is negative.
double momentum_ansatz(const ReconstructionConfig& cfg, double tau);

/// Δ²a_i on a non-uniform grid. Throws DomainError unless
/// tau_prev < tau_i < tau_next.
double second_difference(double a_prev, double a_i, double a_next,
                         double tau_prev, double tau_i, double tau_next,
                         Normalization normalization);

/// Marches a over cfg.tau_grid starting from a_1 = cfg.a1. Throws
/// BlowUpError once |a| exceeds 1e300 and DomainError when k(τ) leaves the
/// model's domain. Regimes are labelled with cfg.regime_eps.
Trajectory march(const ReconstructionConfig& cfg, const DispersionModel& model);

/// Labels node i linear-growth if |u_t|/k² < eps, exponential-growth if
/// u_t/k² > 1 - eps, intermediate otherwise. A node at k = 0 counts as
/// linear-growth.
void classify_regimes(Trajectory& trajectory, double eps);

}  // namespace transplanck
