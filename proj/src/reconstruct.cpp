#include "transplanck/reconstruct.hpp"

#include <cmath>
#include <string>

#include "transplanck/errors.hpp"
#include "transplanck/numeric.hpp"

namespace transplanck {

namespace {

constexpr double kBlowUp = 1e300;

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

// Δ² = target as an increment of the one-sided slope between two cells.
double slope_jump(double h_prev, double h_next, double target,
                  Normalization normalization) {
  return normalization == Normalization::PaperLiteral
             ? target
             : 0.5 * target * (h_prev + h_next);
}

}  // namespace

std::string_view to_string(SignMode s) {
  return s == SignMode::Eq27c ? "eq27c" : "eq27d";
}

SignMode sign_mode_from_string(std::string_view s) {
  if (s == "eq27c") return SignMode::Eq27c;
  if (s == "eq27d") return SignMode::Eq27d;
  throw ConfigError("unknown sign mode '" + std::string(s) + "'");
}

std::string_view to_string(Normalization n) {
  return n == Normalization::PaperLiteral ? "paper-literal" : "second-derivative";
}

Normalization normalization_from_string(std::string_view s) {
  if (s == "paper-literal") return Normalization::PaperLiteral;
  if (s == "second-derivative") return Normalization::SecondDerivative;
  throw ConfigError("unknown normalization '" + std::string(s) + "'");
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::LinearGrowth: return "linear-growth";
    case Regime::Intermediate: return "intermediate";
    case Regime::ExponentialGrowth: return "exponential-growth";
  }
  return "?";
}

void validate(const ReconstructionConfig& cfg) {
  const auto& g = cfg.tau_grid;
  if (g.size() < 3) throw DomainError("tau_grid needs at least three points");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) throw DomainError("tau_grid must be finite");
    if (i > 0 && !(g[i] > g[i - 1]))
      throw DomainError("tau_grid must be strictly increasing");
  }
  if (!std::isfinite(cfg.k_init) || cfg.k_init < 0.0)
    throw DomainError("k_init must be finite and nonnegative");
  if (!std::isfinite(cfg.c1) || !std::isfinite(cfg.A))
    throw DomainError("c1 and A must be finite");
  if (!positive_finite(cfg.k_evol)) throw DomainError("k_evol must be positive");
  if (!positive_finite(cfg.a1)) throw DomainError("a1 must be positive");
  if (cfg.a_initial && !positive_finite(*cfg.a_initial))
    throw DomainError("a_initial must be positive");
  if (cfg.tau_star && !positive_finite(*cfg.tau_star))
    throw DomainError("tau_star must be positive");
  if (!positive_finite(cfg.regime_eps)) throw DomainError("regime_eps must be positive");
}

double momentum_ansatz(const ReconstructionConfig& cfg, double tau) {
  if (!std::isfinite(tau)) throw DomainError("tau must be finite");
  if (tau == 0.0 && cfg.A < 0.0)
    throw DomainError("k(tau) is singular at tau = 0 for A < 0");
  if (tau < 0.0 && cfg.A != std::trunc(cfg.A))
    throw DomainError("tau < 0 needs an integer exponent A");
  const double k = cfg.k_init + cfg.c1 * cfg.k_evol * std::pow(tau, cfg.A);
  if (!std::isfinite(k)) throw DomainError("k(tau) is not finite");
  if (k < 0.0)
    throw DomainError("k(tau) = " + std::to_string(k) + " < 0 at tau = " +
                      std::to_string(tau));
  return k;
}

double second_difference(double a_prev, double a_i, double a_next,
                         double tau_prev, double tau_i, double tau_next,
                         Normalization normalization) {
  if (!(tau_prev < tau_i && tau_i < tau_next))
    throw DomainError("second_difference needs tau_prev < tau_i < tau_next");
  const double literal = (a_next - a_i) / (tau_next - tau_i) -
                         (a_i - a_prev) / (tau_i - tau_prev);
  if (normalization == Normalization::PaperLiteral) return literal;
  return literal * 2.0 / (tau_next - tau_prev);
}

Trajectory march(const ReconstructionConfig& cfg, const DispersionModel& model) {
  validate(cfg);
  const auto& tau = cfg.tau_grid;
  const std::size_t n = tau.size();

  Trajectory t;
  t.tau = tau;
  t.k.resize(n);
  t.u_t.resize(n);
  t.a.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.k[i] = momentum_ansatz(cfg, tau[i]);
    if (t.k[i] > model.domain_end())
      throw DomainError("k(tau) = " + std::to_string(t.k[i]) +
                        " beyond the model's domain at tau = " +
                        std::to_string(tau[i]));
    t.u_t[i] = t.k[i] * t.k[i] - eval_omega_squared(model, t.k[i]);
  }

  const double sign = cfg.sign_mode == SignMode::Eq27c ? 1.0 : -1.0;
  auto target = [&](std::size_t i) { return sign * t.u_t[i] * t.a[i]; };
  auto guard = [&](std::size_t i) {
    if (!std::isfinite(t.a[i]) || std::fabs(t.a[i]) > kBlowUp)
      throw BlowUpError("|a| exceeded 1e300 at tau = " + std::to_string(tau[i]));
    if (t.a[i] <= 0.0) t.zero_crossing = true;
  };

  // The slope (a_{i+1} - a_i) / h is carried rather than re-derived from a
  // and a is accumulated with compensation, so rounding grows like N, not N².
  CompensatedSum a(cfg.a1);
  t.a[0] = cfg.a1;
  const double h1 = tau[1] - tau[0];
  double slope;
  if (cfg.a_initial) {
    const double tau_star = cfg.tau_star.value_or(h1);
    slope = (cfg.a1 - *cfg.a_initial) / tau_star +
            slope_jump(tau_star, h1, target(0), cfg.normalization);
  } else {
    // Ghost a(τ₁ - h) = a₂: the two one-sided slopes are equal and opposite.
    slope = 0.5 * slope_jump(h1, h1, target(0), cfg.normalization);
  }
  a += h1 * slope;
  t.a[1] = a.value();
  guard(1);

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h_prev = tau[i] - tau[i - 1];
    const double h_next = tau[i + 1] - tau[i];
    slope += slope_jump(h_prev, h_next, target(i), cfg.normalization);
    a += h_next * slope;
    t.a[i + 1] = a.value();
    guard(i + 1);
  }

  classify_regimes(t, cfg.regime_eps);
  return t;
}

void classify_regimes(Trajectory& trajectory, double eps) {
  const std::size_t n = trajectory.k.size();
  trajectory.regime.assign(n, Regime::Intermediate);
  for (std::size_t i = 0; i < n; ++i) {
    const double k2 = trajectory.k[i] * trajectory.k[i];
    const double r = k2 > 0.0 ? trajectory.u_t[i] / k2 : 0.0;
    if (std::fabs(r) < eps)
      trajectory.regime[i] = Regime::LinearGrowth;
    else if (r > 1.0 - eps)
      trajectory.regime[i] = Regime::ExponentialGrowth;
  }
}

}  // namespace transplanck
