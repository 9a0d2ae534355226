#include "transplanck/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "transplanck/errors.hpp"

namespace transplanck {

namespace {

constexpr double kPrefactor = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
constexpr double kNegligibleOmegaSquared = 1e-300;

double clipped_omega_squared(const DispersionModel& model, double k) {
  return std::fmax(eval_omega_squared(model, k), 0.0);
}

double clipped_omega(const DispersionModel& model, double k) {
  return std::sqrt(clipped_omega_squared(model, k));
}

// dω/dk by differences at step 1e-7 k_p; one-sided (second order) where a
// central stencil would leave the domain.
double omega_slope(const DispersionModel& model, double k) {
  const double h = kDerivativeStep * model.k_p();
  const double end = model.domain_end();
  auto w = [&](double q) { return clipped_omega(model, q); };
  if (k - h < 0.0)
    return (-3.0 * w(k) + 4.0 * w(k + h) - w(k + 2.0 * h)) / (2.0 * h);
  if (k + h > end)
    return (3.0 * w(k) - 4.0 * w(k - h) + w(k - 2.0 * h)) / (2.0 * h);
  return (w(k + h) - w(k - h)) / (2.0 * h);
}

double beta_factor(const BetaTreatment& beta, double k) {
  if (beta.mode == BetaMode::Constant) return 1.0;
  if (k <= 0.0) return 0.0;
  return beta_k_squared(*beta.params, k);
}

void validate(const BetaTreatment& beta) {
  if (beta.mode == BetaMode::Constant) {
    if (!(beta.constant > 0.0) || !std::isfinite(beta.constant))
      throw DomainError("constant |beta_k|^2 must be finite and positive");
  } else {
    if (!beta.params)
      throw DomainError("full |beta_k|^2 mode requires Bogoliubov parameters");
    validate(*beta.params);
  }
}

// ∫ weight |β|² dk without the 1/(2π²) prefactor or the constant.
IntegralEstimate raw_integral(const DispersionModel& model, double k_lo,
                              double k_hi, const BetaTreatment& beta,
                              const QuadratureConfig& qcfg) {
  if (!(k_lo >= 0.0) || !(k_hi >= k_lo) || !std::isfinite(k_hi))
    throw DomainError("integration limits must satisfy 0 <= k_lo <= k_hi < inf");
  if (k_hi > model.domain_end())
    throw DomainError("upper integration limit beyond the model's domain");
  if (k_hi == k_lo) return {};
  const auto r = quad::integrate(
      [&](double k) {
        return rho_integrand(model, k, qcfg.interpretation, beta);
      },
      k_lo, k_hi, qcfg.settings());
  return {r.value, r.error};
}

}  // namespace

std::string_view to_string(Interpretation i) {
  return i == Interpretation::IteratedInner ? "iterated-inner" : "chain-rule";
}

Interpretation interpretation_from_string(std::string_view s) {
  if (s == "iterated-inner") return Interpretation::IteratedInner;
  if (s == "chain-rule") return Interpretation::ChainRule;
  throw ConfigError("unknown interpretation '" + std::string(s) + "'");
}

std::string_view to_string(BetaMode m) {
  return m == BetaMode::Constant ? "constant" : "full";
}

BetaMode beta_mode_from_string(std::string_view s) {
  if (s == "constant") return BetaMode::Constant;
  if (s == "full") return BetaMode::Full;
  throw ConfigError("unknown beta mode '" + std::string(s) + "'");
}

quad::Settings QuadratureConfig::settings() const {
  quad::Settings s;
  s.method = method;
  s.rel_tol = rel_tol;
  s.abs_tol = abs_tol;
  s.max_subdivisions = max_subdivisions;
  return s;
}

void validate(const PhysicalScales& s) {
  if (!(s.H0 > 0.0) || !std::isfinite(s.H0))
    throw DomainError("H0 must be finite and positive");
  if (!(s.M_p > 0.0) || !std::isfinite(s.M_p))
    throw DomainError("M_p must be finite and positive");
  if (!(s.k_p > 0.0) || !std::isfinite(s.k_p))
    throw DomainError("k_p must be finite and positive");
  if (!(s.H0 < s.k_p)) throw DomainError("H0 must be below k_p");
}

double rho_integrand(const DispersionModel& model, double k,
                     Interpretation interpretation, const BetaTreatment& beta) {
  double weight;
  if (interpretation == Interpretation::IteratedInner) {
    weight = 0.5 * k * clipped_omega_squared(model, k);
  } else {
    weight = k * clipped_omega(model, k) * omega_slope(model, k);
  }
  if (weight == 0.0) return 0.0;
  return weight * beta_factor(beta, k);
}

IntegralEstimate rho_integral(const DispersionModel& model, double k_lo,
                              double k_hi, const BetaTreatment& beta,
                              const QuadratureConfig& qcfg) {
  validate(beta);
  const auto raw = raw_integral(model, k_lo, k_hi, beta, qcfg);
  const double scale = kPrefactor * (beta.mode == BetaMode::Constant ? beta.constant : 1.0);
  return {scale * raw.value, scale * raw.error};
}

UpperLimit integration_upper_limit(const DispersionModel& model,
                                   Interpretation interpretation,
                                   const BetaTreatment& beta) {
  if (model.has_cutoff() || std::holds_alternative<MagueijoSmolin>(model.variant()))
    return {model.k_p(), 0.0};

  auto negligible = [&](double k) {
    return clipped_omega_squared(model, k) < kNegligibleOmegaSquared;
  };
  double hi = model.k_p();
  int doublings = 0;
  while (!negligible(hi)) {
    hi *= 2.0;
    if (++doublings > 2000 || !std::isfinite(hi))
      throw DomainError(std::string(model.name()) +
                        ": omega^2 does not decay; the total integral diverges");
  }
  // Shrink [lo, hi] keeping ω²(hi) negligible and ω²(lo) not.
  double lo = doublings > 0 ? 0.5 * hi : hi;
  while (hi - lo > 1e-9 * hi) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (negligible(mid) ? hi : lo) = mid;
  }
  const double k_end = hi;

  // Tail beyond k_end bounded as f(k_end) / λ for a locally exponential f.
  const double f0 = std::fabs(rho_integrand(model, k_end, interpretation, beta));
  if (f0 == 0.0) return {k_end, 0.0};
  const double dk = 1e-3 * k_end;
  const double f1 =
      std::fabs(rho_integrand(model, k_end + dk, interpretation, beta));
  double bound = f0 * k_end;
  if (f1 > 0.0 && f1 < f0) bound = f0 / (std::log(f0 / f1) / dk);
  return {k_end, kPrefactor * bound};
}

RatioReport tail_total_ratio(const DispersionModel& model,
                             const PhysicalScales& scales, const KHSpec& k_h,
                             const BetaTreatment& beta,
                             const QuadratureConfig& qcfg,
                             std::optional<double> k_end_override) {
  validate(scales);
  validate(beta);
  if (std::fabs(scales.k_p - model.k_p()) > 1e-12 * model.k_p())
    throw DomainError("scales.k_p does not match the model's k_p");

  RatioReport r;
  r.interpretation = qcfg.interpretation;
  r.beta_mode = beta.mode;

  double truncation = 0.0;
  if (k_end_override) {
    r.k_end = *k_end_override;
  } else {
    const auto upper = integration_upper_limit(model, qcfg.interpretation, beta);
    r.k_end = upper.k_end;
    truncation = upper.truncation_error / kPrefactor;
  }

  if (const auto* e = std::get_if<ExplicitKH>(&k_h)) {
    r.k_h = e->k_h;
  } else {
    r.k_h = find_k_h(model, scales.H0, Branch::Decaying);
  }
  if (!(r.k_h >= 0.0) || r.k_h > r.k_end)
    throw DomainError("k_H = " + std::to_string(r.k_h) +
                      " outside [0, k_end = " + std::to_string(r.k_end) + "]");

  const auto tail = raw_integral(model, r.k_h, r.k_end, beta, qcfg);
  const auto head = raw_integral(model, 0.0, r.k_h, beta, qcfg);
  const double total = head.value + tail.value;
  if (total == 0.0)
    throw DomainError("ratio undefined: the total integral is zero");

  r.ratio = tail.value / total;
  const double tail_err = tail.error + truncation;
  r.est_error = (std::fabs(head.value) * tail_err +
                 std::fabs(tail.value) * head.error) /
                (total * total);

  const double scale = kPrefactor * (beta.mode == BetaMode::Constant ? beta.constant : 1.0);
  r.rho_tail = scale * tail.value;
  r.rho_total = scale * total;
  return r;
}

double mersini_closed_form_estimate(const PhysicalScales& scales) {
  validate(scales);
  const double h = scales.H0 / scales.M_p;
  return h * h;
}

std::vector<ScanCell> appendix_iii_scan(const ScanRequest& request) {
  auto betas = request.betas;
  auto Ls = request.Ls;
  std::sort(betas.begin(), betas.end());
  std::sort(Ls.begin(), Ls.end());

  std::vector<ScanCell> cells;
  for (double b : betas)
    for (double L : Ls) cells.push_back({b, L, request.k_h_over_kp, {}, {}});

  auto run = [&](ScanCell& cell) {
    try {
      const DispersionModel model(GeneralizedL{request.alpha, cell.beta, cell.L, request.k_p});
      const PhysicalScales scales{1e-61 * request.k_p, 1.0, request.k_p};
      cell.report = tail_total_ratio(model, scales,
                                     ExplicitKH{cell.k_h_over_kp * request.k_p},
                                     request.beta, request.qcfg);
    } catch (const Error& e) {
      cell.error = e.what();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::size_t>(cells.size(), 1));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < cells.size();) run(cells[i]);
      });
    for (std::size_t i; (i = next++) < cells.size();) run(cells[i]);
  }
  return cells;
}

std::vector<RatioReport> detuning_scan(const DispersionModel& model,
                                       const BetaTreatment& beta,
                                       const QuadratureConfig& qcfg) {
  const double k_p = model.k_p();
  const PhysicalScales scales{1e-61 * k_p, 1.0, k_p};
  std::vector<RatioReport> out;
  for (int m = 1; m <= 9; ++m)
    out.push_back(tail_total_ratio(model, scales, ExplicitKH{0.1 * m * k_p}, beta, qcfg));
  return out;
}

}  // namespace transplanck
