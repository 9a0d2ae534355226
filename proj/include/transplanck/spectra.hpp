#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "transplanck/bogoliubov.hpp"
#include "transplanck/dispersion.hpp"
#include "transplanck/quadrature.hpp"

namespace transplanck {

/// How the double integral ∫k dk ∫ω dω |β_k|² is reduced to one dimension.
enum class Interpretation {
  /// inner variable sweeps [0, ω(k)]: weight k ω²(k) / 2
  IteratedInner,
  /// dω = ω'(k) dk along the curve: weight k ω(k) ω'(k)
  ChainRule,
};

std::string_view to_string(Interpretation i);
Interpretation interpretation_from_string(std::string_view s);

enum class BetaMode { Constant, Full };

std::string_view to_string(BetaMode m);
BetaMode beta_mode_from_string(std::string_view s);

struct QuadratureConfig {
  quad::Method method = quad::Method::AdaptiveSimpson;
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  int max_subdivisions = 60;
  Interpretation interpretation = Interpretation::IteratedInner;

  quad::Settings settings() const;
};

/// |β_k|² treatment: a constant (which cancels from every ratio) or the full
/// k-dependent Bogoliubov coefficient.
struct BetaTreatment {
  BetaMode mode = BetaMode::Constant;
  double constant = 1.0;
  std::optional<BogoliubovParams> params;

  static BetaTreatment constant_value(double c = 1.0) {
    return {BetaMode::Constant, c, std::nullopt};
  }
  static BetaTreatment full(const BogoliubovParams& p) {
    return {BetaMode::Full, 1.0, p};
  }
};

struct PhysicalScales {
  double H0 = 1e-61;
  double M_p = 1.0;
  double k_p = 1.0;
};

void validate(const PhysicalScales& s);

struct IntegralEstimate {
  double value = 0.0;
  double error = 0.0;
};

/// Central-difference step for dω/dk in the chain-rule reading, 1e-7 k_p.
inline constexpr double kDerivativeStep = 1e-7;

/// Integrand of the energy-density integral before the 1/(2π²) prefactor.
/// Epstein squared frequencies are clipped at zero (no tachyonic modes).
double rho_integrand(const DispersionModel& model, double k,
                     Interpretation interpretation, const BetaTreatment& beta);

/// (1/2π²) ∫_{k_lo}^{k_hi} [interpretation weight] |β_k|² dk.
IntegralEstimate rho_integral(const DispersionModel& model, double k_lo,
                              double k_hi, const BetaTreatment& beta,
                              const QuadratureConfig& qcfg = {});

/// Where the upper limit of the total integral sits: k_p for laws that stop
/// there (including Magueijo-Smolin, whose domain is [0, k_p]); otherwise
/// the first k beyond the hump with ω²(k) < 1e-300.
struct UpperLimit {
  double k_end;
  double truncation_error;  ///< bound on the discarded tail, prefactor included
};

UpperLimit integration_upper_limit(const DispersionModel& model,
                                   Interpretation interpretation,
                                   const BetaTreatment& beta);

/// k_H either given outright or solved from ω(k_H) = H0 on the decaying branch.
struct ExplicitKH {
  double k_h;
};
struct SolveKHFromH0 {};
using KHSpec = std::variant<ExplicitKH, SolveKHFromH0>;

struct RatioReport {
  double rho_tail = 0.0;
  double rho_total = 0.0;
  double ratio = 0.0;
  double k_h = 0.0;
  double k_end = 0.0;
  Interpretation interpretation = Interpretation::IteratedInner;
  BetaMode beta_mode = BetaMode::Constant;
  double est_error = 0.0;  ///< combined bound on ratio from both integrals
};

/// ratio = ρ(k_H, k_end) / ρ(0, k_end) with the total assembled as
/// ρ(0, k_H) + ρ(k_H, k_end). Under a constant |β_k|² the constant scales only
/// the reported ρ values; the ratio is computed from the unscaled integrals.
/// Throws DomainError("ratio undefined") if the total integral vanishes.
RatioReport tail_total_ratio(const DispersionModel& model,
                             const PhysicalScales& scales, const KHSpec& k_h,
                             const BetaTreatment& beta,
                             const QuadratureConfig& qcfg = {},
                             std::optional<double> k_end_override = std::nullopt);

/// (H0 / M_p)², the closed-form tail/total estimate.
double mersini_closed_form_estimate(const PhysicalScales& scales);

struct ScanCell {
  double beta = 0.0;
  double L = 0.0;
  double k_h_over_kp = 0.5;
  std::optional<RatioReport> report;
  std::string error;  ///< set instead of report when the cell failed
};

struct ScanRequest {
  std::vector<double> betas;
  std::vector<double> Ls;
  double k_h_over_kp = 0.5;
  double alpha = 1.0;
  double k_p = 1.0;
  BetaTreatment beta;
  QuadratureConfig qcfg;
};

/// GeneralizedL ratio over the Cartesian product betas × Ls. Cells run
/// concurrently; the table comes back sorted by (beta, L). Failures are
/// recorded per cell.
std::vector<ScanCell> appendix_iii_scan(const ScanRequest& request);

/// Ratio as a function of k_H = M k_p for M = 0.1, 0.2, ..., 0.9.
std::vector<RatioReport> detuning_scan(const DispersionModel& model,
                                       const BetaTreatment& beta,
                                       const QuadratureConfig& qcfg = {});

}  // namespace transplanck
