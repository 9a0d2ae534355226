#pragma once

#include <optional>
#include <string_view>
#include <variant>

namespace transplanck {

// Frequency laws ω(k) in units ħ = c = 1. Every law depends on k only through
// x = k / k_p apart from the overall factor k; k_p is carried as the scale.

/// ω = α k / (1 + x).
struct MagueijoSmolin {
  double alpha = 1.0;
  double k_p = 1.0;
};

/// ω = α k (1 - x) / (1 + β x)^11, zero at and undefined beyond k_p.
struct ModifiedMS {
  double alpha = 1.0;
  double beta = 1000.0;
  double k_p = 1.0;
};

/// ω = α k exp(-β₂ x) / (1 + β₁ x)^11.
struct ExpSuppressed {
  double alpha = 1.0;
  double beta1 = 1.0;
  double beta2 = 100.0;
  double k_p = 1.0;
};

/// ω = α k (1 - x^L) / (1 + β x^L)^11.
struct GeneralizedL {
  double alpha = 1.0;
  double beta = 1.0;
  double L = 1.0;
  double k_p = 1.0;
};

/// Parameters of the Epstein-type squared frequency
///   F²(k) = (k² - k̃₁²) V₀(x, x₀) + k² V₁(x - x₀) + k̃₁².
struct EpsteinParams {
  double B = 0.0;
  double C = 2.0;
  double E = 0.0;
  double x0 = 0.0;
  double k1_tilde = 0.0;
  double k_p = 1.0;
};

struct EpsteinNonlinear {
  EpsteinParams params;
};

/// Immutable, validated choice of one frequency law.
class DispersionModel {
 public:
  using Variant = std::variant<MagueijoSmolin, ModifiedMS, ExpSuppressed,
                               GeneralizedL, EpsteinNonlinear>;

  /// Throws DomainError on non-finite or out-of-range parameters.
  explicit DispersionModel(Variant v);

  const Variant& variant() const { return v_; }
  double k_p() const;
  std::string_view name() const;

  /// True for the laws carrying a (1 - x^L) factor: ModifiedMS, GeneralizedL.
  bool has_cutoff() const;

  /// Upper end of the momentum domain: k_p for cutoff laws, +inf otherwise.
  double domain_end() const;

 private:
  Variant v_;
};

/// Epstein parameters that collapse F² to exactly k² up to rounding:
/// C = E = 1, B = 0, k̃₁ = 0, x₀ pushed far enough that e^{x - x₀} underflows
/// for every x of interest. Handy as a linear-dispersion reference model.
DispersionModel linear_dispersion(double k_p = 1.0);

/// ω(k). Throws DomainError for k < 0 or k > k_p on cutoff laws and
/// NegativeSquareError when an Epstein F²(k) is negative.
double eval_omega(const DispersionModel& model, double k);

/// ω²(k); for the Epstein law this is F²(k) and may be negative.
double eval_omega_squared(const DispersionModel& model, double k);

double epstein_v0(const EpsteinParams& p, double x);
double epstein_v1(const EpsteinParams& p, double x);

struct EpsteinConstraintReport {
  bool pass = false;
  double normalization_residual = 0.0;  ///< |C/2 + E/4 - 1|
  double thermality_residual = 0.0;     ///< B
};

EpsteinConstraintReport check_epstein_constraints(const EpsteinParams& p,
                                                  double tol);

struct Bracket {
  double lo;
  double hi;
};

/// [1e-8 k_p, k_p (1 - 1e-8)] for cutoff laws, [1e-8 k_p, 1e3 k_p] otherwise.
Bracket default_hump_bracket(const DispersionModel& model);

struct Hump {
  double k_star;
  double omega_star;
};

/// Interior maximum of ω over the bracket. The bracket is first sampled on a
/// mixed log/linear grid; a profile whose largest sample sits on an end point
/// is rejected with NoInteriorMaximumError, as is one with several local
/// maxima. The sampled peak is then refined by golden-section search to a
/// relative bracket width of 1e-10.
Hump find_hump(const DispersionModel& model,
               std::optional<Bracket> bracket = std::nullopt);

enum class Branch { Rising, Decaying };

std::string_view to_string(Branch b);
Branch branch_from_string(std::string_view s);

/// Root of ω(k) = H0 on the chosen side of the hump, by bisection to a
/// relative tolerance of 1e-12. On the decaying branch this is k_H.
/// Throws NoRootError when H0 >= ω* or the branch never drops below H0.
double find_k_h(const DispersionModel& model, double H0,
                Branch branch = Branch::Decaying);

struct Beta3Report {
  double analytic;  ///< 11 β + 1
  double fitted;    ///< intercept of (α k / ω - 1) k_p / k regressed on k
  double relative_mismatch;
};

/// Low-k coefficient β₃ in ω ≈ α k / (1 + β₃ k / k_p). Only defined for
/// ModifiedMS and GeneralizedL with L = 1. The analytic value is confirmed by
/// a linear fit over k in [1e-8, 1e-6] k_p; throws FitMismatchError if the two
/// disagree by more than 0.1%.
Beta3Report effective_beta3(const DispersionModel& model);

/// E = m / (1 + m / E_p); tends to E_p as m → ∞.
double ms_energy(double m, double E_p);

}  // namespace transplanck
