#include "transplanck/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "transplanck/errors.hpp"
#include "transplanck/numeric.hpp"
#include "transplanck/search.hpp"

namespace transplanck {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

void validate_scale(double alpha, double k_p) {
  require(std::isfinite(k_p) && k_p > 0.0, "k_p must be finite and positive");
  require(std::isfinite(alpha) && alpha > 0.0,
          "alpha must be finite and positive");
}

void validate(const MagueijoSmolin& m) { validate_scale(m.alpha, m.k_p); }

void validate(const ModifiedMS& m) {
  validate_scale(m.alpha, m.k_p);
  require(std::isfinite(m.beta) && m.beta >= 0.0,
          "beta must be finite and nonnegative");
}

void validate(const ExpSuppressed& m) {
  validate_scale(m.alpha, m.k_p);
  require(std::isfinite(m.beta1) && m.beta1 >= 0.0,
          "beta1 must be finite and nonnegative");
  require(std::isfinite(m.beta2) && m.beta2 >= 0.0,
          "beta2 must be finite and nonnegative");
}

void validate(const GeneralizedL& m) {
  validate_scale(m.alpha, m.k_p);
  require(std::isfinite(m.beta) && m.beta >= 0.0,
          "beta must be finite and nonnegative");
  require(std::isfinite(m.L) && m.L > 0.0, "L must be finite and positive");
}

void validate(const EpsteinNonlinear& m) {
  const auto& p = m.params;
  require(std::isfinite(p.k_p) && p.k_p > 0.0,
          "k_p must be finite and positive");
  require(std::isfinite(p.B) && p.B >= 0.0, "B must be finite and nonnegative");
  require(std::isfinite(p.C) && std::isfinite(p.E), "C and E must be finite");
  require(std::isfinite(p.x0) && p.x0 >= 0.0,
          "x0 must be finite and nonnegative");
  require(std::isfinite(p.k1_tilde) && p.k1_tilde >= 0.0,
          "k1_tilde must be finite and nonnegative");
  require(p.k1_tilde < p.k_p, "k1_tilde must be below k_p");
}

void check_momentum(const DispersionModel& model, double k) {
  if (!(k >= 0.0) || !std::isfinite(k))
    throw DomainError("momentum must be finite and nonnegative, got " +
                      std::to_string(k));
  if (model.has_cutoff() && k > model.k_p())
    throw DomainError("k = " + std::to_string(k) + " beyond the cutoff k_p = " +
                      std::to_string(model.k_p()));
}

// (1 + b)^-11 as exp(-11 log1p(b)) so that β up to 1e300 stays finite.
double suppression(double b) { return std::exp(-11.0 * std::log1p(b)); }

double epstein_f2(const EpsteinParams& p, double k) {
  const double x = k / p.k_p;
  const double k1sq = p.k1_tilde * p.k1_tilde;
  return (k * k - k1sq) * epstein_v0(p, x) + k * k * epstein_v1(p, x) + k1sq;
}

}  // namespace

DispersionModel::DispersionModel(Variant v) : v_(std::move(v)) {
  std::visit([](const auto& m) { validate(m); }, v_);
}

double DispersionModel::k_p() const {
  return std::visit(overloaded{
                        [](const EpsteinNonlinear& m) { return m.params.k_p; },
                        [](const auto& m) { return m.k_p; },
                    },
                    v_);
}

std::string_view DispersionModel::name() const {
  return std::visit(
      overloaded{
          [](const MagueijoSmolin&) { return std::string_view{"magueijo_smolin"}; },
          [](const ModifiedMS&) { return std::string_view{"modified_ms"}; },
          [](const ExpSuppressed&) { return std::string_view{"exp_suppressed"}; },
          [](const GeneralizedL&) { return std::string_view{"generalized_l"}; },
          [](const EpsteinNonlinear&) { return std::string_view{"epstein"}; },
      },
      v_);
}

bool DispersionModel::has_cutoff() const {
  return std::holds_alternative<ModifiedMS>(v_) ||
         std::holds_alternative<GeneralizedL>(v_);
}

double DispersionModel::domain_end() const {
  return has_cutoff() ? k_p() : HUGE_VAL;
}

DispersionModel linear_dispersion(double k_p) {
  return DispersionModel(EpsteinNonlinear{
      EpsteinParams{.B = 0.0, .C = 1.0, .E = 1.0, .x0 = 1e4, .k1_tilde = 0.0, .k_p = k_p}});
}

double epstein_v0(const EpsteinParams& p, double x) {
  // C/(1+e^x) + E e^x / ((1+e^x)(1+e^{x-x0})) in logistic form.
  return p.C * logistic(-x) + p.E * logistic(x) * logistic(p.x0 - x);
}

double epstein_v1(const EpsteinParams& p, double x) {
  if (p.B == 0.0) return 0.0;
  // -B e^x / (1+e^{x-x0})^2 = -B exp(x + 2 log σ(x0 - x))
  return -p.B * std::exp(x + 2.0 * log_logistic(p.x0 - x));
}

double eval_omega(const DispersionModel& model, double k) {
  check_momentum(model, k);
  return std::visit(
      overloaded{
          [k](const MagueijoSmolin& m) { return m.alpha * k / (1.0 + k / m.k_p); },
          [k](const ModifiedMS& m) {
            const double x = k / m.k_p;
            return m.alpha * k * (1.0 - x) * suppression(m.beta * x);
          },
          [k](const ExpSuppressed& m) {
            const double x = k / m.k_p;
            return m.alpha * k *
                   std::exp(-m.beta2 * x - 11.0 * std::log1p(m.beta1 * x));
          },
          [k](const GeneralizedL& m) {
            if (k == 0.0) return 0.0;
            const double x = k / m.k_p;
            const double log_x = std::log(x);
            const double u = std::exp(m.L * log_x);
            return m.alpha * k * -std::expm1(m.L * log_x) *
                   suppression(m.beta * u);
          },
          [k](const EpsteinNonlinear& m) {
            const double f2 = epstein_f2(m.params, k);
            if (f2 < 0.0) throw NegativeSquareError(k, f2);
            return std::sqrt(f2);
          },
      },
      model.variant());
}

double eval_omega_squared(const DispersionModel& model, double k) {
  if (const auto* e = std::get_if<EpsteinNonlinear>(&model.variant())) {
    check_momentum(model, k);
    return epstein_f2(e->params, k);
  }
  const double w = eval_omega(model, k);
  return w * w;
}

EpsteinConstraintReport check_epstein_constraints(const EpsteinParams& p,
                                                  double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  EpsteinConstraintReport r;
  r.normalization_residual = std::fabs(p.C / 2.0 + p.E / 4.0 - 1.0);
  r.thermality_residual = p.B;
  r.pass = r.normalization_residual <= tol && r.thermality_residual <= tol;
  return r;
}

Bracket default_hump_bracket(const DispersionModel& model) {
  const double k_p = model.k_p();
  if (model.has_cutoff()) return {1e-8 * k_p, k_p * (1.0 - 1e-8)};
  return {1e-8 * k_p, 1e3 * k_p};
}

Hump find_hump(const DispersionModel& model, std::optional<Bracket> bracket) {
  const Bracket b = bracket.value_or(default_hump_bracket(model));
  if (!(b.lo >= 0.0) || !(b.hi > b.lo) || !std::isfinite(b.hi))
    throw DomainError("hump bracket must satisfy 0 <= lo < hi < inf");

  // Mixed grid: linear over the bracket plus log-spaced toward the low end.
  constexpr int kSamples = 400;
  std::vector<double> grid;
  grid.reserve(2 * kSamples + 2);
  for (int i = 0; i <= kSamples; ++i)
    grid.push_back(b.lo + (b.hi - b.lo) * i / kSamples);
  const double log_lo = std::log(std::max(b.lo, b.hi * 1e-12));
  const double log_hi = std::log(b.hi);
  for (int i = 0; i <= kSamples; ++i)
    grid.push_back(std::exp(log_lo + (log_hi - log_lo) * i / kSamples));
  for (auto& k : grid) k = std::clamp(k, b.lo, b.hi);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto profile = [&model](double k) { return eval_omega_squared(model, k); };

  // Collapse runs of equal samples so plateaus (e.g. underflowed tails)
  // don't read as maxima.
  std::vector<double> ks, vs;
  for (double k : grid) {
    const double v = profile(k);
    if (!vs.empty() && v == vs.back()) continue;
    ks.push_back(k);
    vs.push_back(v);
  }
  const auto top = std::max_element(vs.begin(), vs.end()) - vs.begin();
  if (top == 0 || top + 1 == static_cast<std::ptrdiff_t>(vs.size()))
    throw NoInteriorMaximumError(
        std::string(model.name()) +
        ": sampled profile is monotone over the bracket (no interior maximum)");

  int peaks = 0;
  for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
    const double margin = 1e-12 * std::fabs(vs[i]);
    if (vs[i] - vs[i - 1] > margin && vs[i] - vs[i + 1] > margin) ++peaks;
  }
  if (peaks > 1)
    throw NoInteriorMaximumError(std::string(model.name()) +
                                 ": sampled profile has " +
                                 std::to_string(peaks) + " local maxima");

  const double k_star =
      search::golden_section_max(profile, ks[top - 1], ks[top + 1], 1e-10);
  return {k_star, eval_omega(model, k_star)};
}

std::string_view to_string(Branch b) {
  return b == Branch::Rising ? "rising" : "decaying";
}

Branch branch_from_string(std::string_view s) {
  if (s == "rising") return Branch::Rising;
  if (s == "decaying") return Branch::Decaying;
  throw ConfigError("unknown branch '" + std::string(s) + "'");
}

double find_k_h(const DispersionModel& model, double H0, Branch branch) {
  if (!(H0 > 0.0) || !std::isfinite(H0))
    throw DomainError("H0 must be finite and positive");
  const Hump hump = find_hump(model);
  if (H0 >= hump.omega_star)
    throw NoRootError("H0 = " + std::to_string(H0) +
                      " is not below the hump maximum omega* = " +
                      std::to_string(hump.omega_star));

  const double target = H0 * H0;
  auto excess = [&](double k) { return eval_omega_squared(model, k) - target; };
  constexpr double kRelTol = 1e-12;

  if (branch == Branch::Rising) {
    if (excess(0.0) >= 0.0)
      throw NoRootError("omega(0) is not below H0 on the rising branch");
    return search::bisect(excess, 0.0, hump.k_star, kRelTol);
  }

  double lo = hump.k_star;
  double hi;
  if (model.has_cutoff()) {
    hi = model.k_p();
    if (excess(hi) >= 0.0)
      throw NoRootError("omega(k_p) is not below H0 on the decaying branch");
  } else {
    hi = std::max(2.0 * lo, model.k_p());
    int doublings = 0;
    while (excess(hi) >= 0.0) {
      lo = hi;
      hi *= 2.0;
      if (++doublings > 1000 || !std::isfinite(hi))
        throw NoRootError("omega never drops below H0 on the decaying branch");
    }
  }
  return search::bisect(excess, lo, hi, kRelTol);
}

Beta3Report effective_beta3(const DispersionModel& model) {
  double beta = 0.0;
  if (const auto* m = std::get_if<ModifiedMS>(&model.variant())) {
    beta = m->beta;
  } else if (const auto* g = std::get_if<GeneralizedL>(&model.variant());
             g && g->L == 1.0) {
    beta = g->beta;
  } else {
    throw DomainError(
        "effective beta3 needs a ModifiedMS or GeneralizedL(L = 1) model");
  }

  const double k_p = model.k_p();
  double alpha = 1.0;
  std::visit(overloaded{[&](const ModifiedMS& m) { alpha = m.alpha; },
                        [&](const GeneralizedL& m) { alpha = m.alpha; },
                        [](const auto&) {}},
             model.variant());

  // y(x) = (α k / ω - 1) / x = β₃ + O(x); least-squares line, keep intercept.
  constexpr int n = 41;
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    const double x = 1e-8 * std::pow(100.0, static_cast<double>(i) / (n - 1));
    const double k = x * k_p;
    xs[i] = x;
    ys[i] = (alpha * k / eval_omega(model, k) - 1.0) / x;
  }
  const double mx = compensated_sum(xs) / n;
  const double my = compensated_sum(ys) / n;
  CompensatedSum sxy, sxx;
  for (int i = 0; i < n; ++i) {
    sxy.add((xs[i] - mx) * (ys[i] - my));
    sxx.add((xs[i] - mx) * (xs[i] - mx));
  }
  const double slope = sxy.value() / sxx.value();

  Beta3Report r;
  r.analytic = 11.0 * beta + 1.0;
  r.fitted = my - slope * mx;
  r.relative_mismatch = std::fabs(r.fitted - r.analytic) / r.analytic;
  if (r.relative_mismatch > 1e-3)
    throw FitMismatchError("beta3 fit " + std::to_string(r.fitted) +
                           " disagrees with 11*beta+1 = " +
                           std::to_string(r.analytic));
  return r;
}

double ms_energy(double m, double E_p) {
  if (!(m >= 0.0)) throw DomainError("mass must be nonnegative");
  if (!(E_p > 0.0) || !std::isfinite(E_p))
    throw DomainError("E_p must be finite and positive");
  if (std::isinf(m)) return E_p;
  return m / (1.0 + m / E_p);
}

}  // namespace transplanck
