#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "transplanck/errors.hpp"
#include "transplanck/reconstruct.hpp"

using namespace transplanck;

namespace {

std::vector<double> uniform(double t0, double t1, int steps) {
  std::vector<double> g(steps + 1);
  for (int i = 0; i <= steps; ++i) g[i] = t0 + (t1 - t0) * i / steps;
  return g;
}

// ω ≡ 0 and ω² = c k² from Epstein parameters with the step pushed away.
DispersionModel silent() { return DispersionModel{EpsteinNonlinear{{0.0, 0.0, 0.0, 0.0, 0.0, 1.0}}}; }
DispersionModel stiff(double c) { return DispersionModel{EpsteinNonlinear{{0.0, c, c, 1e4, 0.0, 1.0}}}; }

ReconstructionConfig constant_k(double k0, std::vector<double> grid) {
  ReconstructionConfig c;
  c.k_init = k0;
  c.c1 = 0.0;
  c.tau_grid = std::move(grid);
  return c;
}

double cosh_error(double h) {
  const auto t = march(constant_k(1.0, uniform(0.0, 2.0, static_cast<int>(std::lround(2.0 / h)))), silent());
  return std::fabs(t.a.back() / std::cosh(2.0) - 1.0);
}

}  // namespace

TEST_CASE("names round-trip") {
  for (auto s : {SignMode::Eq27c, SignMode::Eq27d}) CHECK(sign_mode_from_string(to_string(s)) == s);
  for (auto n : {Normalization::PaperLiteral, Normalization::SecondDerivative})
    CHECK(normalization_from_string(to_string(n)) == n);
  CHECK(to_string(Regime::ExponentialGrowth) == "exponential-growth");
  CHECK_THROWS_AS(sign_mode_from_string("eq27e"), ConfigError);
  CHECK_THROWS_AS(normalization_from_string("first-derivative"), ConfigError);
}

TEST_CASE("momentum_ansatz") {
  ReconstructionConfig c;
  c.k_init = 0.3;
  c.c1 = 0.0;
  for (double t : {0.0, 1.0, 17.0}) CHECK(momentum_ansatz(c, t) == 0.3);

  c = {};
  c.k_init = 0.0;
  c.c1 = 1.0;
  c.k_evol = 0.1;
  c.A = 1.0;
  CHECK(momentum_ansatz(c, 2.0) == doctest::Approx(0.2));

  c.A = -1.0;
  CHECK_THROWS_AS(momentum_ansatz(c, 0.0), DomainError);
  CHECK(momentum_ansatz(c, 1e-3) == doctest::Approx(100.0));

  c.A = 0.5;
  CHECK_THROWS_AS(momentum_ansatz(c, -1.0), DomainError);
  c.A = 2.0;
  CHECK(momentum_ansatz(c, -1.0) == doctest::Approx(0.1));

  c.A = 1.0;
  c.c1 = -1.0;
  CHECK_THROWS_AS(momentum_ansatz(c, 1.0), DomainError);
}

TEST_CASE("second_difference") {
  for (auto n : {Normalization::PaperLiteral, Normalization::SecondDerivative}) {
    CHECK(second_difference(1.0, 3.0, 7.0, 0.0, 1.0, 3.0, n) == doctest::Approx(0.0));
  }
  for (double h : {1.0, 0.1, 1e-3}) {
    auto sq = [](double t) { return t * t; };
    const double t = 0.7;
    CHECK(second_difference(sq(t - h), sq(t), sq(t + h), t - h, t, t + h, Normalization::SecondDerivative) ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(second_difference(sq(t - h), sq(t), sq(t + h), t - h, t, t + h, Normalization::PaperLiteral) ==
          doctest::Approx(2.0 * h).epsilon(1e-9));
  }
  // Exact for quadratics on uneven spacing too.
  CHECK(second_difference(0.0, 1.0, 16.0, 0.0, 1.0, 4.0, Normalization::SecondDerivative) == doctest::Approx(2.0));
  CHECK_THROWS_AS(second_difference(1, 1, 1, 0.0, 0.0, 1.0, Normalization::PaperLiteral), DomainError);
  CHECK_THROWS_AS(second_difference(1, 1, 1, 0.0, 1.0, 1.0, Normalization::PaperLiteral), DomainError);
}

TEST_CASE("validation") {
  auto c = constant_k(1.0, {0.0, 1.0});
  CHECK_THROWS_AS(march(c, silent()), DomainError);
  c.tau_grid = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(march(c, silent()), DomainError);
  c.tau_grid = {0.0, 1.0, 2.0};
  c.a1 = 0.0;
  CHECK_THROWS_AS(march(c, silent()), DomainError);
  c.a1 = 1.0;
  c.tau_star = -1.0;
  CHECK_THROWS_AS(march(c, silent()), DomainError);
  c.tau_star.reset();
  c.a_initial = 0.0;
  CHECK_THROWS_AS(march(c, silent()), DomainError);

  // k(τ) leaving a cutoff law's domain.
  ReconstructionConfig d;
  d.k_init = 0.5;
  d.c1 = 1.0;
  d.tau_grid = uniform(0.0, 1.0, 10);
  CHECK_THROWS_AS(march(d, DispersionModel{ModifiedMS{}}), DomainError);
}

TEST_CASE("linear dispersion keeps a on its initial ramp") {
  const auto grid = uniform(0.0, 5.0, 5000);
  ReconstructionConfig c;
  c.k_init = 0.1;
  c.c1 = 1.0;
  c.k_evol = 0.1;
  c.tau_grid = grid;

  auto t = march(c, linear_dispersion());
  for (double a : t.a) CHECK(std::fabs(a - 1.0) < 1e-12);

  c.a_initial = 0.999;
  c.tau_star = 1e-3;
  t = march(c, linear_dispersion());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ramp = 1.0 + (grid[i] - grid[0]);
    CHECK(std::fabs(t.a[i] / ramp - 1.0) < 1e-12);
  }
  CHECK(std::all_of(t.regime.begin(), t.regime.end(), [](Regime r) { return r == Regime::LinearGrowth; }));

  // The coefficient vanishes, so the sign convention is irrelevant.
  c.sign_mode = SignMode::Eq27d;
  const auto d = march(c, linear_dispersion());
  CHECK(d.a == t.a);
}

TEST_CASE("silent frequency: cosh growth, second order") {
  CHECK(cosh_error(1e-3) < 1e-4);
  const double e1 = cosh_error(2e-3), e2 = cosh_error(1e-3), e3 = cosh_error(5e-4);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.25));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.25));

  const auto t = march(constant_k(1.0, uniform(0.0, 2.0, 2000)), silent());
  CHECK(std::all_of(t.regime.begin(), t.regime.end(), [](Regime r) { return r == Regime::ExponentialGrowth; }));
  CHECK_FALSE(t.zero_crossing);

  // The opposite sign gives cos(k0 τ), crossing zero at π/2.
  auto c = constant_k(1.0, uniform(0.0, 2.0, 2000));
  c.sign_mode = SignMode::Eq27d;
  const auto o = march(c, silent());
  CHECK(o.a.back() == doctest::Approx(std::cos(2.0)).epsilon(1e-5));
  CHECK(o.zero_crossing);
}

TEST_CASE("explicit phantom point") {
  auto c = constant_k(1.0, uniform(0.0, 1.0, 10));
  c.a_initial = 0.5;
  c.tau_star = 0.2;
  const auto t = march(c, silent());
  // Δ² at τ₁ with the phantom at τ₁ - 0.2 must equal u_t a₁ = 1.
  CHECK(second_difference(0.5, 1.0, t.a[1], -0.2, 0.0, 0.1, Normalization::SecondDerivative) ==
        doctest::Approx(1.0).epsilon(1e-13));

  c.normalization = Normalization::PaperLiteral;
  const auto p = march(c, silent());
  CHECK(second_difference(0.5, 1.0, p.a[1], -0.2, 0.0, 0.1, Normalization::PaperLiteral) ==
        doctest::Approx(1.0).epsilon(1e-13));
  for (std::size_t i = 1; i + 1 < p.a.size(); ++i)
    CHECK(second_difference(p.a[i - 1], p.a[i], p.a[i + 1], p.tau[i - 1], p.tau[i], p.tau[i + 1],
                            Normalization::PaperLiteral) == doctest::Approx(p.u_t[i] * p.a[i]).epsilon(1e-9));
}

TEST_CASE("oscillator stays bounded") {
  // ω² = 2 k², k = 1: a'' = -a. h √(ω² - k²) = 0.05.
  const double h = 0.05;
  const auto t = march(constant_k(1.0, uniform(0.0, 1000 * h, 1000)), stiff(2.0));
  CHECK(t.zero_crossing);
  auto energy = [&](std::size_t i) {
    const double v = (t.a[i + 1] - t.a[i]) / h;
    return v * v + t.a[i] * t.a[i + 1];  // conserved exactly by the leapfrog recurrence
  };
  const double e0 = energy(0);
  for (std::size_t i = 0; i + 1 < t.a.size(); ++i) CHECK(std::fabs(energy(i) / e0 - 1.0) < 1e-9);
  double amax = 0.0;
  for (double a : t.a) amax = std::max(amax, std::fabs(a));
  CHECK(amax < 1.01);
  CHECK(std::all_of(t.regime.begin(), t.regime.end(), [](Regime r) { return r == Regime::Intermediate; }));
}

TEST_CASE("blow-up guard") {
  CHECK_THROWS_AS(march(constant_k(100.0, uniform(0.0, 10.0, 10000)), silent()), BlowUpError);
}

TEST_CASE("u_t carries the a''/a the frequency implies") {
  ReconstructionConfig c;
  c.k_init = 1e-6;
  c.c1 = 1.0;
  c.k_evol = 0.3;
  c.A = 1.5;
  c.tau_grid = uniform(0.0, 2.0, 500);
  const DispersionModel m{ModifiedMS{1.0, 10.0, 1.0}};
  const auto t = march(c, m);
  for (std::size_t i = 0; i < t.k.size(); ++i) {
    const double k2 = t.k[i] * t.k[i];
    CHECK(std::fabs(t.u_t[i] + eval_omega_squared(m, t.k[i]) - k2) <= 1e-12 * k2);
  }
}

TEST_CASE("regimes across the hump appear in order") {
  ReconstructionConfig c;
  c.k_init = 1e-8;
  c.c1 = 1.0;
  c.k_evol = 0.99 - 1e-8;
  c.A = 4.0;
  c.tau_grid = uniform(0.0, 1.0, 4000);
  const auto t = march(c, DispersionModel{ModifiedMS{}});
  CHECK(t.regime.front() == Regime::LinearGrowth);
  CHECK(t.regime.back() == Regime::ExponentialGrowth);
  CHECK(std::find(t.regime.begin(), t.regime.end(), Regime::Intermediate) != t.regime.end());
  CHECK(std::is_sorted(t.regime.begin(), t.regime.end()));
}

TEST_CASE("second-order convergence on a smooth problem") {
  // k(τ) = 0.05 + 0.4 τ through an ExpSuppressed law; reference by Richardson.
  const DispersionModel m{ExpSuppressed{1.0, 0.5, 2.0, 1.0}};
  auto final_a = [&](int steps) {
    ReconstructionConfig c;
    c.k_init = 0.05;
    c.c1 = 1.0;
    c.k_evol = 0.4;
    c.tau_grid = uniform(0.0, 1.0, steps);
    return march(c, m).a.back();
  };
  const double f1 = final_a(100000), f2 = final_a(200000);
  const double ref = (4.0 * f2 - f1) / 3.0;
  const double e2 = std::fabs(final_a(100) - ref);
  const double e3 = std::fabs(final_a(1000) - ref);
  const double e4 = std::fabs(final_a(10000) - ref);
  CHECK(e2 / e3 == doctest::Approx(100.0).epsilon(1.0));
  CHECK(e2 / e3 >= 50.0);
  CHECK(e2 / e3 <= 200.0);
  CHECK(e3 / e4 >= 50.0);
  CHECK(e3 / e4 <= 200.0);
}

TEST_CASE("halving a non-uniform grid converges") {
  const DispersionModel m{ExpSuppressed{1.0, 0.5, 2.0, 1.0}};
  std::vector<double> g;
  for (int i = 0; i <= 200; ++i) {
    const double s = i / 200.0;
    g.push_back(s * s * (3.0 - 2.0 * s));  // clustered at both ends
  }
  auto refine = [](const std::vector<double>& x) {
    std::vector<double> y;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      y.push_back(x[i]);
      y.push_back(0.5 * (x[i] + x[i + 1]));
    }
    y.push_back(x.back());
    return y;
  };
  auto final_a = [&](const std::vector<double>& grid) {
    ReconstructionConfig c;
    c.k_init = 0.05;
    c.c1 = 1.0;
    c.k_evol = 0.4;
    c.tau_grid = grid;
    return march(c, m).a.back();
  };
  const auto g1 = refine(g), g2 = refine(g1);
  const double a0 = final_a(g), a1 = final_a(g1), a2 = final_a(g2);
  const double est = std::fabs(a1 - a0) / 3.0;  // Richardson estimate of the error in a1
  CHECK(std::fabs(a2 - a1) < 4.0 * est);
}
