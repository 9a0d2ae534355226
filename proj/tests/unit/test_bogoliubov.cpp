#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "transplanck/bogoliubov.hpp"
#include "transplanck/errors.hpp"

using namespace transplanck;
using std::numbers::pi;

TEST_CASE("gamma") {
  for (double x0 : {0.0, 0.01, 0.5, 1.0}) CHECK(gamma(0.0, x0) == 0.0);

  CHECK(gamma(0.25, 0.0) == 1.0);
  for (double d : {1e-13, 1e-14, 1e-15}) {
    CHECK(std::fabs(gamma(0.25 * (1 + d), 0.0) - 1.0) < 1e-12);
    CHECK(std::fabs(gamma(0.25 * (1 - d), 0.0) - 1.0) < 1e-12);
    CHECK(std::fabs(gamma(0.25 * (1 + d), 0.0) - gamma(0.25 * (1 - d), 0.0)) < 1e-12);
  }

  // Leading series term: Γ ≈ (π b)² with b = B e^{-x0}.
  for (double B : {1e-8, 1e-6, 1e-4, 1e-3}) {
    const double g = gamma(B, 0.01);
    const double b = B * std::exp(-0.01);
    CHECK(g < 10.0 * (pi * B) * (pi * B));
    CHECK(g == doctest::Approx(pi * pi * b * b).epsilon(5.0 * b));
  }

  CHECK(gamma(1.0, 0.0) == doctest::Approx(std::pow(std::cosh(0.5 * pi * std::sqrt(3.0)), 2)));
  CHECK(gamma(0.1, 0.0) == doctest::Approx(std::pow(std::cos(0.5 * pi * std::sqrt(0.6)), 2)).epsilon(1e-14));
  CHECK_THROWS_AS(gamma(-1e-3, 0.0), DomainError);
}

TEST_CASE("gamma depends on B and x0 only through their product") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double B = 2.0 * u(rng);
    const double x0 = u(rng);
    CHECK(gamma(B, x0) == gamma(B * std::exp(-x0), 0.0));
  }
}

TEST_CASE("omega hats") {
  const BogoliubovParams zero{0.0, 1.0, 0.3};
  CHECK(omega_hat_minus(zero, 2.0) == 0.0);
  CHECK(omega_hat_plus(zero, 2.0) == 0.5);

  const BogoliubovParams one{1.0, 1.0, 0.0};
  CHECK(omega_hat_plus(one, 1.0) == 0.5);
  CHECK(omega_hat_minus(one, 1.0) == 0.5);

  const BogoliubovParams p{1e-3, 2.0, 0.01};
  CHECK(omega_hat_plus(p, 1e12) < 1e-11);
  CHECK(omega_hat_minus(p, 1e12) < 1e-14);
  CHECK_THROWS_AS(omega_hat_plus(p, 0.0), DomainError);
  CHECK_THROWS_AS(omega_hat_minus(p, 0.0), DomainError);
}

TEST_CASE("validate") {
  CHECK_THROWS_AS(validate(BogoliubovParams{2.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(BogoliubovParams{-0.1, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(BogoliubovParams{0.1, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(BogoliubovParams{0.1, 1.0, 1.5}), DomainError);
  CHECK_NOTHROW(validate(BogoliubovParams{}));
}

TEST_CASE("beta_k_squared") {
  for (double k : {1e-3, 0.5, 1.0, 1e6}) CHECK(beta_k_squared({0.0, 1.0, 0.01}, k) == 0.0);

  // 50-digit evaluation of the closed formula.
  CHECK(beta_k_squared({1e-3, 1.0, 1e-2}, 1.0) ==
        doctest::Approx(2.7461321562216782563e-10).epsilon(1e-13));

  CHECK_THROWS_AS(beta_k_squared({1.0, 1.0, 0.0}, 1.0), DegenerateDenominatorError);
  CHECK_THROWS_AS(beta_k_squared({1.5, 1.0, 0.0}, 1.0), DegenerateDenominatorError);
  CHECK_THROWS_AS(beta_k_squared({1e-3, 1.0, 0.0}, 0.0), DomainError);

  // Quadratic growth once the sinh arguments are small.
  const BogoliubovParams p{1e-3, 1.0, 1e-2};
  CHECK(beta_k_squared(p, 2e6) / beta_k_squared(p, 1e6) == doctest::Approx(4.0).epsilon(1e-6));

  // Tiny k: deep exponential suppression but no overflow.
  CHECK(beta_k_squared(p, 1e-4) == 0.0);
  CHECK(std::isfinite(beta_k_squared(p, 1e-2)));
}

TEST_CASE("beta_k_squared matches the direct formula at moderate arguments") {
  for (double B : {1e-3, 0.1, 0.5, 0.9}) {
    for (double k : {2.0, 5.0, 20.0}) {
      const BogoliubovParams p{B, 1.3, 0.2};
      const double ap = 2 * pi * omega_hat_plus(p, k);
      const double am = 2 * pi * omega_hat_minus(p, k);
      const double sp = std::sinh(ap), sm = std::sinh(am);
      const double direct = (sm * sm + gamma(B, 0.2)) / (sp * sp - sm * sm);
      CHECK(beta_k_squared(p, k) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("beta_k_squared is nonnegative and grows with B near zero") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double k = std::pow(10.0, -1.0 + 4.0 * u(rng));
    const double eta = 0.1 + 3.0 * u(rng);
    const double x0 = u(rng);
    const double b = beta_k_squared({0.999 * u(rng), eta, x0}, k);
    CHECK(b >= 0.0);
    CHECK(beta_k_squared({1e-4, eta, x0}, k) < beta_k_squared({1e-3, eta, x0}, k));
  }
}

TEST_CASE("thermal_constant_approx") {
  auto r = thermal_constant_approx({0.0, 1.0, 0.01}, 0.3, 0.7, 41);
  CHECK(r.mean == 0.0);
  CHECK(r.max_relative_deviation == 0.0);

  r = thermal_constant_approx({1e-3, 1.0, 0.01}, 0.3, 0.7, 1);
  CHECK(r.max_relative_deviation == 0.0);
  CHECK(r.mean == beta_k_squared({1e-3, 1.0, 0.01}, 0.3));

  // 41 log-spaced samples, 50-digit oracle.
  r = thermal_constant_approx({1e-3, 1.0, 0.01}, 0.3, 0.7, 41);
  CHECK(r.mean == doctest::Approx(1.5094481704495498457e-13).epsilon(1e-11));
  CHECK(r.max_relative_deviation == doctest::Approx(11.747865445101739838).epsilon(1e-11));

  CHECK_THROWS_AS(thermal_constant_approx({}, 0.7, 0.3, 5), DomainError);
  CHECK_THROWS_AS(thermal_constant_approx({}, 0.0, 0.3, 5), DomainError);
  CHECK_THROWS_AS(thermal_constant_approx({}, 0.1, 0.3, 0), DomainError);
}
