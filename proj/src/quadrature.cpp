#include "transplanck/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "transplanck/errors.hpp"
#include "transplanck/numeric.hpp"

namespace transplanck::quad {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::AdaptiveSimpson:
      return "adaptive-simpson";
    case Method::GaussLegendre:
      return "gauss-legendre";
  }
  return "?";
}

Method method_from_string(std::string_view s) {
  if (s == "adaptive-simpson") return Method::AdaptiveSimpson;
  if (s == "gauss-legendre") return Method::GaussLegendre;
  throw ConfigError("unknown quadrature method '" + std::string(s) + "'");
}

namespace {

constexpr int kGaussOrder = 10;

struct GaussRule {
  std::array<double, kGaussOrder> nodes{};
  std::array<double, kGaussOrder> weights{};
};

// Newton iteration on P_n from the Chebyshev initial guesses.
GaussRule make_gauss_rule() {
  GaussRule rule;
  constexpr int n = kGaussOrder;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

struct Panel {
  double a, b;
  int depth;
  // Simpson: samples at a, a+h/4, a+h/2, a+3h/4, b.
  std::array<double, 5> f{};
  // Gauss-Legendre: rule value over the whole panel.
  double coarse = 0.0;
  double estimate = 0.0;
  double error = 0.0;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  }
};

class Integrator {
 public:
  Integrator(const std::function<double(double)>& f, const Settings& s)
      : f_(f), s_(s) {}

  Panel simpson_panel(double a, double b, int depth, double fa, double fm,
                      double fb) {
    Panel p{a, b, depth};
    const double h = b - a;
    const double m = a + 0.5 * h;
    p.f = {fa, eval(a + 0.25 * h), fm, eval(m + 0.25 * h), fb};
    finish_simpson(p);
    return p;
  }

  Panel simpson_panel(double a, double b, int depth) {
    return simpson_panel(a, b, depth, eval(a), eval(a + 0.5 * (b - a)),
                         eval(b));
  }

  Panel gauss_panel(double a, double b, int depth, double coarse) {
    Panel p{a, b, depth};
    const double m = a + 0.5 * (b - a);
    p.coarse = coarse;
    const double fine = gauss(a, m) + gauss(m, b);
    p.estimate = fine;
    p.error = std::fabs(fine - coarse);
    return p;
  }

  Panel initial_panel(double a, double b) {
    if (s_.method == Method::AdaptiveSimpson) return simpson_panel(a, b, 0);
    return gauss_panel(a, b, 0, gauss(a, b));
  }

  std::array<Panel, 2> split(const Panel& p) {
    const double m = p.a + 0.5 * (p.b - p.a);
    if (s_.method == Method::AdaptiveSimpson) {
      return {simpson_panel(p.a, m, p.depth + 1, p.f[0], p.f[1], p.f[2]),
              simpson_panel(m, p.b, p.depth + 1, p.f[2], p.f[3], p.f[4])};
    }
    return {gauss_panel(p.a, m, p.depth + 1, gauss(p.a, m)),
            gauss_panel(m, p.b, p.depth + 1, gauss(m, p.b))};
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  double eval(double x) {
    ++evaluations_;
    const double y = f_(x);
    if (!std::isfinite(y))
      throw NumericalError("integrand is not finite at x = " +
                           std::to_string(x));
    return y;
  }

  void finish_simpson(Panel& p) const {
    const double h = p.b - p.a;
    const auto& f = p.f;
    const double coarse = h / 6.0 * (f[0] + 4.0 * f[2] + f[4]);
    const double fine =
        h / 12.0 * (f[0] + 4.0 * f[1] + 2.0 * f[2] + 4.0 * f[3] + f[4]);
    p.estimate = fine + (fine - coarse) / 15.0;
    p.error = std::fabs(fine - coarse) / 15.0;
  }

  double gauss(double a, double b) {
    const auto& rule = gauss_rule();
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    CompensatedSum sum;
    for (int i = 0; i < kGaussOrder; ++i)
      sum.add(rule.weights[i] * eval(c + r * rule.nodes[i]));
    return r * sum.value();
  }

  const std::function<double(double)>& f_;
  const Settings& s_;
  std::size_t evaluations_ = 0;
};

std::vector<double> initial_mesh(double lo, double hi) {
  constexpr int kUniform = 16;
  constexpr int kDecades = 15;
  std::vector<double> mesh;
  const double w = hi - lo;
  for (int i = 0; i <= kUniform; ++i) mesh.push_back(lo + w * i / kUniform);
  for (int j = 2; j <= kDecades; ++j) mesh.push_back(lo + w * std::pow(10.0, -j));
  std::sort(mesh.begin(), mesh.end());
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());
  mesh.front() = lo;
  mesh.back() = hi;
  return mesh;
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Settings& settings) {
  if (!(settings.rel_tol > 0.0))
    throw ConfigError("quadrature rel_tol must be positive");
  if (settings.max_subdivisions < 10)
    throw ConfigError("quadrature max_subdivisions must be >= 10");
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("integration limits must be finite");
  if (hi < lo) {
    Result r = integrate(f, hi, lo, settings);
    r.value = -r.value;
    return r;
  }
  if (hi == lo) return {};

  Integrator integrator(f, settings);
  std::vector<Panel> heap;
  const ByError by_error;

  const auto mesh = initial_mesh(lo, hi);
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i)
    heap.push_back(integrator.initial_panel(mesh[i], mesh[i + 1]));
  std::make_heap(heap.begin(), heap.end(), by_error);

  double value = 0.0;
  double error = 0.0;
  auto resum = [&] {
    CompensatedSum v, e;
    for (const auto& p : heap) {
      v.add(p.estimate);
      e.add(p.error);
    }
    value = v.value();
    error = e.value();
  };
  auto converged = [&] {
    return error <= std::max(settings.rel_tol * std::fabs(value), settings.abs_tol);
  };

  resum();
  std::size_t splits = 0;
  while (!converged() || (resum(), !converged())) {
    if (heap.size() >= settings.max_panels)
      throw NonConvergenceError("quadrature panel budget exhausted (error " +
                                std::to_string(error) + ")");
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    if (worst.depth >= settings.max_subdivisions) {
      throw NonConvergenceError(
          "quadrature did not reach tolerance within " +
          std::to_string(settings.max_subdivisions) +
          " subdivisions near x = " + std::to_string(worst.a));
    }
    value -= worst.estimate;
    error -= worst.error;
    for (const auto& c : integrator.split(worst)) {
      value += c.estimate;
      error += c.error;
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
    if (++splits % 512 == 0) resum();
  }

  std::sort(heap.begin(), heap.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum total;
  CompensatedSum total_error;
  for (const auto& p : heap) {
    total.add(p.estimate);
    total_error.add(p.error);
  }
  return {total.value(), total_error.value(), heap.size(),
          integrator.evaluations()};
}

}  // namespace transplanck::quad
