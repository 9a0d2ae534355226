#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

namespace transplanck::quad {

enum class Method {
  AdaptiveSimpson,  ///< bisection-refined Simpson panels, error |S2 - S1| / 15
  GaussLegendre,    ///< composite 10-point Gauss-Legendre, error |G(halves) - G|
};

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct Settings {
  Method method = Method::AdaptiveSimpson;
  double rel_tol = 1e-10;
  /// Absolute floor on the acceptance threshold; keeps integrals whose
  /// samples are all zero or subnormal from spinning forever.
  double abs_tol = 1e-300;
  /// Maximum bisection depth of any panel below the initial partition.
  int max_subdivisions = 60;
  std::size_t max_panels = std::size_t{1} << 20;
};

struct Result {
  double value = 0.0;
  double error = 0.0;  ///< sum of per-panel refinement differences
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

/// Globally adaptive integration of f over [lo, hi].
///
/// The interval is first split into a uniform mesh plus geometrically
/// shrinking panels toward `lo`, so that narrow features near the lower end
/// (a dispersion hump at 1e-4 of the range, say) are seen by the first
/// sweep. The panel with the largest error estimate is then bisected until
///   error <= max(rel_tol * |value|, abs_tol).
/// Panel values are accumulated with compensated summation.
///
/// Throws NonConvergenceError if a panel would exceed max_subdivisions or
/// the panel budget runs out before the tolerance is met.
Result integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Settings& settings = {});

}  // namespace transplanck::quad
