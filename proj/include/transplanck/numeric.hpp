#pragma once

#include <cmath>
#include <span>

#ifdef __FAST_MATH__
#error fast math enabled, this would negate compensation.
#endif

namespace transplanck {

/// Kahan-Babuska-Neumaier running sum.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

/// 1 / (1 + e^{-t}) without overflow for either sign of t.
inline double logistic(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

/// log(1 / (1 + e^{-t})).
inline double log_logistic(double t) {
  if (t >= 0.0) return -std::log1p(std::exp(-t));
  return t - std::log1p(std::exp(t));
}

/// log(sinh(u)) for u > 0, finite for arguments far beyond sinh overflow.
inline double log_sinh(double u) {
  if (u > 20.0) return u - std::log(2.0) + std::log1p(-std::exp(-2.0 * u));
  return std::log(std::sinh(u));
}

/// log(e^a + e^b) with -inf treated as an empty term.
inline double log_add_exp(double a, double b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace transplanck
