#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "nanomass/numerics/linalg.hpp"

namespace nanomass::numerics {

/// Real polynomial of degree at most four, coefficients highest degree first.
class PolynomialReal {
 public:
  explicit PolynomialReal(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty() || coeffs_.size() > 5)
      throw std::invalid_argument("PolynomialReal: degree must be between 0 and 4");
    if (coeffs_.front() == 0.0) throw std::invalid_argument("PolynomialReal: leading coefficient is zero");
  }

  std::size_t degree() const { return coeffs_.size() - 1; }
  std::span<const double> coefficients() const { return coeffs_; }
  double operator[](std::size_t i) const { return coeffs_[i]; }

  double operator()(double x) const {
    double r = 0.0;
    for (double c : coeffs_) r = r * x + c;
    return r;
  }

  double derivative(double x) const {
    double r = 0.0;
    const std::size_t n = degree();
    for (std::size_t i = 0; i < n; ++i) r = r * x + coeffs_[i] * static_cast<double>(n - i);
    return r;
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  std::vector<double> coeffs_;
};

/// Real roots of a cubic in ascending order, repeated roots listed with
/// multiplicity. Returns either one or three values.
inline std::vector<double> cubic_real_roots(const PolynomialReal& p) {
  if (p.degree() != 3) throw std::invalid_argument("cubic_real_roots: polynomial must have degree 3");

  // Monic form x^3 + a x^2 + b x + c, then the depressed cubic t^3 + P t + R
  // with x = t - a/3.
  const double a = p[1] / p[0];
  const double b = p[2] / p[0];
  const double c = p[3] / p[0];
  const double shift = a / 3.0;
  const double P = b - a * a / 3.0;
  const double R = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double half_r = R / 2.0;
  const double third_p = P / 3.0;
  const double disc = half_r * half_r + third_p * third_p * third_p;

  std::vector<double> roots;
  const double scale = std::max({std::abs(a), std::sqrt(std::abs(b)), std::cbrt(std::abs(c)), 1e-300});
  const double disc_tol = 1e-14 * std::pow(scale, 6);

  if (P == 0.0 && R == 0.0) {
    roots.assign(3, -shift);
  } else if (disc > disc_tol) {
    const double s = std::sqrt(disc);
    const double t = std::cbrt(-half_r + s) + std::cbrt(-half_r - s);
    roots.push_back(t - shift);
  } else if (disc < -disc_tol) {
    const double m = 2.0 * std::sqrt(-third_p);
    const double arg = std::clamp(3.0 * R / (P * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift);
  } else if (P == 0.0) {
    roots.assign(3, -shift);
  } else {
    // Double root: t1 = 3R/P (simple), t2 = -3R/(2P) (double).
    const double simple = 3.0 * R / P;
    const double dbl = -1.5 * R / P;
    roots = {simple - shift, dbl - shift, dbl - shift};
  }

  for (double& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const double d = p.derivative(r);
      if (d == 0.0) break;
      const double step = p(r) / d;
      const double next = r - step;
      if (!std::isfinite(next) || std::abs(p(next)) > std::abs(p(r))) break;
      r = next;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Characteristic polynomial det(sI - A) by the Faddeev-LeVerrier
/// recursion; coefficients highest degree first, leading coefficient 1.
template <std::size_t N>
std::array<double, N + 1> characteristic_polynomial(const Matrix<N>& a) {
  std::array<double, N + 1> coeffs{};
  coeffs[0] = 1.0;
  Matrix<N> m{};
  const Matrix<N> id = Matrix<N>::identity();
  for (std::size_t k = 1; k <= N; ++k) {
    m = a * m + coeffs[k - 1] * id;
    coeffs[k] = -(a * m).trace() / static_cast<double>(k);
  }
  return coeffs;
}

enum class HurwitzCondition {
  none,
  a3_positive,
  a2_positive,
  a1_positive,
  a0_positive,
  hurwitz_det2_positive,
  hurwitz_det3_positive,
};

constexpr std::string_view to_string(HurwitzCondition c) {
  switch (c) {
    case HurwitzCondition::none: return "none";
    case HurwitzCondition::a3_positive: return "a3>0";
    case HurwitzCondition::a2_positive: return "a2>0";
    case HurwitzCondition::a1_positive: return "a1>0";
    case HurwitzCondition::a0_positive: return "a0>0";
    case HurwitzCondition::hurwitz_det2_positive: return "a3*a2-a4*a1>0";
    case HurwitzCondition::hurwitz_det3_positive: return "a3*a2*a1-a4*a1^2-a3^2*a0>0";
  }
  return "unknown";
}

struct HurwitzResult {
  bool stable = false;
  HurwitzCondition first_failed = HurwitzCondition::none;
  double det2 = 0.0;
  double det3 = 0.0;
};

/// Routh-Hurwitz test for a4 s^4 + a3 s^3 + a2 s^2 + a1 s + a0. Stable
/// means every root has a strictly negative real part; roots on the
/// imaginary axis are rejected.
inline HurwitzResult routh_hurwitz_quartic(std::array<double, 5> c) {
  if (c[0] == 0.0) throw std::invalid_argument("routh_hurwitz_quartic: leading coefficient is zero");
  if (c[0] < 0.0)
    for (double& v : c) v = -v;

  const double a4 = c[0], a3 = c[1], a2 = c[2], a1 = c[3], a0 = c[4];
  HurwitzResult r;
  r.det2 = a3 * a2 - a4 * a1;
  r.det3 = a3 * a2 * a1 - a4 * a1 * a1 - a3 * a3 * a0;

  if (!(a3 > 0.0)) r.first_failed = HurwitzCondition::a3_positive;
  else if (!(a2 > 0.0)) r.first_failed = HurwitzCondition::a2_positive;
  else if (!(a1 > 0.0)) r.first_failed = HurwitzCondition::a1_positive;
  else if (!(a0 > 0.0)) r.first_failed = HurwitzCondition::a0_positive;
  else if (!(r.det2 > 0.0)) r.first_failed = HurwitzCondition::hurwitz_det2_positive;
  else if (!(r.det3 > 0.0)) r.first_failed = HurwitzCondition::hurwitz_det3_positive;
  r.stable = r.first_failed == HurwitzCondition::none;
  return r;
}

inline HurwitzResult routh_hurwitz_quartic(const PolynomialReal& p) {
  if (p.degree() != 4) throw std::invalid_argument("routh_hurwitz_quartic: polynomial must have degree 4");
  return routh_hurwitz_quartic(std::array<double, 5>{p[0], p[1], p[2], p[3], p[4]});
}

}  // namespace nanomass::numerics
