#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "nanomass/error.hpp"

namespace nanomass::numerics {

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_evaluations = 1'000'000;
  /// Interior points where the integrand has structure (peaks, kinks).
  /// Points outside (a, b) are ignored.
  std::vector<double> breakpoints;
};

/// Raised when adaptive integration stops short of the requested tolerance.
/// Carries the best estimate obtained so far.
class QuadratureError : public Error {
 public:
  QuadratureError(ErrorKind kind, std::string message, QuadratureResult partial)
      : Error(kind, std::move(message)), partial_(partial) {}
  const QuadratureResult& partial() const noexcept { return partial_; }

 private:
  QuadratureResult partial_;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f1{}, f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double pair = f1[j] + f2[j];
    kronrod += kronrod_weights[j] * pair;
    abs_sum += kronrod_weights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kronrod_weights[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j)
    asc += kronrod_weights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double value = kronrod * half;
  const double abs_value = abs_sum * std::abs(half);
  asc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (abs_value > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * abs_value, err);
  return {a, b, value, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b]. The
/// interval with the largest error estimate is bisected until the total
/// error is below max(abs_tol, rel_tol * |value|).
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
  if (!(a < b)) throw Error(ErrorKind::validation_error, "integrate_adaptive: requires a < b");
  if (!(opts.rel_tol > 0.0) && !(opts.abs_tol > 0.0))
    throw Error(ErrorKind::validation_error, "integrate_adaptive: tolerance must be positive");

  std::vector<double> cuts{a};
  for (double p : opts.breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  constexpr std::size_t evals_per_rule = 15;
  std::priority_queue<detail::Segment> heap;
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto seg = detail::kronrod15(f, cuts[i], cuts[i + 1]);
    total.evaluations += evals_per_rule;
    total.value += seg.value;
    total.est_error += seg.error;
    heap.push(seg);
  }

  auto resum = [&] {
    auto copy = heap;
    total.value = 0.0;
    total.est_error = 0.0;
    while (!copy.empty()) {
      total.value += copy.top().value;
      total.est_error += copy.top().error;
      copy.pop();
    }
  };

  auto converged = [&] {
    return total.est_error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total.value));
  };

  for (;;) {
    if (!std::isfinite(total.value) || !std::isfinite(total.est_error))
      throw QuadratureError(ErrorKind::tolerance_not_met, "integrate_adaptive: integrand is not finite on [a, b]",
                            total);
    if (converged()) break;
    if (total.evaluations + 2 * evals_per_rule > opts.max_evaluations)
      throw QuadratureError(ErrorKind::evaluation_cap_exceeded,
                            "integrate_adaptive: evaluation cap of " + std::to_string(opts.max_evaluations) +
                                " reached",
                            total);
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    const double scale = std::max(std::abs(worst.a), std::abs(worst.b));
    if (worst.b - worst.a <= 100.0 * std::numeric_limits<double>::epsilon() * scale || mid <= worst.a ||
        mid >= worst.b)
      throw QuadratureError(ErrorKind::tolerance_not_met,
                            "integrate_adaptive: interval cannot be subdivided further", total);
    heap.pop();
    auto left = detail::kronrod15(f, worst.a, mid);
    auto right = detail::kronrod15(f, mid, worst.b);
    total.evaluations += 2 * evals_per_rule;
    total.value += left.value + right.value - worst.value;
    total.est_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);

    // Running sums drift; the heap is the better record.
    if (total.evaluations % (evals_per_rule * 64) == 0) resum();
  }
  resum();
  return total;
}

}  // namespace nanomass::numerics
