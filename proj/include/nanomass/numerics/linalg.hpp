#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "nanomass/error.hpp"

namespace nanomass::numerics {

template <std::size_t N>
using Vector = std::array<double, N>;

/// Fixed-size dense row-major square matrix.
template <std::size_t N>
struct Matrix {
  std::array<double, N * N> data{};

  static constexpr std::size_t size() { return N; }

  constexpr double& operator()(std::size_t row, std::size_t col) { return data[row * N + col]; }
  constexpr double operator()(std::size_t row, std::size_t col) const { return data[row * N + col]; }

  static constexpr Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr Matrix diagonal(const Vector<N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  constexpr Matrix transposed() const {
    Matrix t;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  constexpr double trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += (*this)(i, i);
    return s;
  }

  friend constexpr Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (std::size_t k = 0; k < N * N; ++k) r.data[k] = a.data[k] + b.data[k];
    return r;
  }

  friend constexpr Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (std::size_t k = 0; k < N * N; ++k) r.data[k] = a.data[k] - b.data[k];
    return r;
  }

  friend constexpr Matrix operator*(double s, const Matrix& a) {
    Matrix r;
    for (std::size_t k = 0; k < N * N; ++k) r.data[k] = s * a.data[k];
    return r;
  }

  friend constexpr Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const double aik = a(i, k);
        for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend constexpr Vector<N> operator*(const Matrix& a, const Vector<N>& x) {
    Vector<N> y{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend constexpr bool operator==(const Matrix&, const Matrix&) = default;
};

template <std::size_t N>
double frobenius_norm(const Matrix<N>& m) {
  double s = 0.0;
  for (double v : m.data) s += v * v;
  return std::sqrt(s);
}

template <std::size_t N>
double euclidean_norm(const Vector<N>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

template <std::size_t N>
double max_abs(const Matrix<N>& m) {
  double r = 0.0;
  for (double v : m.data) r = std::max(r, std::abs(v));
  return r;
}

/// Solves `m x = b` by Gaussian elimination with partial pivoting.
/// Throws ErrorKind::singular_system when a pivot falls below
/// N * eps * max|m_ij|.
template <std::size_t N>
Vector<N> linear_solve_dense(Matrix<N> m, Vector<N> b) {
  static_assert(N >= 1 && N <= 16, "dense solver is sized for systems up to 16x16");

  const double threshold = static_cast<double>(N) * std::numeric_limits<double>::epsilon() * max_abs(m);
  if (!(threshold > 0.0)) throw Error(ErrorKind::singular_system, "matrix is identically zero");

  for (std::size_t col = 0; col < N; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < N; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    if (std::abs(m(pivot, col)) <= threshold)
      throw Error(ErrorKind::singular_system, "pivot below threshold in column " + std::to_string(col));

    if (pivot != col) {
      for (std::size_t j = 0; j < N; ++j) std::swap(m(col, j), m(pivot, j));
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < N; ++r) {
      const double factor = m(r, col) / m(col, col);
      if (factor == 0.0) continue;
      m(r, col) = 0.0;
      for (std::size_t j = col + 1; j < N; ++j) m(r, j) -= factor * m(col, j);
      b[r] -= factor * b[col];
    }
  }

  Vector<N> x{};
  for (std::size_t i = N; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < N; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

}  // namespace nanomass::numerics
