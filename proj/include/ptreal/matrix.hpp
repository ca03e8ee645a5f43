#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ptreal/error.hpp"

namespace ptreal {

using cplx = std::complex<double>;

/// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RMatrix = Matrix<double>;
using CMatrix = Matrix<cplx>;
using CVector = std::vector<cplx>;

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::invalid_input, "matrix product: inner dimensions differ");
  }
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T(0)) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::invalid_input, "matrix difference: shapes differ");
  }
  Matrix<T> c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] -= bd[i];
  return c;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline CMatrix conj(const CMatrix& a) {
  CMatrix c = a;
  for (auto& z : c.data()) z = std::conj(z);
  return c;
}

inline CMatrix adjoint(const CMatrix& a) { return transpose(conj(a)); }

inline CMatrix to_complex(const RMatrix& a) {
  CMatrix c(a.rows(), a.cols());
  auto ad = a.data();
  auto cd = c.data();
  for (std::size_t i = 0; i < ad.size(); ++i) cd[i] = ad[i];
  return c;
}

template <typename T>
double max_abs(const Matrix<T>& a) {
  double m = 0.0;
  for (const auto& z : a.data()) m = std::max(m, static_cast<double>(std::abs(z)));
  return m;
}

inline double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// <u|v> with the conjugate on the left argument.
inline cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

}  // namespace ptreal
