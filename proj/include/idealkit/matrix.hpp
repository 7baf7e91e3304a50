#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "idealkit/error.hpp"
#include "idealkit/rational.hpp"

namespace idealkit {

/// Dense matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  /// Elementary matrix E_{ij}.
  static RationalMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    RationalMatrix m(n, n);
    m(i, j) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Row-major flattening.
  const std::vector<Rational>& vec() const { return data_; }
  static RationalMatrix from_vec(std::size_t rows, std::size_t cols, std::vector<Rational> v) {
    RationalMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(v);
    return m;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (sgn(x) != 0) return false;
    return true;
  }

  Rational trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RationalMatrix& operator+=(const RationalMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  RationalMatrix& operator-=(const RationalMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  RationalMatrix& operator*=(const Rational& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& c) { return a *= c; }
  friend RationalMatrix operator*(const Rational& c, RationalMatrix a) { return a *= c; }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DomainError("matrix product dimension mismatch: " + a.shape() + " * " + b.shape());
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DomainError("matrix shape mismatch: " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// XY - YX.
inline RationalMatrix bracket(const RationalMatrix& x, const RationalMatrix& y) {
  if (!x.square() || !y.square() || x.rows() != y.rows())
    throw DomainError("bracket needs equal square matrices, got " + x.shape() + " and " + y.shape());
  return x * y - y * x;
}

/// Block-diagonal embedding of a and b.
inline RationalMatrix direct_sum(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

}  // namespace idealkit
