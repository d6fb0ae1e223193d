#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hpt/ring.hpp"

namespace hpt {

/// Dense row-major matrix of exact scalars. Ring-agnostic: callers that work
/// over Z/p normalize results through `Ring::reduce`.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<Scalar>& data() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;

  Matrix transpose() const;
  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Scalar& s);

  void reduce(const Ring& ring);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Scalar s, Matrix a);

/// Exact determinant by elimination over Q (entries may be any rationals).
Scalar determinant(const Matrix& m);

/// Rank over the fraction field of `ring` (Q for Z and Q, Z/p for Zp).
std::size_t rank(const Matrix& m, const Ring& ring);

/// Inverse over the fraction field of `ring` (Z/p for Zp), or nullopt when
/// `m` is singular. Over Z the inverse must also be integral.
std::optional<Matrix> inverse(const Matrix& m, const Ring& ring);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace hpt
