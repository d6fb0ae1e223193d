#include "hpt/matrix.hpp"

#include <ostream>
#include <utility>

#include "hpt/error.hpp"

namespace hpt {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorKind::InvalidInput, "matrix data has " + std::to_string(data_.size()) +
                                             " entries, expected " + std::to_string(rows_ * cols_));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorKind::ModuleMismatch, "matrix sum of mismatched shapes");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorKind::ModuleMismatch, "matrix difference of mismatched shapes");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

void Matrix::reduce(const Ring& ring) {
  if (ring.kind() == Ring::Kind::Rationals) return;
  for (auto& x : data_) ring.reduce(x);
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= Scalar(-1); }
Matrix operator*(Scalar s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::ModuleMismatch, "matrix product of incompatible shapes " +
                                               std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                               " * " + std::to_string(b.rows()) + "x" +
                                               std::to_string(b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(b(k, j)) != 0) out(i, j) += x * b(k, j);
      }
    }
  }
  return out;
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  Scalar det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a(pivot, col)) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a(r, col)) == 0) continue;
      Scalar factor = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

std::size_t rank(const Matrix& m, const Ring& ring) {
  Matrix a = m;
  a.reduce(ring);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && sgn(a(pivot, col)) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(rank, c));
    const Scalar inv = ring.kind() == Ring::Kind::PrimeField ? ring.inverse(a(rank, col))
                                                              : Scalar(1) / a(rank, col);
    for (std::size_t r = rank + 1; r < a.rows(); ++r) {
      if (sgn(a(r, col)) == 0) continue;
      Scalar factor = a(r, col) * inv;
      for (std::size_t c = col; c < a.cols(); ++c) {
        a(r, c) -= factor * a(rank, c);
        if (ring.kind() == Ring::Kind::PrimeField) ring.reduce(a(r, c));
      }
    }
    ++rank;
  }
  return rank;
}

std::optional<Matrix> inverse(const Matrix& m, const Ring& ring) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidInput, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const bool modular = ring.kind() == Ring::Kind::PrimeField;
  Matrix a = m;
  if (modular) a.reduce(ring);
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a(pivot, col)) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    for (std::size_t c = 0; c < n; ++c) {
      std::swap(a(pivot, c), a(col, c));
      std::swap(inv(pivot, c), inv(col, c));
    }
    const Scalar scale = modular ? ring.inverse(a(col, col)) : Scalar(1) / a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a(r, col)) == 0) continue;
      const Scalar factor = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= factor * a(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
    if (modular) {
      a.reduce(ring);
      inv.reduce(ring);
    }
  }
  if (ring.kind() == Ring::Kind::Integers) {
    for (const auto& x : inv.data()) {
      if (x.get_den() != 1) return std::nullopt;
    }
  }
  return inv;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c).get_str();
    os << ']';
  }
  return os << ']';
}

}  // namespace hpt
