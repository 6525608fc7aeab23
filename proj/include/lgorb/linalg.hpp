#pragma once

#include <vector>

#include "lgorb/scalars.hpp"

namespace lgorb {

/// Dense row-major matrix over a cyclotomic field.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const CycNum& fill = CycNum());
  static Matrix identity(std::size_t n, unsigned conductor = 1);
  static Matrix diagonal(const std::vector<CycNum>& d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  CycNum& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const CycNum& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix inverse() const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_diagonal() const;
  CycNum trace() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const CycNum& c, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Kronecker product.
  friend Matrix kron(const Matrix& a, const Matrix& b);

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<CycNum> data_;
};

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m);
std::size_t rank(Matrix m);
/// Basis of the right kernel, one vector per column of the result.
Matrix nullspace(const Matrix& m);
/// A basis of the column span, as a subset of the given columns.
Matrix column_basis(const Matrix& m);
/// Solves m * x = b; returns false if inconsistent.
bool solve(const Matrix& m, const std::vector<CycNum>& b, std::vector<CycNum>& x);
Matrix hcat(const Matrix& a, const Matrix& b);

}  // namespace lgorb
