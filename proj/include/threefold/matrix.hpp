#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace threefold {

using cx = std::complex<double>;

// Dense row-major complex matrix. Hot products go through the kernels layer.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cx(0.0, 0.0)) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return a_.size(); }
  cx* data() { return a_.data(); }
  const cx* data() const { return a_.data(); }

  cx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  Matrix operator*(const Matrix& rhs) const;
  // this * rhs^dagger
  Matrix times_adjoint(const Matrix& rhs) const;
  // this * this^dagger (Gram matrix of rows; for W it is the reduced density
  // up to normalization)
  Matrix gram_of_rows() const { return times_adjoint(*this); }

  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator*(cx s) const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(cx s);

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conjugate() const;

  cx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  // max_ij |this_ij - rhs_ij|
  double max_abs_diff(const Matrix& rhs) const;

  std::vector<cx> apply(const std::vector<cx>& v) const;

  bool same_shape(const Matrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<cx> a_;
};

Matrix kron(const Matrix& a, const Matrix& b);

// ||A - B|| in max-abs; asserts same shape.
double distance_max(const Matrix& a, const Matrix& b);

// || A*A^dagger - 1 || in max-abs: unitarity residual.
double unitarity_residual(const Matrix& a);

}  // namespace threefold
