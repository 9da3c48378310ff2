#include "threefold/matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "threefold/kernels.hpp"

namespace threefold {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = cx(1.0, 0.0);
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("Matrix::*: shape mismatch");
  Matrix out(rows_, rhs.cols_);
  kernels::active().gemm_nn(rows_, cols_, rhs.cols_, data(), rhs.data(),
                            out.data());
  return out;
}

Matrix Matrix::times_adjoint(const Matrix& rhs) const {
  if (cols_ != rhs.cols_)
    throw std::invalid_argument("Matrix::times_adjoint: shape mismatch");
  Matrix out(rows_, rhs.rows_);
  kernels::active().gemm_nc(rows_, cols_, rhs.rows_, data(), rhs.data(),
                            out.data());
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  Matrix out = *this;
  out += rhs;
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  Matrix out = *this;
  out -= rhs;
  return out;
}

Matrix Matrix::operator*(cx s) const {
  Matrix out = *this;
  out *= s;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (!same_shape(rhs)) throw std::invalid_argument("Matrix::+=: shape mismatch");
  kernels::active().axpy(a_.size(), cx(1.0, 0.0), rhs.data(), data());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (!same_shape(rhs)) throw std::invalid_argument("Matrix::-=: shape mismatch");
  kernels::active().axpy(a_.size(), cx(-1.0, 0.0), rhs.data(), data());
  return *this;
}

Matrix& Matrix::operator*=(cx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(j, i) = std::conj((*this)(i, j));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix Matrix::conjugate() const {
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = std::conj(a_[i]);
  return out;
}

cx Matrix::trace() const {
  cx t(0.0, 0.0);
  const std::size_t n = rows_ < cols_ ? rows_ : cols_;
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  return std::sqrt(kernels::active().sum_abs2(a_.size(), data()));
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::max_abs_diff(const Matrix& rhs) const {
  if (!same_shape(rhs))
    throw std::invalid_argument("Matrix::max_abs_diff: shape mismatch");
  return kernels::active().max_abs_diff(a_.size(), data(), rhs.data());
}

std::vector<cx> Matrix::apply(const std::vector<cx>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("Matrix::apply: shape mismatch");
  std::vector<cx> out(rows_, cx(0.0, 0.0));
  kernels::active().gemm_nn(rows_, cols_, 1, data(), v.data(), out.data());
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cx f = a(ia, ja);
      if (f == cx(0.0, 0.0)) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
    }
  return out;
}

double distance_max(const Matrix& a, const Matrix& b) {
  return a.max_abs_diff(b);
}

double unitarity_residual(const Matrix& a) {
  return distance_max(a.times_adjoint(a), Matrix::identity(a.rows()));
}

}  // namespace threefold
