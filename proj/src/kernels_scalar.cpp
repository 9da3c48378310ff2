#include "threefold/kernels.hpp"

#include <cmath>

namespace threefold::kernels {

namespace {

void gemm_nn_scalar(std::size_t m, std::size_t k, std::size_t n, const cx* a,
                    const cx* b, cx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cx(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const cx ail = a[i * k + l];
      if (ail == cx(0.0, 0.0)) continue;
      const cx* brow = b + l * n;
      cx* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
}

void gemm_nc_scalar(std::size_t m, std::size_t k, std::size_t n, const cx* a,
                    const cx* b, cx* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const cx* arow = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const cx* brow = b + j * k;
      cx acc(0.0, 0.0);
      for (std::size_t l = 0; l < k; ++l) acc += arow[l] * std::conj(brow[l]);
      c[i * n + j] = acc;
    }
  }
}

void axpy_scalar(std::size_t n, cx alpha, const cx* x, cx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_abs2_scalar(std::size_t n, const cx* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

double max_abs_diff_scalar(std::size_t n, const cx* a, const cx* b) {
  double mx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (d > mx) mx = d;
  }
  return mx;
}

}  // namespace

const Ops scalar_ops = {gemm_nn_scalar, gemm_nc_scalar, axpy_scalar,
                        sum_abs2_scalar, max_abs_diff_scalar, "scalar"};

}  // namespace threefold::kernels
