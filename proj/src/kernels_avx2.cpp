#include "threefold/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

// Complex doubles are interleaved (re, im); one __m256d holds two complexes.
// Complex multiply uses the permute/fmaddsub pattern: with t = im(a)*swap(b),
// fmaddsub(re(a), b, t) yields (re(a)*re(b) - im(a)*im(b),
// re(a)*im(b) + im(a)*re(b)) in the even/odd lanes.

namespace threefold::kernels {

namespace {

inline void acc_row_axpy(std::size_t n, cx alpha, const cx* x, cx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d vre = _mm256_set1_pd(alpha.real());
  const __m256d vim = _mm256_set1_pd(alpha.imag());
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d b = _mm256_loadu_pd(xd + 2 * j);
    const __m256d bs = _mm256_permute_pd(b, 0x5);
    const __m256d t = _mm256_mul_pd(vim, bs);
    const __m256d prod = _mm256_fmaddsub_pd(vre, b, t);
    const __m256d acc = _mm256_add_pd(_mm256_loadu_pd(yd + 2 * j), prod);
    _mm256_storeu_pd(yd + 2 * j, acc);
  }
  for (; j < n; ++j) y[j] += alpha * x[j];
}

void gemm_nn_avx2(std::size_t m, std::size_t k, std::size_t n, const cx* a,
                  const cx* b, cx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cx(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const cx ail = a[i * k + l];
      if (ail == cx(0.0, 0.0)) continue;
      acc_row_axpy(n, ail, b + l * n, c + i * n);
    }
  }
}

void gemm_nc_avx2(std::size_t m, std::size_t k, std::size_t n, const cx* a,
                  const cx* b, cx* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = reinterpret_cast<const double*>(a + i * k);
    for (std::size_t j = 0; j < n; ++j) {
      const double* brow = reinterpret_cast<const double*>(b + j * k);
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      std::size_t l = 0;
      for (; l + 2 <= k; l += 2) {
        const __m256d va = _mm256_loadu_pd(arow + 2 * l);
        const __m256d vb = _mm256_loadu_pd(brow + 2 * l);
        const __m256d vas = _mm256_permute_pd(va, 0x5);
        acc0 = _mm256_fmadd_pd(va, vb, acc0);   // pairs sum to re
        acc1 = _mm256_fmadd_pd(vas, vb, acc1);  // pairs diff to im
      }
      const __m256d re = _mm256_hadd_pd(acc0, acc0);  // [r0,r0,r1,r1]
      const __m256d im = _mm256_hsub_pd(acc1, acc1);  // [i0,i0,i1,i1]
      const __m256d packed = _mm256_blend_pd(re, im, 0xA);
      alignas(32) double tmp[4];
      _mm256_store_pd(tmp, packed);
      cx accs(tmp[0] + tmp[2], tmp[1] + tmp[3]);
      for (; l < k; ++l) accs += a[i * k + l] * std::conj(b[j * k + l]);
      c[i * n + j] = accs;
    }
  }
}

void axpy_avx2(std::size_t n, cx alpha, const cx* x, cx* y) {
  acc_row_axpy(n, alpha, x, y);
}

double sum_abs2_avx2(std::size_t n, const cx* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(xd + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double tmp[4];
  _mm256_store_pd(tmp, acc);
  double s = tmp[0] + tmp[1] + tmp[2] + tmp[3];
  for (; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

double max_abs_diff_avx2(std::size_t n, const cx* a, const cx* b) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  __m256d mx = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(ad + 2 * i),
                                    _mm256_loadu_pd(bd + 2 * i));
    const __m256d sq = _mm256_mul_pd(d, d);
    // abs^2 per complex in both lanes of each pair
    const __m256d abs2 = _mm256_add_pd(sq, _mm256_permute_pd(sq, 0x5));
    mx = _mm256_max_pd(mx, abs2);
  }
  alignas(32) double tmp[4];
  _mm256_store_pd(tmp, mx);
  double m2 = tmp[0];
  if (tmp[1] > m2) m2 = tmp[1];
  if (tmp[2] > m2) m2 = tmp[2];
  if (tmp[3] > m2) m2 = tmp[3];
  double m = std::sqrt(m2);
  for (; i < n; ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

}  // namespace

const Ops avx2_ops = {gemm_nn_avx2, gemm_nc_avx2, axpy_avx2, sum_abs2_avx2,
                      max_abs_diff_avx2, "avx2"};

}  // namespace threefold::kernels

#endif  // x86-64
