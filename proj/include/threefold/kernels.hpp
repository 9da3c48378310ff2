#pragma once

#include <complex>
#include <cstddef>

// Dense complex arithmetic kernels used by the matrix layer and the
// Monte-Carlo pipeline. Every kernel has a scalar reference implementation
// and (on x86-64) an AVX2 variant; the active set is chosen once at runtime.
// The two variants are equivalence-tested against each other; they may
// differ in the last bits because the AVX2 path uses FMA.

namespace threefold::kernels {

using cx = std::complex<double>;

struct Ops {
  // C (m x n) = A (m x k) * B (k x n), row-major, C overwritten.
  void (*gemm_nn)(std::size_t m, std::size_t k, std::size_t n, const cx* a,
                  const cx* b, cx* c);
  // C (m x n) = A (m x k) * B^dagger where B is (n x k), row-major.
  void (*gemm_nc)(std::size_t m, std::size_t k, std::size_t n, const cx* a,
                  const cx* b, cx* c);
  // y += alpha * x
  void (*axpy)(std::size_t n, cx alpha, const cx* x, cx* y);
  // sum |x_i|^2
  double (*sum_abs2)(std::size_t n, const cx* x);
  // max_i |a_i - b_i|
  double (*max_abs_diff)(std::size_t n, const cx* a, const cx* b);
  const char* name;
};

extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
#endif

bool avx2_available();

// Active kernel set. Selection order: force() if called, else the
// THREEFOLD_KERNELS environment variable ("scalar"|"avx2"|"auto"),
// else the best supported variant.
const Ops& active();

// Override selection (tests). name: "scalar", "avx2" or "auto".
// Throws std::invalid_argument for unknown names or unsupported variants.
void force(const char* name);

}  // namespace threefold::kernels
