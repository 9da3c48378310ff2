#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "threefold/linalg.hpp"
#include "threefold/rng.hpp"

using namespace threefold;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t stream) {
  rng::Stream s(99, rng::Purpose::test, stream);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = s.cnormal(i * c + j);
  return m;
}

Matrix random_hermitian(std::size_t n, std::uint64_t stream) {
  const Matrix a = random_matrix(n, n, stream);
  return (a + a.adjoint()) * cx(0.5, 0.0);
}

Matrix random_real_orthogonal(std::size_t n, std::uint64_t stream) {
  rng::Stream s(17, rng::Purpose::test, stream);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cx(s.normal(i * n + j), 0.0);
  const Matrix h = (a + a.adjoint()) * cx(0.5, 0.0);
  std::vector<double> w;
  Matrix q;
  hermitian_eig(h, w, q);
  return q;  // real input keeps the eigenvectors exactly real
}

}  // namespace

TEST_CASE("jacobi eigensolver: residual below 1e-12 up to dim 64") {
  for (const std::size_t n : {1, 2, 3, 5, 8, 16, 64}) {
    const Matrix a = random_hermitian(n, n);
    std::vector<double> w;
    Matrix v;
    hermitian_eig(a, w, v);
    REQUIRE(w.size() == n);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(w[i] <= w[i + 1]);
    CHECK(unitarity_residual(v) < 1e-12);
    Matrix lambda(n, n);
    for (std::size_t i = 0; i < n; ++i) lambda(i, i) = cx(w[i], 0.0);
    const double resid = distance_max(a * v, v * lambda);
    CHECK(resid < 1e-12 * std::max(1.0, a.max_abs()));
  }
}

TEST_CASE("singular values by dilation agree with the gram route") {
  const Matrix a = random_matrix(8, 12, 3);
  const auto sv = singular_values(a);
  REQUIRE(sv.size() == 8);
  auto gram_eigs = hermitian_eigenvalues(a.gram_of_rows());
  std::reverse(gram_eigs.begin(), gram_eigs.end());
  for (std::size_t i = 0; i < sv.size(); ++i)
    CHECK(sv[i] * sv[i] == doctest::Approx(gram_eigs[i]).epsilon(1e-10));
}

TEST_CASE("polar factor is unitary and leaves a PSD Hermitian part") {
  const Matrix s = random_matrix(6, 6, 4);
  const Matrix u = polar_unitary(s);
  CHECK(unitarity_residual(u) < 1e-11);
  const Matrix p = u.adjoint() * s;
  CHECK(distance_max(p, p.adjoint()) < 1e-10);
  const auto evals = hermitian_eigenvalues(p);
  for (const double e : evals) CHECK(e > -1e-10);
}

TEST_CASE("takagi factorization of a unitary symmetric matrix") {
  for (const std::size_t n : {1, 2, 3, 4, 6}) {
    const Matrix q = random_real_orthogonal(n, 10 + n);
    rng::Stream s(5, rng::Purpose::test, 20 + n);
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double phi = 2.0 * M_PI * s.uniform(i);
      d(i, i) = cx(std::cos(phi), std::sin(phi));
    }
    const Matrix u = q * d * q.transpose();
    const Matrix v = takagi_unitary_symmetric(u);
    CHECK(unitarity_residual(v) < 1e-10);
    CHECK(distance_max(v * v.transpose(), u) < 1e-10);
  }
}

TEST_CASE("kramers basis factors a unitary antisymmetric matrix through Y") {
  for (const std::size_t n : {2, 4, 6}) {
    // random unitary from the polar factor of a Gaussian matrix
    const Matrix wu = polar_unitary(random_matrix(n, n, 30 + n));
    const Matrix y = sigma_y_tensor_identity(n);
    const Matrix u = wu * y * wu.transpose();
    CHECK(distance_max(u, u.transpose() * cx(-1.0, 0.0)) < 1e-12);
    const Matrix v = kramers_pair_basis(u);
    CHECK(unitarity_residual(v) < 1e-10);
    CHECK(distance_max(v * y * v.transpose(), u) < 1e-10);
  }
}

TEST_CASE("degenerate-phase takagi stays stable") {
  // u = identity has a single fully degenerate phase cluster
  const Matrix u = Matrix::identity(5);
  const Matrix v = takagi_unitary_symmetric(u);
  CHECK(distance_max(v * v.transpose(), u) < 1e-12);
}
