#pragma once

#include <vector>

#include "threefold/matrix.hpp"

namespace threefold {

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
// On return A = V * diag(w) * V^dagger with w ascending and V unitary.
// Accuracy is near machine precision for the dimensions used here (<= ~200).
void hermitian_eig(const Matrix& a, std::vector<double>& w, Matrix& v);

// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const Matrix& a);

// Singular values, descending, computed through the Hermitian dilation
// [[0, A], [A^dagger, 0]]. Independent of the Gram-matrix route and used as
// the second algorithm in two-path spectral checks.
std::vector<double> singular_values(const Matrix& a);

// Unitary polar factor of a square nonsingular matrix: S = U * sqrt(S^dag S).
Matrix polar_unitary(const Matrix& s);

// For a unitary symmetric u, a unitary v with u = v * v^T (Takagi).
Matrix takagi_unitary_symmetric(const Matrix& u);

// For a unitary antisymmetric u of even dimension, a unitary v with
// u = v * Y * v^T where Y = sigma_y (x) 1_{d/2}.
Matrix kramers_pair_basis(const Matrix& u);

// Y = sigma_y (x) 1_{d/2} for even d.
Matrix sigma_y_tensor_identity(std::size_t d);

}  // namespace threefold
