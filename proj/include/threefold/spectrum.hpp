#pragma once

#include <string>
#include <utility>
#include <vector>

#include "threefold/matrix.hpp"
#include "threefold/rep.hpp"
#include "threefold/sampler.hpp"

namespace threefold {

struct EntanglementSpectrum {
  std::vector<double> values;  // descending, nonnegative
  bool normalized = false;
  std::string block_label;

  double sum() const;
};

// Eigenvalues of W W^dagger (= squared singular values of W); values below
// 1e-14 * max are clamped to zero. normalize divides by the trace.
EntanglementSpectrum wishart_spectrum(const Matrix& w, bool normalize);

// Greedy clustering of the sorted values with relative gap < rtol;
// returns (value, multiplicity) pairs.
std::vector<std::pair<double, int>> detect_degeneracies(
    const EntanglementSpectrum& spec, double rtol);

struct BlockTransformResult {
  std::vector<Matrix> blocks;   // copy i = 0 of each class, block_w layout
  std::vector<std::vector<Matrix>> copies;  // per class, all d_alpha copies
  double off_block_residual = 0.0;   // max |entry| outside the predicted support
  double copy_max_deviation = 0.0;   // copies i > 0 against copy 0
};

// (1_{d_L} (x) U) W (U (x) 1_{d_R})^dagger with U the partial diagonalizer;
// extracts the per-(alpha, i) blocks and measures the off-block residual.
BlockTransformResult block_transform(const WMatrix& w, const Matrix& u,
                                     const IrrepDecomposition& dec);

}  // namespace threefold
