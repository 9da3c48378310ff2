#include "threefold/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "threefold/linalg.hpp"

namespace threefold {

double EntanglementSpectrum::sum() const {
  double s = 0.0;
  for (const double v : values) s += v;
  return s;
}

EntanglementSpectrum wishart_spectrum(const Matrix& w, bool normalize) {
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j)
      if (!std::isfinite(w(i, j).real()) || !std::isfinite(w(i, j).imag()))
        throw std::invalid_argument("wishart_spectrum: non-finite entry");
  EntanglementSpectrum out;
  out.values = hermitian_eigenvalues(w.gram_of_rows());
  std::reverse(out.values.begin(), out.values.end());
  const double top = out.values.empty() ? 0.0 : std::max(out.values.front(), 0.0);
  for (auto& v : out.values)
    if (v < 1e-14 * top) v = 0.0;  // PSD noise floor
  if (normalize) {
    const double s = out.sum();
    if (s <= 0.0)
      throw std::invalid_argument("wishart_spectrum: cannot normalize zero spectrum");
    for (auto& v : out.values) v /= s;
    out.normalized = true;
  }
  return out;
}

std::vector<std::pair<double, int>> detect_degeneracies(
    const EntanglementSpectrum& spec, double rtol) {
  if (rtol <= 0.0) throw std::invalid_argument("detect_degeneracies: rtol <= 0");
  std::vector<std::pair<double, int>> out;
  for (const double v : spec.values) {
    if (!out.empty()) {
      const double a = out.back().first;
      const bool same = (a == 0.0 && v == 0.0) || (a > 0.0 && (a - v) < rtol * a);
      if (same) {
        out.back().second++;
        continue;
      }
    }
    out.emplace_back(v, 1);
  }
  return out;
}

BlockTransformResult block_transform(const WMatrix& w, const Matrix& u,
                                     const IrrepDecomposition& dec) {
  const int n = dec.group.order;
  if (w.order != n || u.rows() != static_cast<std::size_t>(n))
    throw std::invalid_argument("block_transform: shape mismatch");
  const Matrix left = kron(Matrix::identity(w.d_l), u);
  const Matrix right = kron(u, Matrix::identity(w.d_r));
  const Matrix t = (left * w.w).times_adjoint(right);

  // class offsets in theta = (alpha, i, j) ordering
  std::vector<int> offset(dec.blocks.size() + 1, 0);
  for (std::size_t a = 0; a < dec.blocks.size(); ++a)
    offset[a + 1] = offset[a] + dec.blocks[a].dim * dec.blocks[a].dim;

  BlockTransformResult res;
  double off = 0.0;
  // support: rows (L, alpha, i, j), cols (alpha', i', j', R) nonzero only for
  // alpha = alpha', i = i'
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const int theta_r = static_cast<int>(r) % n;
    for (std::size_t cidx = 0; cidx < t.cols(); ++cidx) {
      const int theta_c = static_cast<int>(cidx) / w.d_r;
      bool allowed = false;
      for (std::size_t a = 0; a < dec.blocks.size(); ++a) {
        const int d = dec.blocks[a].dim;
        if (theta_r >= offset[a] && theta_r < offset[a + 1] &&
            theta_c >= offset[a] && theta_c < offset[a + 1]) {
          const int ir = (theta_r - offset[a]) / d;
          const int ic = (theta_c - offset[a]) / d;
          allowed = (ir == ic);
          break;
        }
      }
      if (!allowed) off = std::max(off, std::abs(t(r, cidx)));
    }
  }
  res.off_block_residual = off;

  double dev = 0.0;
  for (std::size_t a = 0; a < dec.blocks.size(); ++a) {
    const int d = dec.blocks[a].dim;
    std::vector<Matrix> copies;
    for (int i = 0; i < d; ++i) {
      Matrix blk(static_cast<std::size_t>(w.d_l) * d,
                 static_cast<std::size_t>(w.d_r) * d);
      for (int l = 0; l < w.d_l; ++l)
        for (int j = 0; j < d; ++j)
          for (int rr = 0; rr < w.d_r; ++rr)
            for (int jp = 0; jp < d; ++jp)
              blk(l * d + j, rr * d + jp) =
                  t(static_cast<std::size_t>(l) * n + offset[a] + i * d + j,
                    static_cast<std::size_t>(offset[a] + i * d + jp) * w.d_r + rr);
      if (i > 0) dev = std::max(dev, distance_max(copies.front(), blk));
      copies.push_back(std::move(blk));
    }
    res.blocks.push_back(copies.front());
    res.copies.push_back(std::move(copies));
  }
  res.copy_max_deviation = dev;
  return res;
}

}  // namespace threefold
