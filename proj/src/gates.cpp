#include "threefold/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace threefold {

std::vector<cx> AntiunitaryOp::apply(const std::vector<cx>& v) const {
  if (!conjugates) return matrix.apply(v);
  std::vector<cx> vc(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) vc[i] = std::conj(v[i]);
  return matrix.apply(vc);
}

AntiunitaryOp AntiunitaryOp::inverse() const {
  if (!conjugates) return {matrix.adjoint(), false};
  // (M K)^{-1} = M^T K
  return {matrix.transpose(), true};
}

AntiunitaryOp compose(const AntiunitaryOp& a, const AntiunitaryOp& b) {
  const Matrix m = a.conjugates ? a.matrix * b.matrix.conjugate() : a.matrix * b.matrix;
  return {m, a.conjugates != b.conjugates};
}

double antiunitary_distance(const AntiunitaryOp& a, const AntiunitaryOp& b) {
  if (!a.matrix.same_shape(b.matrix))
    throw std::invalid_argument("antiunitary_distance: shape mismatch");
  const std::size_t n = a.matrix.cols();
  double mx = 0.0;
  std::vector<cx> e(n, cx(0.0, 0.0));
  for (const cx probe : {cx(1.0, 0.0), cx(0.0, 1.0)}) {
    for (std::size_t k = 0; k < n; ++k) {
      e[k] = probe;
      const auto va = a.apply(e), vb = b.apply(e);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::norm(va[i] - vb[i]);
      mx = std::max(mx, std::sqrt(s));
      e[k] = cx(0.0, 0.0);
    }
  }
  return mx;
}

Matrix regular_permutation(const FiniteGroup& g0, int g) {
  Matrix d(g0.order, g0.order);
  for (int h = 0; h < g0.order; ++h) d(g0.times(g, h), h) = cx(1.0, 0.0);
  return d;
}

AntiunitaryOp time_reversal_op(const FiniteGroup& g0,
                               const TimeReversalStructure& trs) {
  Matrix p(g0.order, g0.order);
  for (int g = 0; g < g0.order; ++g) p(trs.apply(g), g) = cx(1.0, 0.0);
  return {p, true};
}

void check_state_scale(const FiniteGroup& g0) {
  if (g0.order > 12)
    throw std::invalid_argument(
        "state-level constructions are limited to |G0| <= 12 (got order " +
        std::to_string(g0.order) + ")");
}

std::vector<std::vector<cx>> symmetric_basis(const FiniteGroup& g0) {
  check_state_scale(g0);
  const int n = g0.order;
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<std::vector<cx>> basis;
  basis.reserve(n);
  for (int g = 0; g < n; ++g) {
    std::vector<cx> psi(static_cast<std::size_t>(n) * n, cx(0.0, 0.0));
    for (int h = 0; h < n; ++h) psi[g0.times(h, g) * n + h] = cx(norm, 0.0);
    basis.push_back(std::move(psi));
  }
  return basis;
}

Matrix symmetric_projector(const FiniteGroup& g0) {
  check_state_scale(g0);
  const int n = g0.order;
  Matrix p(n * n, n * n);
  const auto basis = symmetric_basis(g0);
  for (const auto& psi : basis)
    for (int r = 0; r < n * n; ++r) {
      if (psi[r] == cx(0.0, 0.0)) continue;
      for (int c = 0; c < n * n; ++c) p(r, c) += psi[r] * std::conj(psi[c]);
    }
  return p;
}

Matrix omega_gate(const FiniteGroup& g0, const TwoCocycle& omega) {
  check_state_scale(g0);
  const int n = g0.order;
  Matrix w(n * n, n * n);
  for (int gl = 0; gl < n; ++gl)
    for (int gr = 0; gr < n; ++gr) {
      const int idx = gl * n + gr;
      w(idx, idx) = omega.value(gr, g0.times(g0.inverse(gr), gl));
    }
  return w;
}

Matrix sigma_y() {
  Matrix y(2, 2);
  y(0, 1) = cx(0.0, -1.0);
  y(1, 0) = cx(0.0, 1.0);
  return y;
}

Matrix upsilon_gate() {
  const Matrix yy = kron(sigma_y(), sigma_y());
  Matrix u = Matrix::identity(4) - yy * cx(0.0, 1.0);
  u *= cx(0.5, -0.5);
  return u;
}

Matrix concentrator(const FiniteGroup& g0, const TimeReversalStructure& trs) {
  check_state_scale(g0);
  const int n = g0.order;
  Matrix u1(n * n, n * n);
  for (int x = 0; x < n; ++x) {
    const int g = g0.inverse(x);
    for (int a = 0; a < n; ++a) u1(g0.times(g, a) * n + x, a * n + x) = cx(1.0, 0.0);
  }
  const cx w8(std::sqrt(0.5), std::sqrt(0.5));  // e^{i pi/4}
  const double inv_sqrt2 = std::sqrt(0.5);
  Matrix u2_small(n, n);
  for (int g = 0; g < n; ++g) {
    u2_small(g, g) += w8 * inv_sqrt2;
    u2_small(trs.apply(g), g) += std::conj(w8) * inv_sqrt2;
  }
  return kron(u2_small, Matrix::identity(n)) * u1;
}

ProjectiveRep fractionalized_rep(const FiniteGroup& g0, const TwoCocycle& omega) {
  check_state_scale(g0);
  ProjectiveRep rep = projective_regular_rep(g0, omega);
  const Matrix og = omega_gate(g0, omega);
  double resid = 0.0;
  for (int g = 0; g < g0.order; ++g) {
    const Matrix d = regular_permutation(g0, g);
    const Matrix lhs = og * kron(d, d) * og.adjoint();
    const Matrix rhs = kron(rep.matrices[g], rep.matrices[g].conjugate());
    resid = std::max(resid, distance_max(lhs, rhs));
  }
  if (resid > 1e-10)
    throw std::runtime_error(
        "fractionalized_rep: Omega-conjugation consistency residual " +
        std::to_string(resid));
  return rep;
}

}  // namespace threefold
