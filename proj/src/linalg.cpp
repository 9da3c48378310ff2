#include "threefold/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace threefold {

namespace {

double offdiag_sq(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

}  // namespace

void hermitian_eig(const Matrix& a_in, std::vector<double>& w, Matrix& v) {
  if (a_in.rows() != a_in.cols())
    throw std::invalid_argument("hermitian_eig: matrix not square");
  const std::size_t n = a_in.rows();
  // Work on the Hermitized copy; callers may carry ~1e-15 asymmetry.
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (a_in(i, j) + std::conj(a_in(j, i)));
  v = Matrix::identity(n);
  w.assign(n, 0.0);
  if (n == 0) return;
  if (n == 1) {
    w[0] = a(0, 0).real();
    return;
  }

  const double fro = a.frobenius_norm();
  const double tol2 = fro * fro * 1e-30 + 1e-300;

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (offdiag_sq(a) <= tol2) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cx b = a(p, q);
        const double m = std::abs(b);
        if (m <= fro * 1e-18) {
          a(p, q) = cx(0.0, 0.0);
          a(q, p) = cx(0.0, 0.0);
          continue;
        }
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (app - aqq) / (2.0 * m);
        const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
        const double t = sgn / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cx ph = b / m;

        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const cx arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp + s * std::conj(ph) * arq;
          a(r, q) = -s * ph * arp + c * arq;
          a(p, r) = std::conj(a(r, p));
          a(q, r) = std::conj(a(r, q));
        }
        a(p, p) = cx(app + t * m, 0.0);
        a(q, q) = cx(aqq - t * m, 0.0);
        a(p, q) = cx(0.0, 0.0);
        a(q, p) = cx(0.0, 0.0);

        for (std::size_t r = 0; r < n; ++r) {
          const cx vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp + s * std::conj(ph) * vrq;
          v(r, q) = -s * ph * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
  Matrix vs(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = diag[order[k]];
    for (std::size_t r = 0; r < n; ++r) vs(r, k) = v(r, order[k]);
  }
  v = vs;
}

std::vector<double> hermitian_eigenvalues(const Matrix& a) {
  std::vector<double> w;
  Matrix v;
  hermitian_eig(a, w, v);
  return w;
}

std::vector<double> singular_values(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix h(m + n, m + n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      h(i, m + j) = a(i, j);
      h(m + j, i) = std::conj(a(i, j));
    }
  std::vector<double> w = hermitian_eigenvalues(h);
  // spectrum of the dilation is {+sigma, -sigma, 0^(|m-n|)}
  std::vector<double> sv(w.rbegin(), w.rbegin() + std::min(m, n));
  for (auto& s : sv)
    if (s < 0.0) s = 0.0;
  return sv;
}

Matrix polar_unitary(const Matrix& s) {
  if (s.rows() != s.cols())
    throw std::invalid_argument("polar_unitary: matrix not square");
  const std::size_t n = s.rows();
  Matrix g = s.adjoint() * s;
  std::vector<double> w;
  Matrix v;
  hermitian_eig(g, w, v);
  const double wmax = w.empty() ? 0.0 : w.back();
  if (wmax <= 0.0 || w.front() <= wmax * 1e-24)
    throw std::runtime_error("polar_unitary: input numerically singular");
  Matrix scaled(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      scaled(i, k) = v(i, k) / std::sqrt(w[k]);
  return s * scaled.times_adjoint(v);
}

Matrix sigma_y_tensor_identity(std::size_t d) {
  if (d % 2 != 0)
    throw std::invalid_argument("sigma_y_tensor_identity: odd dimension");
  const std::size_t m = d / 2;
  Matrix y(d, d);
  for (std::size_t j = 0; j < m; ++j) {
    y(j, m + j) = cx(0.0, -1.0);
    y(m + j, j) = cx(0.0, 1.0);
  }
  return y;
}

Matrix takagi_unitary_symmetric(const Matrix& u_in) {
  if (u_in.rows() != u_in.cols())
    throw std::invalid_argument("takagi: matrix not square");
  const std::size_t n = u_in.rows();
  Matrix u = (u_in + u_in.transpose()) * cx(0.5, 0.0);

  // A unitary symmetric u has commuting real symmetric Re(u), Im(u);
  // simultaneous real-orthogonal diagonalization gives u = Q diag(mu) Q^T.
  Matrix re(n, n), im(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      re(i, j) = cx(u(i, j).real(), 0.0);
      im(i, j) = cx(u(i, j).imag(), 0.0);
    }
  std::vector<double> wa;
  Matrix qa;
  hermitian_eig(re, wa, qa);

  Matrix q(n, n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start + 1;
    while (stop < n && wa[stop] - wa[stop - 1] < 1e-8) ++stop;
    const std::size_t d = stop - start;
    Matrix qc(n, d);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < d; ++k) qc(r, k) = qa(r, start + k);
    Matrix bc = qc.adjoint() * im * qc;
    std::vector<double> wb;
    Matrix rb;
    hermitian_eig(bc, wb, rb);
    Matrix cols = qc * rb;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < d; ++k) q(r, start + k) = cols(r, k);
    start = stop;
  }

  Matrix v(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    cx mu(0.0, 0.0);
    std::vector<cx> col(n), ucol;
    for (std::size_t r = 0; r < n; ++r) col[r] = q(r, k);
    ucol = u.apply(col);
    for (std::size_t r = 0; r < n; ++r) mu += col[r] * ucol[r];  // q real
    const double half = 0.5 * std::arg(mu);
    const cx phase(std::cos(half), std::sin(half));
    for (std::size_t r = 0; r < n; ++r) v(r, k) = q(r, k) * phase;
  }

  if (distance_max(v * v.transpose(), u) > 1e-10)
    throw std::runtime_error("takagi: factorization residual too large");
  return v;
}

Matrix kramers_pair_basis(const Matrix& u_in) {
  if (u_in.rows() != u_in.cols())
    throw std::invalid_argument("kramers_pair_basis: matrix not square");
  const std::size_t n = u_in.rows();
  if (n % 2 != 0)
    throw std::invalid_argument("kramers_pair_basis: odd dimension");
  const std::size_t m = n / 2;
  Matrix u = (u_in - u_in.transpose()) * cx(0.5, 0.0);

  // T = u K is antiunitary with T^2 = -1; build Kramers pairs a_j, b_j with
  // b_j = -i T a_j, which realizes u = v Y v^T for v = [a_1..a_m b_1..b_m].
  std::vector<std::vector<cx>> cols;
  std::vector<std::vector<cx>> as, bs;
  auto project_out = [&](std::vector<cx>& x) {
    for (const auto& cvec : cols) {
      cx ip(0.0, 0.0);
      for (std::size_t r = 0; r < n; ++r) ip += std::conj(cvec[r]) * x[r];
      for (std::size_t r = 0; r < n; ++r) x[r] -= ip * cvec[r];
    }
  };
  auto norm_of = [&](const std::vector<cx>& x) {
    double s = 0.0;
    for (const auto& e : x) s += std::norm(e);
    return std::sqrt(s);
  };

  for (std::size_t cand = 0; cand < n && as.size() < m; ++cand) {
    std::vector<cx> a(n, cx(0.0, 0.0));
    a[cand] = cx(1.0, 0.0);
    project_out(a);
    project_out(a);
    const double na = norm_of(a);
    if (na < 1e-2) continue;
    for (auto& e : a) e /= na;

    std::vector<cx> ac(n);
    for (std::size_t r = 0; r < n; ++r) ac[r] = std::conj(a[r]);
    std::vector<cx> b = u.apply(ac);
    for (auto& e : b) e *= cx(0.0, -1.0);
    project_out(b);
    cx self(0.0, 0.0);
    for (std::size_t r = 0; r < n; ++r) self += std::conj(a[r]) * b[r];
    for (std::size_t r = 0; r < n; ++r) b[r] -= self * a[r];
    const double nb = norm_of(b);
    if (nb < 0.9)
      throw std::runtime_error("kramers_pair_basis: degenerate pair construction");
    for (auto& e : b) e /= nb;

    cols.push_back(a);
    cols.push_back(b);
    as.push_back(std::move(a));
    bs.push_back(std::move(b));
  }
  if (as.size() != m)
    throw std::runtime_error("kramers_pair_basis: failed to complete basis");

  Matrix v(n, n);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t r = 0; r < n; ++r) {
      v(r, j) = as[j][r];
      v(r, m + j) = bs[j][r];
    }

  const Matrix y = sigma_y_tensor_identity(n);
  if (distance_max(v * y * v.transpose(), u) > 1e-10)
    throw std::runtime_error("kramers_pair_basis: factorization residual too large");
  return v;
}

}  // namespace threefold
