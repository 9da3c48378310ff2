#include "threefold/sampler.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "threefold/gates.hpp"
#include "threefold/kernels.hpp"
#include "threefold/rng.hpp"

namespace threefold {

const char* trs_mode_name(TrsMode m) {
  switch (m) {
    case TrsMode::none: return "none";
    case TrsMode::plus: return "plus";
    case TrsMode::minus: return "minus";
  }
  return "?";
}

TrsMode parse_trs_mode(const std::string& s) {
  if (s == "none") return TrsMode::none;
  if (s == "plus") return TrsMode::plus;
  if (s == "minus") return TrsMode::minus;
  throw std::invalid_argument("unknown trs mode '" + s + "' (none|plus|minus)");
}

ResolvedConfig resolve(const SampleConfig& cfg) {
  ResolvedConfig out;
  out.group = make_group(cfg.group_spec);
  if (!cfg.cocycle_file.empty()) {
    std::ifstream in(cfg.cocycle_file);
    if (!in) throw std::invalid_argument("cannot open cocycle file '" + cfg.cocycle_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    out.cocycle = load_cocycle_json(ss.str());
    if (!(out.cocycle.group == out.group))
      throw std::invalid_argument("cocycle file group does not match --group");
    out.cocycle_name = cfg.cocycle_file;
  } else {
    out.cocycle = preset_cocycle(cfg.cocycle_name, out.group);
    out.cocycle_name = cfg.cocycle_name;
  }
  out.mode = cfg.trs_mode;
  out.d_l = cfg.d_l;
  out.d_r = cfg.d_r;
  out.seed = cfg.seed;
  out.normalize = cfg.normalize;

  if (out.d_l < 1 || out.d_r < 1)
    throw std::invalid_argument("d_L and d_R must be positive");
  if (out.d_l > out.d_r)
    throw std::invalid_argument("convention requires d_L <= d_R");
  if (out.mode == TrsMode::minus && (out.d_l % 2 != 0 || out.d_r % 2 != 0))
    throw std::invalid_argument(
        "trs mode 'minus' requires even d_L and d_R (Upsilon acts on "
        "2-dimensional factors)");

  if (out.mode != TrsMode::none)
    out.trs = identity_time_reversal(out.group, out.mode == TrsMode::plus ? 1 : -1);
  require_valid_cocycle(out.cocycle, out.trs);
  return out;
}

CoefficientTensor sample_coefficients(const ResolvedConfig& cfg,
                                      std::uint64_t sample_index) {
  CoefficientTensor t;
  t.d_l = cfg.d_l;
  t.order = cfg.group.order;
  t.d_r = cfg.d_r;
  t.constraint_mode = cfg.mode;
  t.c.assign(static_cast<std::size_t>(cfg.d_l) * cfg.group.order * cfg.d_r,
             cx(0.0, 0.0));
  rng::Stream stream(cfg.seed, rng::Purpose::coefficients, sample_index);
  auto flat = [&](int l, int g, int r) -> std::uint64_t {
    return (static_cast<std::uint64_t>(l) * t.order + g) * t.d_r + r;
  };

  if (cfg.mode == TrsMode::none) {
    for (std::size_t i = 0; i < t.c.size(); ++i) t.c[i] = stream.cnormal(i);
    return t;
  }

  if (cfg.mode == TrsMode::plus) {
    const auto& tilde = cfg.trs->tilde;
    for (int g = 0; g < t.order; ++g) {
      const int gt = tilde[g];
      if (gt < g) continue;  // partner already assigned
      for (int l = 0; l < t.d_l; ++l)
        for (int r = 0; r < t.d_r; ++r) {
          if (gt == g) {
            t.at(l, g, r) = cx(stream.normal(flat(l, g, r)), 0.0);
          } else {
            const cx z = stream.cnormal(flat(l, g, r));
            t.at(l, g, r) = z;
            t.at(l, gt, r) = std::conj(z);
          }
        }
    }
    return t;
  }

  // mode minus: 2x2 sigma blocks, L = (L', sigma_L) sigma_L minor,
  // R = (sigma_R, R') sigma_R major
  const auto& tilde = cfg.trs->tilde;
  const int dlp = t.d_l / 2, drp = t.d_r / 2;
  auto lidx = [&](int lp, int sl) { return lp * 2 + sl; };
  auto ridx = [&](int sr, int rp) { return sr * drp + rp; };
  for (int g = 0; g < t.order; ++g) {
    const int gt = tilde[g];
    if (gt < g) continue;
    for (int lp = 0; lp < dlp; ++lp)
      for (int rp = 0; rp < drp; ++rp) {
        if (gt == g) {
          // block must equal sigma_y conj(block) sigma_y:
          // [[a, b], [-conj(b), conj(a)]]
          const cx a = stream.cnormal(flat(lidx(lp, 0), g, ridx(0, rp)));
          const cx b = stream.cnormal(flat(lidx(lp, 0), g, ridx(1, rp)));
          t.at(lidx(lp, 0), g, ridx(0, rp)) = a;
          t.at(lidx(lp, 0), g, ridx(1, rp)) = b;
          t.at(lidx(lp, 1), g, ridx(0, rp)) = -std::conj(b);
          t.at(lidx(lp, 1), g, ridx(1, rp)) = std::conj(a);
        } else {
          cx blk[2][2];
          for (int sl = 0; sl < 2; ++sl)
            for (int sr = 0; sr < 2; ++sr) {
              blk[sl][sr] = stream.cnormal(flat(lidx(lp, sl), g, ridx(sr, rp)));
              t.at(lidx(lp, sl), g, ridx(sr, rp)) = blk[sl][sr];
            }
          // partner block: sigma_y conj(B) sigma_y
          t.at(lidx(lp, 0), gt, ridx(0, rp)) = std::conj(blk[1][1]);
          t.at(lidx(lp, 0), gt, ridx(1, rp)) = -std::conj(blk[1][0]);
          t.at(lidx(lp, 1), gt, ridx(0, rp)) = -std::conj(blk[0][1]);
          t.at(lidx(lp, 1), gt, ridx(1, rp)) = std::conj(blk[0][0]);
        }
      }
  }
  return t;
}

namespace {

CoefficientTensor upsilon_mix(const CoefficientTensor& c, bool inverse) {
  if (c.d_l % 2 != 0 || c.d_r % 2 != 0)
    throw std::invalid_argument("apply_upsilon: even d_L and d_R required");
  CoefficientTensor out = c;
  const int dlp = c.d_l / 2, drp = c.d_r / 2;
  const cx pref = inverse ? cx(0.5, 0.5) : cx(0.5, -0.5);  // (1+-i)/2
  const double flip_sign = inverse ? -1.0 : 1.0;
  for (int lp = 0; lp < dlp; ++lp)
    for (int g = 0; g < c.order; ++g)
      for (int rp = 0; rp < drp; ++rp)
        for (int sl = 0; sl < 2; ++sl)
          for (int sr = 0; sr < 2; ++sr) {
            const double sign = (sl == sr) ? 1.0 : -1.0;  // sigma_L * sigma_R
            const cx same = c.at(lp * 2 + sl, g, sr * drp + rp);
            const cx flip = c.at(lp * 2 + (1 - sl), g, (1 - sr) * drp + rp);
            out.at(lp * 2 + sl, g, sr * drp + rp) =
                pref * (same + cx(0.0, flip_sign * sign) * flip);
          }
  return out;
}

}  // namespace

CoefficientTensor apply_upsilon(const CoefficientTensor& c) {
  return upsilon_mix(c, false);
}

CoefficientTensor apply_upsilon_inverse(const CoefficientTensor& c) {
  return upsilon_mix(c, true);
}

WMatrix build_w(const CoefficientTensor& c, const TwoCocycle& omega) {
  if (omega.group.order != c.order)
    throw std::invalid_argument("build_w: cocycle group order does not match tensor");
  const int n = c.order;
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  WMatrix out;
  out.d_l = c.d_l;
  out.d_r = c.d_r;
  out.order = n;
  out.w = Matrix(static_cast<std::size_t>(c.d_l) * n,
                 static_cast<std::size_t>(c.d_r) * n);
  for (int l = 0; l < c.d_l; ++l)
    for (int gl = 0; gl < n; ++gl)
      for (int gr = 0; gr < n; ++gr) {
        const int g = omega.group.times(omega.group.inverse(gr), gl);
        const cx factor = omega.value(gr, g) * norm;
        for (int r = 0; r < c.d_r; ++r)
          out.w(l * n + gl, gr * c.d_r + r) = factor * c.at(l, g, r);
      }
  return out;
}

std::vector<Matrix> block_w(const CoefficientTensor& c,
                            const IrrepDecomposition& dec) {
  if (dec.group.order != c.order)
    throw std::invalid_argument("block_w: decomposition group does not match tensor");
  const int n = c.order;
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Matrix> out;
  out.reserve(dec.blocks.size());
  for (const auto& blk : dec.blocks) {
    const int d = blk.dim;
    // flattened transposes: dt[g][j*d + j'] = D_{j'j}(g)
    std::vector<std::vector<cx>> dt(n, std::vector<cx>(d * d));
    for (int g = 0; g < n; ++g)
      for (int j = 0; j < d; ++j)
        for (int jp = 0; jp < d; ++jp) dt[g][j * d + jp] = blk.matrices[g](jp, j);
    Matrix w(static_cast<std::size_t>(c.d_l) * d, static_cast<std::size_t>(c.d_r) * d);
    std::vector<cx> tmp(d * d);
    for (int l = 0; l < c.d_l; ++l)
      for (int r = 0; r < c.d_r; ++r) {
        std::fill(tmp.begin(), tmp.end(), cx(0.0, 0.0));
        for (int g = 0; g < n; ++g)
          kernels::active().axpy(tmp.size(), c.at(l, g, r), dt[g].data(), tmp.data());
        for (int j = 0; j < d; ++j)
          for (int jp = 0; jp < d; ++jp)
            w(l * d + j, r * d + jp) = norm * tmp[j * d + jp];
      }
    out.push_back(std::move(w));
  }
  return out;
}

FullState build_full_state(const CoefficientTensor& c, const TwoCocycle& omega,
                           TrsMode mode, bool normalize) {
  const FiniteGroup& g0 = omega.group;
  check_state_scale(g0);
  const int n = c.order;
  if (g0.order != n)
    throw std::invalid_argument("build_full_state: group/tensor mismatch");
  const std::size_t total =
      static_cast<std::size_t>(c.d_l) * n * n * c.d_r;
  if (total > 1000000)
    throw std::invalid_argument("build_full_state: dimension cap 10^6 exceeded");
  if (mode == TrsMode::minus && (c.d_l % 2 != 0 || c.d_r % 2 != 0))
    throw std::invalid_argument("build_full_state: mode minus needs even d_L, d_R");

  FullState st;
  st.d_l = c.d_l;
  st.order = n;
  st.d_r = c.d_r;
  st.amp.assign(total, cx(0.0, 0.0));
  auto idx = [&](int l, int gl, int gr, int r) -> std::size_t {
    return ((static_cast<std::size_t>(l) * n + gl) * n + gr) * c.d_r + r;
  };

  // Mode-minus tensors carry the post-Upsilon (quaternionic) constraint;
  // the gate pipeline starts from the pre-Upsilon expansion.
  const CoefficientTensor base =
      (mode == TrsMode::minus) ? apply_upsilon_inverse(c) : c;

  // |Psi> = sum c_{L,g,R} |L>|psi_g>|R>, psi_g = (1/sqrt n) sum_h |h g>|h>
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int l = 0; l < c.d_l; ++l)
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        for (int r = 0; r < c.d_r; ++r)
          st.amp[idx(l, g0.times(h, g), h, r)] += norm * base.at(l, g, r);

  // Omega gate (diagonal on l, r factors)
  const Matrix og = omega_gate(g0, omega);
  for (int l = 0; l < c.d_l; ++l)
    for (int gl = 0; gl < n; ++gl)
      for (int gr = 0; gr < n; ++gr) {
        const cx f = og(gl * n + gr, gl * n + gr);
        for (int r = 0; r < c.d_r; ++r) st.amp[idx(l, gl, gr, r)] *= f;
      }

  if (mode == TrsMode::minus) {
    const Matrix ups = upsilon_gate();
    const int dlp = c.d_l / 2, drp = c.d_r / 2;
    for (int lp = 0; lp < dlp; ++lp)
      for (int gl = 0; gl < n; ++gl)
        for (int gr = 0; gr < n; ++gr)
          for (int rp = 0; rp < drp; ++rp) {
            cx in[4], outv[4];
            for (int sl = 0; sl < 2; ++sl)
              for (int sr = 0; sr < 2; ++sr)
                in[sl * 2 + sr] = st.amp[idx(lp * 2 + sl, gl, gr, sr * drp + rp)];
            for (int a = 0; a < 4; ++a) {
              outv[a] = cx(0.0, 0.0);
              for (int b = 0; b < 4; ++b) outv[a] += ups(a, b) * in[b];
            }
            for (int sl = 0; sl < 2; ++sl)
              for (int sr = 0; sr < 2; ++sr)
                st.amp[idx(lp * 2 + sl, gl, gr, sr * drp + rp)] = outv[sl * 2 + sr];
          }
  }

  if (normalize) {
    const double nrm =
        std::sqrt(kernels::active().sum_abs2(st.amp.size(), st.amp.data()));
    if (nrm == 0.0)
      throw std::runtime_error("build_full_state: zero state cannot be normalized");
    for (auto& a : st.amp) a /= nrm;
    st.normalized = true;
  }
  return st;
}

Matrix reduced_density(const FullState& state) {
  const std::size_t rows = static_cast<std::size_t>(state.d_l) * state.order;
  const std::size_t cols = static_cast<std::size_t>(state.order) * state.d_r;
  if (rows * cols != state.amp.size())
    throw std::invalid_argument("reduced_density: recorded cut is inconsistent");
  Matrix m(rows, cols);
  std::copy(state.amp.begin(), state.amp.end(), m.data());
  return m.gram_of_rows();
}

}  // namespace threefold
