#include "threefold/rep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "threefold/linalg.hpp"
#include "threefold/rng.hpp"

namespace threefold {

double ProjectiveRep::check_residual() const {
  double r = 0.0;
  for (int g = 0; g < group.order; ++g) {
    r = std::max(r, unitarity_residual(matrices[g]));
    for (int h = 0; h < group.order; ++h) {
      const Matrix lhs = matrices[g] * matrices[h];
      const Matrix rhs = matrices[group.times(g, h)] * cocycle.value(g, h);
      r = std::max(r, distance_max(lhs, rhs));
    }
  }
  return r;
}

ProjectiveRep projective_regular_rep(const FiniteGroup& g0, const TwoCocycle& omega) {
  {
    TwoCocycle check = omega;
    require_valid_cocycle(check, std::nullopt);
  }
  ProjectiveRep rep;
  rep.group = g0;
  rep.cocycle = omega;
  rep.dim = g0.order;
  rep.matrices.reserve(g0.order);
  for (int g = 0; g < g0.order; ++g) {
    Matrix d(g0.order, g0.order);
    for (int gp = 0; gp < g0.order; ++gp)
      d(g0.times(g, gp), gp) = omega.value(g, gp);
    rep.matrices.push_back(std::move(d));
  }
  return rep;
}

std::vector<cx> IrrepBlock::character() const {
  std::vector<cx> chi;
  chi.reserve(matrices.size());
  for (const auto& m : matrices) chi.push_back(m.trace());
  return chi;
}

namespace {

// canonical class order: dimension ascending, then rounded character
// lexicographically descending, so the trivial-like irrep comes first
bool character_less(const std::vector<cx>& a, const std::vector<cx>& b) {
  auto key = [](double x) { return std::llround(x * 1e6); };
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ar = key(a[i].real()), br = key(b[i].real());
    if (ar != br) return ar > br;
    const auto ai = key(a[i].imag()), bi = key(b[i].imag());
    if (ai != bi) return ai > bi;
  }
  return false;
}

struct DecomposeCtx {
  const FiniteGroup& group;
  const TwoCocycle& omega;
  rng::Stream herm_stream;
  rng::Stream intw_stream;
  std::uint64_t herm_ctr = 0;
  std::uint64_t intw_ctr = 0;

  DecomposeCtx(const FiniteGroup& g, const TwoCocycle& w, std::uint64_t seed)
      : group(g), omega(w),
        herm_stream(seed, rng::Purpose::decomposition, 0),
        intw_stream(seed, rng::Purpose::intertwiner, 0) {}

  Matrix random_hermitian(std::size_t d) {
    Matrix h(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        h(i, j) = herm_stream.cnormal(herm_ctr++);
    Matrix out(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        out(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    return out;
  }

  Matrix random_complex(std::size_t r, std::size_t c) {
    Matrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        a(i, j) = intw_stream.cnormal(intw_ctr++);
    return a;
  }
};

std::vector<Matrix> restrict_rep(const std::vector<Matrix>& d, const Matrix& v) {
  std::vector<Matrix> b;
  b.reserve(d.size());
  const Matrix vdag = v.adjoint();
  for (const auto& m : d) b.push_back(vdag * m * v);
  return b;
}

// group-averaged conjugation: (1/|G|) sum_g B(g) H B(g)^dag lies in the
// commutant of the restricted representation
Matrix commutant_average(const std::vector<Matrix>& b, const Matrix& h) {
  const std::size_t d = h.rows();
  Matrix x(d, d);
  for (const auto& m : b) x += m * h * m.adjoint();
  x *= cx(1.0 / static_cast<double>(b.size()), 0.0);
  Matrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out(i, j) = 0.5 * (x(i, j) + std::conj(x(j, i)));
  return out;
}

double rep_residual(const FiniteGroup& g0, const TwoCocycle& omega,
                    const std::vector<Matrix>& b) {
  double r = 0.0;
  for (int g = 0; g < g0.order; ++g) {
    r = std::max(r, unitarity_residual(b[g]));
    for (int h = 0; h < g0.order; ++h)
      r = std::max(r, distance_max(b[g] * b[h],
                                   b[g0.times(g, h)] * omega.value(g, h)));
  }
  return r;
}

// averaged intertwiner between two same-cocycle reps: B1(g) S = S B2(g)
Matrix averaged_intertwiner(const std::vector<Matrix>& b1,
                            const std::vector<Matrix>& b2, const Matrix& a) {
  Matrix s(b1.front().rows(), b2.front().rows());
  for (std::size_t g = 0; g < b1.size(); ++g) s += b1[g] * a * b2[g].adjoint();
  s *= cx(1.0 / static_cast<double>(b1.size()), 0.0);
  return s;
}

// true/false for clear cases; re-randomizes in the ambiguous band
bool reps_equivalent(DecomposeCtx& ctx, const std::vector<Matrix>& b1,
                     const std::vector<Matrix>& b2) {
  if (b1.front().rows() != b2.front().rows()) return false;
  const std::size_t d = b1.front().rows();
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Matrix s = averaged_intertwiner(b1, b2, ctx.random_complex(d, d));
    const double fro = s.frobenius_norm();
    if (fro > 1e-6) return true;
    if (fro < 1e-10) return false;
  }
  throw std::runtime_error(
      "decompose: irrep equivalence test stayed ambiguous after 8 retries; "
      "try a different seed");
}

struct Leaf {
  Matrix basis;  // |G| x d
  std::vector<Matrix> block;
};

void split_subspace(DecomposeCtx& ctx, const std::vector<Matrix>& reg,
                    const Matrix& v, std::vector<Leaf>& leaves, int depth) {
  if (depth > 16) throw std::runtime_error("decompose: recursion depth exceeded");
  const std::size_t d = v.cols();
  std::vector<Matrix> b = restrict_rep(reg, v);
  if (d == 1) {
    leaves.push_back({v, std::move(b)});
    return;
  }
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Matrix x = commutant_average(b, ctx.random_hermitian(d));
    std::vector<double> w;
    Matrix q;
    hermitian_eig(x, w, q);
    const double scale = std::max({1.0, std::abs(w.front()), std::abs(w.back())});
    std::vector<std::size_t> cuts{0};
    for (std::size_t i = 1; i < d; ++i)
      if (w[i] - w[i - 1] > 1e-7 * scale) cuts.push_back(i);
    cuts.push_back(d);

    if (cuts.size() == 2) {
      // single cluster: accept as irreducible if the commutant element is scalar
      const cx mean = x.trace() * cx(1.0 / static_cast<double>(d), 0.0);
      if (distance_max(x, Matrix::identity(d) * mean) < 1e-8 * scale) {
        leaves.push_back({v, std::move(b)});
        return;
      }
      continue;  // degenerate split; retry with a fresh random direction
    }

    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const std::size_t lo = cuts[c], hi = cuts[c + 1];
      Matrix vc(v.rows(), hi - lo);
      for (std::size_t r = 0; r < v.rows(); ++r)
        for (std::size_t k = lo; k < hi; ++k) {
          cx acc(0.0, 0.0);
          for (std::size_t m = 0; m < d; ++m) acc += v(r, m) * q(m, k);
          vc(r, k - lo) = acc;
        }
      split_subspace(ctx, reg, vc, leaves, depth + 1);
    }
    return;
  }
  throw std::runtime_error(
      "decompose: failed to separate eigenspaces after 8 retries; "
      "try a different seed");
}

}  // namespace

IrrepDecomposition decompose_regular(const FiniteGroup& g0, const TwoCocycle& omega,
                                     std::uint64_t seed) {
  if (g0.order > 32)
    throw std::invalid_argument(
        "decompose_regular: group order above 32 is outside the supported "
        "desk-scale range");
  TwoCocycle w = omega;
  require_valid_cocycle(w, std::nullopt);
  const ProjectiveRep reg = projective_regular_rep(g0, w);

  for (int top_attempt = 0; top_attempt < 8; ++top_attempt) {
    DecomposeCtx ctx(g0, w, seed + 0x9E3779B9ULL * static_cast<std::uint64_t>(top_attempt));
    std::vector<Leaf> leaves;
    split_subspace(ctx, reg.matrices, Matrix::identity(g0.order), leaves, 0);

    bool all_good = true;
    for (const auto& leaf : leaves)
      if (rep_residual(g0, w, leaf.block) > 1e-8) all_good = false;
    if (!all_good) continue;

    // group leaves into equivalence classes; first copy is the representative
    std::vector<IrrepBlock> classes;
    std::vector<int> counts;
    bool grouping_ok = true;
    for (const auto& leaf : leaves) {
      bool matched = false;
      for (std::size_t c = 0; c < classes.size() && !matched; ++c) {
        if (classes[c].dim != static_cast<int>(leaf.block.front().rows())) continue;
        if (reps_equivalent(ctx, classes[c].matrices, leaf.block)) {
          counts[c]++;
          matched = true;
        }
      }
      if (!matched) {
        IrrepBlock blk;
        blk.dim = static_cast<int>(leaf.block.front().rows());
        blk.matrices = leaf.block;
        classes.push_back(std::move(blk));
        counts.push_back(1);
      }
    }

    // regular representation: each class appears dim times, sum dim^2 = |G|
    int total = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (counts[c] != classes[c].dim) grouping_ok = false;
      total += classes[c].dim * classes[c].dim;
    }
    if (total != g0.order) grouping_ok = false;
    if (!grouping_ok) continue;

    std::vector<std::size_t> order(classes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<std::vector<cx>> chars;
    chars.reserve(classes.size());
    for (const auto& c : classes) chars.push_back(c.character());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (classes[a].dim != classes[b].dim) return classes[a].dim < classes[b].dim;
      return character_less(chars[a], chars[b]);
    });

    IrrepDecomposition dec;
    dec.group = g0;
    dec.cocycle = w;
    dec.seed = seed;
    for (std::size_t k = 0; k < order.size(); ++k) {
      classes[order[k]].label = static_cast<int>(k) + 1;
      dec.blocks.push_back(std::move(classes[order[k]]));
      dec.multiplicity.push_back(dec.blocks.back().dim);
    }
    dec.change_of_basis = build_partial_diagonalizer(dec).adjoint();
    return dec;
  }
  throw std::runtime_error(
      "decompose_regular: decomposition failed repeatedly; try a different seed");
}

int indicator(const IrrepBlock& block, const TwoCocycle& omega,
              const TimeReversalStructure& trs) {
  if (!omega.trs_checked.has_value() || omega.trs_checked->tilde != trs.tilde)
    throw std::invalid_argument(
        "indicator: cocycle has not been validated against this time-reversal "
        "structure");
  const FiniteGroup& g0 = omega.group;
  cx acc(0.0, 0.0);
  for (int g = 0; g < g0.order; ++g) {
    const int gt = trs.apply(g);
    acc += omega.value(gt, g) *
           block.matrices[g0.times(gt, g)].trace();
  }
  acc *= cx(1.0 / static_cast<double>(g0.order), 0.0);
  for (const int cand : {-1, 0, 1})
    if (std::abs(acc - cx(static_cast<double>(cand), 0.0)) < 1e-8) return cand;
  std::ostringstream os;
  os << "indicator: sum " << acc.real() << "+" << acc.imag()
     << "i is not near -1, 0 or +1 (inconsistent inputs)";
  throw std::runtime_error(os.str());
}

IrrepBlock canonicalize_irrep(const IrrepBlock& block, const TwoCocycle& omega,
                              const TimeReversalStructure& trs, std::uint64_t seed) {
  const int iota = (block.indicator == kIndicatorUnset)
                       ? indicator(block, omega, trs)
                       : block.indicator;
  if (iota == 0)
    throw std::invalid_argument(
        "canonicalize_irrep: no canonical real/quaternionic basis exists for "
        "indicator 0");
  const FiniteGroup& g0 = omega.group;
  const std::size_t d = block.dim;

  // conj(D(~g)) is an irrep with the same cocycle; u below intertwines
  // D(g) u = u conj(D(~g)).
  std::vector<Matrix> dstar;
  dstar.reserve(g0.order);
  for (int g = 0; g < g0.order; ++g)
    dstar.push_back(block.matrices[trs.apply(g)].conjugate());

  rng::Stream stream(seed, rng::Purpose::intertwiner, 1);
  std::uint64_t ctr = 0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Matrix a(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a(i, j) = stream.cnormal(ctr++);
    Matrix s = averaged_intertwiner(block.matrices, dstar, a);
    if (s.frobenius_norm() < 1e-6) continue;
    Matrix u = polar_unitary(s);

    double resid = 0.0;
    for (int g = 0; g < g0.order; ++g)
      resid = std::max(resid, distance_max(block.matrices[g] * u, u * dstar[g]));
    if (resid > 1e-8) continue;

    const Matrix uu = u * u.conjugate();
    const double lambda = uu(0, 0).real();
    if (distance_max(uu, Matrix::identity(d) * cx(lambda, 0.0)) > 1e-8)
      continue;
    if (std::abs(lambda - iota) > 1e-8)
      throw std::runtime_error(
          "canonicalize_irrep: intertwiner sign does not match the indicator "
          "(inconsistent inputs)");

    const Matrix v = (iota == 1) ? takagi_unitary_symmetric(u) : kramers_pair_basis(u);

    IrrepBlock out = block;
    out.indicator = iota;
    out.canonical_basis_applied = true;
    const Matrix vdag = v.adjoint();
    for (int g = 0; g < g0.order; ++g)
      out.matrices[g] = vdag * block.matrices[g] * v;

    double post = 0.0;
    const Matrix y = (iota == -1) ? sigma_y_tensor_identity(d) : Matrix();
    for (int g = 0; g < g0.order; ++g) {
      const Matrix lhs = out.matrices[trs.apply(g)].conjugate();
      const Matrix rhs = (iota == 1) ? out.matrices[g] : y * out.matrices[g] * y;
      post = std::max(post, distance_max(lhs, rhs));
    }
    if (post > 1e-8) continue;
    return out;
  }
  throw std::runtime_error(
      "canonicalize_irrep: failed to build the canonical basis after 8 retries");
}

int regular_indicator(const FiniteGroup& g0, const TwoCocycle& omega,
                      const TimeReversalStructure& trs) {
  if (!omega.trs_checked.has_value() || omega.trs_checked->tilde != trs.tilde) {
    TwoCocycle check = omega;
    const auto v = validate_cocycle(check, trs);
    if (!v.pass())
      throw std::invalid_argument("regular_indicator: " + v.failure);
    return regular_indicator(g0, check, trs);
  }

  std::int64_t exact = 0;
  double numeric = 0.0;
  bool have_numeric = false;
  std::vector<char> seen(g0.order, 0);
  for (int g = 0; g < g0.order; ++g) {
    const int gt = trs.apply(g);
    if (g0.times(gt, g) != g0.identity) continue;
    if (seen[g]) continue;
    const Turn r = omega.at(gt, g);
    if (gt == g) {
      seen[g] = 1;
      if (!r.is_real_sign())
        throw std::runtime_error(
            "regular_indicator: non-real contribution " + r.str() +
            " at self-paired element " + std::to_string(g));
      exact += r.sign();
      continue;
    }
    seen[g] = 1;
    seen[gt] = 1;
    // TRS validity forces omega(~g,g) omega(g,~g) = 1: the pair contributes
    // 2 cos(2 pi r), rational exactly for denominators 1,2,3,4,6
    switch (r.den()) {
      case 1: exact += 2; break;
      case 2: exact -= 2; break;
      case 3: exact -= 1; break;
      case 4: break;  // contributes 0
      case 6: exact += 1; break;
      default:
        numeric += 2.0 * std::cos(2.0 * M_PI * static_cast<double>(r.num()) /
                                  static_cast<double>(r.den()));
        have_numeric = true;
    }
  }
  if (!have_numeric) return static_cast<int>(exact);
  const double total = static_cast<double>(exact) + numeric;
  const double rounded = std::round(total);
  if (std::abs(total - rounded) > 1e-9)
    throw std::runtime_error(
        "regular_indicator: sum did not evaluate to an integer");
  return static_cast<int>(rounded);
}

Matrix build_partial_diagonalizer(const IrrepDecomposition& dec) {
  const int n = dec.group.order;
  Matrix u(n, n);
  int row = 0;
  for (const auto& blk : dec.blocks) {
    const double scale = std::sqrt(static_cast<double>(blk.dim) / n);
    for (int i = 0; i < blk.dim; ++i)
      for (int j = 0; j < blk.dim; ++j) {
        for (int g = 0; g < n; ++g) u(row, g) = scale * blk.matrices[g](i, j);
        ++row;
      }
  }
  if (row != n)
    throw std::runtime_error("build_partial_diagonalizer: dimension sum mismatch");
  return u;
}

void apply_trs_analysis(IrrepDecomposition& dec, const TimeReversalStructure& trs) {
  require_valid_cocycle(dec.cocycle, trs);
  for (auto& blk : dec.blocks) blk.indicator = indicator(blk, dec.cocycle, trs);
  for (auto& blk : dec.blocks)
    if (blk.indicator != 0)
      blk = canonicalize_irrep(blk, dec.cocycle, trs, dec.seed);

  // involution pairing among iota = 0 blocks
  DecomposeCtx ctx(dec.group, dec.cocycle, dec.seed ^ 0xA5A5A5A5ULL);
  for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
    auto& blk = dec.blocks[i];
    if (blk.indicator != 0 || blk.partner >= 0) continue;
    std::vector<Matrix> dstar;
    dstar.reserve(dec.group.order);
    for (int g = 0; g < dec.group.order; ++g)
      dstar.push_back(blk.matrices[trs.apply(g)].conjugate());
    if (reps_equivalent(ctx, blk.matrices, dstar))
      throw std::runtime_error(
          "apply_trs_analysis: indicator-0 block is self-conjugate "
          "(inconsistent inputs)");
    bool found = false;
    for (std::size_t j = 0; j < dec.blocks.size() && !found; ++j) {
      if (j == i) continue;
      auto& other = dec.blocks[j];
      if (other.indicator != 0 || other.partner >= 0 || other.dim != blk.dim)
        continue;
      if (reps_equivalent(ctx, other.matrices, dstar)) {
        blk.partner = static_cast<int>(j);
        other.partner = static_cast<int>(i);
        found = true;
      }
    }
    if (!found)
      throw std::runtime_error(
          "apply_trs_analysis: no conjugate partner found for an indicator-0 "
          "block");
  }
  dec.change_of_basis = build_partial_diagonalizer(dec).adjoint();
}

const char* ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::LOE: return "LOE";
    case Ensemble::LUE: return "LUE";
    case Ensemble::LSE: return "LSE";
    case Ensemble::LUEPair: return "LUE+conj-LUE";
  }
  return "?";
}

std::string DecompositionPrediction::summary() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& e : entries) {
    if (!first) os << " + ";
    first = false;
    os << ensemble_name(e.ensemble) << "(" << e.rows << "x" << e.cols;
    if (e.degeneracy > 1) os << ", degeneracy " << e.degeneracy;
    os << ")";
  }
  return os.str();
}

DecompositionPrediction predict_threefold(const FiniteGroup& g0,
                                          const TwoCocycle& omega,
                                          const std::optional<TimeReversalStructure>& trs,
                                          int d_l, int d_r, std::uint64_t seed) {
  if (d_l < 1 || d_r < 1)
    throw std::invalid_argument("predict_threefold: d_L and d_R must be positive");
  if (d_l > d_r)
    throw std::invalid_argument("predict_threefold: convention requires d_L <= d_R");
  TwoCocycle w = omega;
  require_valid_cocycle(w, trs);

  DecompositionPrediction pred;
  pred.decomposition = decompose_regular(g0, w, seed);
  pred.trs = trs;
  pred.d_L = d_l;
  pred.d_R = d_r;

  if (!trs) {
    for (std::size_t i = 0; i < pred.decomposition.blocks.size(); ++i) {
      const auto& blk = pred.decomposition.blocks[i];
      PredictionEntry e;
      e.block_index = static_cast<int>(i);
      e.ensemble = Ensemble::LUE;
      e.rows = d_l * blk.dim;
      e.cols = d_r * blk.dim;
      e.degeneracy = blk.dim;
      e.element_variance = 1.0 / blk.dim;
      pred.entries.push_back(e);
    }
    return pred;
  }

  apply_trs_analysis(pred.decomposition, *trs);
  for (std::size_t i = 0; i < pred.decomposition.blocks.size(); ++i) {
    const auto& blk = pred.decomposition.blocks[i];
    PredictionEntry e;
    e.block_index = static_cast<int>(i);
    e.rows = d_l * blk.dim;
    e.cols = d_r * blk.dim;
    e.degeneracy = blk.dim;
    e.element_variance = 1.0 / blk.dim;
    if (blk.indicator == 0) {
      // R0 keeps one member per involution pair
      if (blk.partner < static_cast<int>(i)) continue;
      e.ensemble = Ensemble::LUEPair;
      e.partner_index = blk.partner;
    } else if (blk.indicator == trs->omega_tt) {
      e.ensemble = Ensemble::LOE;
      pred.d_plus += blk.dim;
    } else {
      e.ensemble = Ensemble::LSE;
      pred.d_minus += blk.dim;
    }
    pred.entries.push_back(e);
  }
  pred.iota_reg = regular_indicator(g0, pred.decomposition.cocycle, *trs);
  if (pred.d_plus - pred.d_minus != trs->omega_tt * pred.iota_reg)
    throw std::runtime_error(
        "predict_threefold: D+ - D- does not match the regular indicator "
        "(internal inconsistency)");
  return pred;
}

std::string decomposition_to_json(const IrrepDecomposition& dec) {
  nlohmann::json j;
  j["group"] = dec.group.name;
  j["seed"] = dec.seed;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : dec.blocks) {
    nlohmann::json jb;
    jb["label"] = b.label;
    jb["dim"] = b.dim;
    jb["multiplicity"] = b.dim;
    if (b.indicator != kIndicatorUnset) jb["indicator"] = b.indicator;
    if (b.partner >= 0) jb["partner"] = dec.blocks[b.partner].label;
    jb["canonical_basis_applied"] = b.canonical_basis_applied;
    blocks.push_back(jb);
  }
  j["irreps"] = blocks;
  nlohmann::json u = nlohmann::json::array();
  for (std::size_t i = 0; i < dec.change_of_basis.rows(); ++i)
    for (std::size_t k = 0; k < dec.change_of_basis.cols(); ++k) {
      const cx v = dec.change_of_basis(i, k);
      u.push_back({v.real(), v.imag()});
    }
  j["U"] = u;
  return j.dump(2);
}

}  // namespace threefold
