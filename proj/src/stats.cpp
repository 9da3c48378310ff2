#include "threefold/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "threefold/linalg.hpp"
#include "threefold/parallel.hpp"
#include "threefold/rng.hpp"

namespace threefold {

EntanglementSpectrum laguerre_oracle(int beta, int m, int n, double variance,
                                     std::uint64_t seed,
                                     std::uint64_t stream_instance) {
  if (m < 1 || n < 1 || m > n)
    throw std::invalid_argument("laguerre_oracle: need 1 <= m <= n");
  if (variance <= 0.0) throw std::invalid_argument("laguerre_oracle: variance <= 0");
  rng::Stream stream(seed, rng::Purpose::oracle, stream_instance);
  const double sd = std::sqrt(variance);
  Matrix g(m, n);
  if (beta == 1) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        g(i, j) = cx(sd * stream.normal(static_cast<std::uint64_t>(i) * n + j), 0.0);
  } else if (beta == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        g(i, j) = sd * stream.cnormal(static_cast<std::uint64_t>(i) * n + j);
  } else if (beta == 4) {
    if (m % 2 != 0 || n % 2 != 0)
      throw std::invalid_argument(
          "laguerre_oracle: beta=4 requires even m and n (quaternions in the "
          "2x2 spin representation)");
    const int mq = m / 2, nq = n / 2;
    for (int i = 0; i < mq; ++i)
      for (int j = 0; j < nq; ++j) {
        const std::uint64_t base = 2 * (static_cast<std::uint64_t>(i) * nq + j);
        const cx a = sd * stream.cnormal(base);
        const cx b = sd * stream.cnormal(base + 1);
        g(2 * i, 2 * j) = a;
        g(2 * i, 2 * j + 1) = b;
        g(2 * i + 1, 2 * j) = -std::conj(b);
        g(2 * i + 1, 2 * j + 1) = std::conj(a);
      }
  } else {
    throw std::invalid_argument("laguerre_oracle: beta must be 1, 2 or 4");
  }
  return wishart_spectrum(g, false);
}

double ks_threshold(std::size_t n1, std::size_t n2, double alpha) {
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("ks_threshold: empty sample");
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("ks_threshold: alpha out of range");
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double f = static_cast<double>(n1 + n2) /
                   (static_cast<double>(n1) * static_cast<double>(n2));
  return c * std::sqrt(f);
}

double KsResult::threshold(double alpha) const { return ks_threshold(n1, n2, alpha); }

KsResult ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::vector<double> sa(a), sb(b);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < sa.size() && ib < sb.size()) {
    const double x = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] <= x) ++ia;
    while (ib < sb.size() && sb[ib] <= x) ++ib;
    d = std::max(d, std::abs(ia / na - ib / nb));
  }
  return {d, sa.size(), sb.size()};
}

namespace {

int beta_of(Ensemble e) {
  switch (e) {
    case Ensemble::LOE: return 1;
    case Ensemble::LUE: return 2;
    case Ensemble::LUEPair: return 2;
    case Ensemble::LSE: return 4;
  }
  return 2;
}

struct SampleOut {
  std::vector<std::vector<double>> entry_eigs;
  std::vector<double> tops;
  std::vector<double> kramers_gap;   // per entry, 0 if n/a
  std::vector<double> pair_dev;      // per entry, 0 if n/a
  double off = 0.0, two_path = 0.0, copy_dev = 0.0, trace_err = 0.0;
  bool union_ok = true;
};

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::vector<std::vector<double>> pooled_block_eigenvalues(
    const ResolvedConfig& cfg, const DecompositionPrediction& pred,
    std::size_t n_samples) {
  const auto& dec = pred.decomposition;
  std::vector<std::vector<std::vector<double>>> per_sample(n_samples);
  parallel_for(n_samples, [&](std::size_t s) {
    const CoefficientTensor c = sample_coefficients(cfg, s);
    const auto blocks = block_w(c, dec);
    std::vector<std::vector<double>> eigs(pred.entries.size());
    for (std::size_t e = 0; e < pred.entries.size(); ++e)
      eigs[e] = wishart_spectrum(blocks[pred.entries[e].block_index], false).values;
    per_sample[s] = std::move(eigs);
  });
  std::vector<std::vector<double>> pooled(pred.entries.size());
  for (std::size_t e = 0; e < pred.entries.size(); ++e) {
    pooled[e].reserve(n_samples * pred.entries[e].rows);
    for (std::size_t s = 0; s < n_samples; ++s)
      pooled[e].insert(pooled[e].end(), per_sample[s][e].begin(),
                       per_sample[s][e].end());
  }
  return pooled;
}

VerificationReport verify_decomposition(const ResolvedConfig& cfg,
                                        std::size_t n_samples,
                                        const VerifyThresholds& thr) {
  if (n_samples < 100)
    throw std::invalid_argument("verify_decomposition: need n_samples >= 100");
  const DecompositionPrediction pred = predict_threefold(
      cfg.group, cfg.cocycle, cfg.trs, cfg.d_l, cfg.d_r, cfg.seed);
  const auto& dec = pred.decomposition;
  const Matrix u = build_partial_diagonalizer(dec);
  const std::size_t n_entries = pred.entries.size();

  std::vector<SampleOut> outs(n_samples);
  parallel_for(n_samples, [&](std::size_t s) {
    SampleOut& o = outs[s];
    const CoefficientTensor c = sample_coefficients(cfg, s);
    const std::vector<Matrix> blocks = block_w(c, dec);
    const WMatrix wm = build_w(c, cfg.cocycle);
    const BlockTransformResult bt = block_transform(wm, u, dec);
    o.off = bt.off_block_residual;
    o.copy_dev = bt.copy_max_deviation;
    for (std::size_t a = 0; a < blocks.size(); ++a)
      o.two_path = std::max(o.two_path, distance_max(blocks[a], bt.blocks[a]));

    const EntanglementSpectrum full = wishart_spectrum(wm.w, false);
    std::vector<EntanglementSpectrum> bspec(blocks.size());
    for (std::size_t a = 0; a < blocks.size(); ++a)
      bspec[a] = wishart_spectrum(blocks[a], false);

    // full spectrum must be the union of d_alpha copies of each block spectrum
    std::vector<double> rebuilt;
    rebuilt.reserve(full.values.size());
    for (std::size_t a = 0; a < blocks.size(); ++a)
      for (int copy = 0; copy < dec.blocks[a].dim; ++copy)
        rebuilt.insert(rebuilt.end(), bspec[a].values.begin(), bspec[a].values.end());
    std::sort(rebuilt.begin(), rebuilt.end(), std::greater<double>());
    if (rebuilt.size() != full.values.size()) {
      o.union_ok = false;
    } else {
      const double scale = std::max(full.values.empty() ? 0.0 : full.values[0], 1e-300);
      for (std::size_t i = 0; i < rebuilt.size(); ++i)
        if (std::abs(rebuilt[i] - full.values[i]) > thr.degeneracy_rtol * scale)
          o.union_ok = false;
    }

    const double trace_full = full.sum();
    double trace_blocks = 0.0;
    for (std::size_t a = 0; a < blocks.size(); ++a)
      trace_blocks += dec.blocks[a].dim * bspec[a].sum();
    o.trace_err = std::abs(trace_blocks / trace_full - 1.0);

    o.entry_eigs.resize(n_entries);
    o.tops.resize(n_entries, 0.0);
    o.kramers_gap.assign(n_entries, 0.0);
    o.pair_dev.assign(n_entries, 0.0);
    for (std::size_t e = 0; e < n_entries; ++e) {
      const auto& entry = pred.entries[e];
      const auto& vals = bspec[entry.block_index].values;
      o.entry_eigs[e] = vals;
      o.tops[e] = vals.empty() ? 0.0 : vals[0];
      const double scale = std::max(vals.empty() ? 0.0 : vals[0], 1e-300);
      if (entry.ensemble == Ensemble::LSE) {
        for (std::size_t k = 0; k + 1 < vals.size(); k += 2)
          o.kramers_gap[e] =
              std::max(o.kramers_gap[e], (vals[k] - vals[k + 1]) / scale);
      }
      if (entry.ensemble == Ensemble::LUEPair) {
        const auto& pv = bspec[entry.partner_index].values;
        double dev = 0.0;
        for (std::size_t k = 0; k < vals.size(); ++k)
          dev = std::max(dev, std::abs(vals[k] - pv[k]) / scale);
        o.pair_dev[e] = dev;
      }
    }
  });

  VerificationReport rep;
  rep.group = cfg.group.name;
  rep.cocycle = cfg.cocycle_name;
  rep.trs_mode = trs_mode_name(cfg.mode);
  rep.d_l = cfg.d_l;
  rep.d_r = cfg.d_r;
  rep.seed = cfg.seed;
  rep.samples_used = n_samples;
  rep.predicted = pred.summary();
  rep.d_plus = pred.d_plus;
  rep.d_minus = pred.d_minus;
  rep.iota_reg = pred.iota_reg;
  rep.indicator_consistent =
      !cfg.trs || (pred.d_plus - pred.d_minus == cfg.trs->omega_tt * pred.iota_reg);

  bool union_ok_all = true;
  for (const auto& o : outs) {
    rep.off_block_max_residual = std::max(rep.off_block_max_residual, o.off);
    rep.two_path_max_residual = std::max(rep.two_path_max_residual, o.two_path);
    rep.copy_max_deviation = std::max(rep.copy_max_deviation, o.copy_dev);
    rep.trace_max_error = std::max(rep.trace_max_error, o.trace_err);
    union_ok_all = union_ok_all && o.union_ok;
  }

  // matched oracle pools, one per predicted block
  std::vector<std::vector<double>> oracle_pool(n_entries);
  {
    std::vector<std::vector<std::vector<double>>> per_sample(n_samples);
    parallel_for(n_samples, [&](std::size_t s) {
      auto& slot = per_sample[s];
      slot.resize(n_entries);
      for (std::size_t e = 0; e < n_entries; ++e) {
        const auto& entry = pred.entries[e];
        const std::uint64_t instance =
            (static_cast<std::uint64_t>(e + 1) << 32) | s;
        slot[e] = laguerre_oracle(beta_of(entry.ensemble), entry.rows, entry.cols,
                                  entry.element_variance, cfg.seed, instance)
                      .values;
      }
    });
    for (std::size_t e = 0; e < n_entries; ++e) {
      oracle_pool[e].reserve(n_samples * pred.entries[e].rows);
      for (std::size_t s = 0; s < n_samples; ++s)
        oracle_pool[e].insert(oracle_pool[e].end(), per_sample[s][e].begin(),
                              per_sample[s][e].end());
    }
  }

  const double alpha_block = thr.alpha / static_cast<double>(n_entries);
  bool all_ok = rep.indicator_consistent && union_ok_all &&
                rep.off_block_max_residual < thr.off_block_tol &&
                rep.two_path_max_residual < thr.two_path_tol &&
                rep.copy_max_deviation < thr.copy_tol &&
                rep.trace_max_error < thr.trace_tol;

  for (std::size_t e = 0; e < n_entries; ++e) {
    const auto& entry = pred.entries[e];
    BlockCheck bc;
    bc.label = dec.blocks[entry.block_index].label;
    bc.ensemble = ensemble_name(entry.ensemble);
    bc.rows = entry.rows;
    bc.cols = entry.cols;
    bc.degeneracy = entry.degeneracy;
    bc.degeneracy_ok = union_ok_all && rep.copy_max_deviation < thr.copy_tol;

    std::vector<double> pooled;
    pooled.reserve(n_samples * entry.rows);
    for (const auto& o : outs)
      pooled.insert(pooled.end(), o.entry_eigs[e].begin(), o.entry_eigs[e].end());
    bc.pooled_count = pooled.size();
    const KsResult ks = ks_distance(pooled, oracle_pool[e]);
    bc.ks_distance = ks.statistic;
    bc.ks_threshold = ks.threshold(alpha_block);
    bc.ks_ok = ks.statistic < bc.ks_threshold;

    if (entry.ensemble == Ensemble::LSE) {
      double g = 0.0;
      for (const auto& o : outs) g = std::max(g, o.kramers_gap[e]);
      bc.max_kramers_gap = g;
      bc.kramers_ok = g < thr.kramers_rtol;
    }
    if (entry.ensemble == Ensemble::LUEPair) {
      double g = 0.0;
      for (const auto& o : outs) g = std::max(g, o.pair_dev[e]);
      bc.max_pair_deviation = g;
      bc.pair_identity_ok = g < thr.pair_rtol;
    }

    all_ok = all_ok && bc.ks_ok && bc.degeneracy_ok &&
             (!bc.kramers_ok || *bc.kramers_ok) &&
             (!bc.pair_identity_ok || *bc.pair_identity_ok);
    rep.blocks.push_back(std::move(bc));
  }

  double max_corr = 0.0;
  for (std::size_t e1 = 0; e1 < n_entries; ++e1)
    for (std::size_t e2 = e1 + 1; e2 < n_entries; ++e2) {
      std::vector<double> x(n_samples), y(n_samples);
      for (std::size_t s = 0; s < n_samples; ++s) {
        x[s] = outs[s].tops[e1];
        y[s] = outs[s].tops[e2];
      }
      max_corr = std::max(max_corr, std::abs(pearson(x, y)));
    }
  rep.cross_block_max_correlation = max_corr;
  all_ok = all_ok && max_corr < thr.corr_threshold;

  rep.pass = all_ok;
  return rep;
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["group"] = group;
  j["cocycle"] = cocycle;
  j["trs"] = trs_mode;
  j["d_L"] = d_l;
  j["d_R"] = d_r;
  j["seed"] = seed;
  j["samples"] = samples_used;
  j["predicted"] = predicted;
  j["D_plus"] = d_plus;
  j["D_minus"] = d_minus;
  j["iota_reg"] = iota_reg;
  j["indicator_consistent"] = indicator_consistent;
  j["cross_block_max_correlation"] = cross_block_max_correlation;
  j["off_block_max_residual"] = off_block_max_residual;
  j["two_path_max_residual"] = two_path_max_residual;
  j["copy_max_deviation"] = copy_max_deviation;
  j["trace_max_error"] = trace_max_error;
  j["pass"] = pass;
  nlohmann::json blocks_json = nlohmann::json::array();
  for (const auto& b : blocks) {
    nlohmann::json jb;
    jb["label"] = b.label;
    jb["ensemble"] = b.ensemble;
    jb["rows"] = b.rows;
    jb["cols"] = b.cols;
    jb["degeneracy"] = b.degeneracy;
    jb["degeneracy_ok"] = b.degeneracy_ok;
    jb["ks_distance"] = b.ks_distance;
    jb["ks_threshold"] = b.ks_threshold;
    jb["ks_ok"] = b.ks_ok;
    jb["pooled_count"] = b.pooled_count;
    if (b.kramers_ok) {
      jb["kramers_ok"] = *b.kramers_ok;
      jb["max_kramers_gap"] = b.max_kramers_gap;
    }
    if (b.pair_identity_ok) {
      jb["pair_identity_ok"] = *b.pair_identity_ok;
      jb["max_pair_deviation"] = b.max_pair_deviation;
    }
    blocks_json.push_back(jb);
  }
  j["blocks"] = blocks_json;
  return j.dump(2);
}

}  // namespace threefold
