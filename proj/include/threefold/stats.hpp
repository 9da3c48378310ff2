#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "threefold/rep.hpp"
#include "threefold/sampler.hpp"
#include "threefold/spectrum.hpp"

namespace threefold {

// Eigenvalues of G G^dagger for a Gaussian G of the chosen Dyson class:
// beta=1 real N(0, variance); beta=2 complex with E|g|^2 = variance;
// beta=4 quaternions in 2x2 spin blocks, each complex component with
// E|.|^2 = variance (so E|q|^2 = 2 variance). beta=4 needs even m, n.
EntanglementSpectrum laguerre_oracle(int beta, int m, int n, double variance,
                                     std::uint64_t seed,
                                     std::uint64_t stream_instance);

struct KsResult {
  double statistic = 0.0;
  std::size_t n1 = 0, n2 = 0;

  // c(alpha) sqrt((n1+n2)/(n1 n2)) with c(alpha) = sqrt(-ln(alpha/2)/2)
  double threshold(double alpha) const;
};

double ks_threshold(std::size_t n1, std::size_t n2, double alpha);

// Two-sample Kolmogorov-Smirnov statistic.
KsResult ks_distance(const std::vector<double>& a, const std::vector<double>& b);

struct VerifyThresholds {
  double alpha = 0.01;          // family-wise KS level, Bonferroni over blocks
  double corr_threshold = 0.1;  // cross-block top-eigenvalue |correlation|
  double degeneracy_rtol = 1e-8;
  double copy_tol = 1e-10;      // identical copies in the transformed W
  double kramers_rtol = 1e-10;
  double pair_rtol = 1e-10;     // per-sample LUE-pair spectral identity
  double off_block_tol = 1e-10;
  double two_path_tol = 1e-10;  // block_w vs block_transform agreement
  double trace_tol = 1e-10;
};

struct BlockCheck {
  int label = 0;
  std::string ensemble;
  int rows = 0, cols = 0, degeneracy = 1;
  bool degeneracy_ok = true;
  double ks_distance = 0.0, ks_threshold = 0.0;
  bool ks_ok = false;
  std::size_t pooled_count = 0;
  std::optional<bool> kramers_ok;        // LSE blocks
  std::optional<bool> pair_identity_ok;  // LUE pairs
  double max_kramers_gap = 0.0;
  double max_pair_deviation = 0.0;
};

struct VerificationReport {
  std::string group;
  std::string cocycle;
  std::string trs_mode;
  int d_l = 0, d_r = 0;
  std::uint64_t seed = 0;
  std::size_t samples_used = 0;
  std::string predicted;
  std::vector<BlockCheck> blocks;
  double cross_block_max_correlation = 0.0;
  double off_block_max_residual = 0.0;
  double two_path_max_residual = 0.0;
  double copy_max_deviation = 0.0;
  double trace_max_error = 0.0;
  int d_plus = 0, d_minus = 0, iota_reg = 0;
  bool indicator_consistent = true;
  bool pass = false;

  std::string to_json() const;
};

// Runs the full pipeline (sample -> blocks -> spectra) for n_samples draws
// and checks every predicted block against a matched Laguerre oracle, plus
// the structural side conditions (degeneracies, Kramers pairing, conjugate
// pairs, cross-block independence, D+/D-/iota_reg). Deterministic given
// (seed, config, n_samples).
VerificationReport verify_decomposition(const ResolvedConfig& cfg,
                                        std::size_t n_samples,
                                        const VerifyThresholds& thresholds = {});

// Pooled unnormalized per-block eigenvalues over n samples, one vector per
// prediction entry (shared by `verify`, `sample` pooling and `hist`).
std::vector<std::vector<double>> pooled_block_eigenvalues(
    const ResolvedConfig& cfg, const DecompositionPrediction& pred,
    std::size_t n_samples);

}  // namespace threefold
