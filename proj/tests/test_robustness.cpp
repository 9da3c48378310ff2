#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "threefold/stats.hpp"

using namespace threefold;

namespace {

ResolvedConfig config(const std::string& group, const std::string& cocycle,
                      TrsMode mode, int dl, int dr, std::uint64_t seed) {
  SampleConfig cfg;
  cfg.group_spec = group;
  cfg.cocycle_name = cocycle;
  cfg.trs_mode = mode;
  cfg.d_l = dl;
  cfg.d_r = dr;
  cfg.seed = seed;
  return resolve(cfg);
}

std::vector<int> dims_of(const IrrepDecomposition& dec) {
  std::vector<int> dims;
  for (const auto& b : dec.blocks) dims.push_back(b.dim);
  return dims;
}

}  // namespace

TEST_CASE("decomposition structure is stable across seeds") {
  struct Case {
    std::string group, cocycle;
    std::vector<int> dims;
  };
  const std::vector<Case> cases = {
      {"dihedral:3", "trivial", {1, 1, 2}},
      {"dihedral:4", "trivial", {1, 1, 1, 1, 2}},
      {"q8", "trivial", {1, 1, 1, 1, 2}},
      {"product(cyclic:3,cyclic:3)", "z3z3-root", {3}},
      {"product(q8,cyclic:2)", "trivial", {1, 1, 1, 1, 1, 1, 1, 1, 2, 2}},
  };
  for (const auto& tc : cases) {
    const FiniteGroup g = make_group(tc.group);
    TwoCocycle w = preset_cocycle(tc.cocycle, g);
    require_valid_cocycle(w, std::nullopt);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto dec = decompose_regular(g, w, seed);
      CHECK(dims_of(dec) == tc.dims);
    }
  }
}

TEST_CASE("verifier verdicts hold across seeds at the family error level") {
  // a systematic bias (wrong variance, wrong beta, broken constraint) fails
  // every run; the alpha = 0.01 design may fail a rare single block
  struct Case {
    std::string group, cocycle;
    TrsMode mode;
    int d;
  };
  const std::vector<Case> cases = {
      {"cyclic:2", "trivial", TrsMode::plus, 2},
      {"q8", "trivial", TrsMode::plus, 2},
      {"dihedral:3", "trivial", TrsMode::none, 2},
      {"product(cyclic:3,cyclic:3)", "z3z3-root", TrsMode::none, 2},
  };
  VerifyThresholds thr;
  thr.corr_threshold = 0.2;  // calibrated for n = 1000 runs below
  int failures = 0;
  for (const auto& tc : cases)
    for (std::uint64_t seed = 100; seed < 108; ++seed) {
      const auto cfg = config(tc.group, tc.cocycle, tc.mode, tc.d, tc.d, seed);
      const auto rep = verify_decomposition(cfg, 1000, thr);
      if (!rep.pass) ++failures;
      // the structural sub-checks are exact and must never fail
      CHECK(rep.off_block_max_residual < 1e-10);
      CHECK(rep.two_path_max_residual < 1e-10);
      CHECK(rep.copy_max_deviation < 1e-10);
      CHECK(rep.indicator_consistent);
    }
  CHECK(failures <= 2);
}

TEST_CASE("Z3 with TRS: a real block plus one conjugate pair") {
  const auto cfg = config("cyclic:3", "trivial", TrsMode::plus, 2, 2, 5);
  const auto pred = predict_threefold(cfg.group, cfg.cocycle, cfg.trs, 2, 2, 5);
  CHECK(pred.summary() == "LOE(2x2) + LUE+conj-LUE(2x2)");
  CHECK(pred.iota_reg == 1);  // only the identity squares to e
  const auto rep = verify_decomposition(cfg, 1000);
  CHECK(rep.pass);
}

TEST_CASE("dihedral:4 with TRS: five real blocks") {
  const auto cfg = config("dihedral:4", "trivial", TrsMode::plus, 2, 2, 5);
  const auto pred = predict_threefold(cfg.group, cfg.cocycle, cfg.trs, 2, 2, 5);
  CHECK(pred.summary() ==
        "LOE(2x2) + LOE(2x2) + LOE(2x2) + LOE(2x2) + LOE(4x4, degeneracy 2)");
  CHECK(pred.iota_reg == 6);  // e, r^2 and four reflections square to e
  const auto rep = verify_decomposition(cfg, 1000);
  CHECK(rep.pass);
}

TEST_CASE("inversion tilde on Z4 end to end") {
  // nontrivial involutory automorphism: ~g = g^{-1}; every irrep pairs with
  // itself under conj(chi(~g)) = chi(g), so all four blocks become real
  auto cfg = config("cyclic:4", "trivial", TrsMode::plus, 2, 2, 9);
  const FiniteGroup g = cfg.group;
  std::vector<int> invmap(4);
  for (int x = 0; x < 4; ++x) invmap[x] = g.inverse(x);
  cfg.trs = make_time_reversal(g, invmap, +1);
  require_valid_cocycle(cfg.cocycle, cfg.trs);

  const auto pred = predict_threefold(g, cfg.cocycle, cfg.trs, 2, 2, 9);
  CHECK(pred.summary() == "LOE(2x2) + LOE(2x2) + LOE(2x2) + LOE(2x2)");
  CHECK(pred.iota_reg == 4);
  const auto rep = verify_decomposition(cfg, 1000);
  CHECK(rep.pass);
}

TEST_CASE("product(q8,cyclic:2) with TRS: the spin blocks stay quaternionic") {
  const auto cfg = config("product(q8,cyclic:2)", "trivial", TrsMode::plus, 1, 1, 3);
  const auto pred = predict_threefold(cfg.group, cfg.cocycle, cfg.trs, 1, 1, 3);
  int loe = 0, lse = 0;
  for (const auto& e : pred.entries) {
    if (e.ensemble == Ensemble::LOE) ++loe;
    if (e.ensemble == Ensemble::LSE) ++lse;
  }
  CHECK(loe == 8);
  CHECK(lse == 2);
  CHECK(pred.d_plus - pred.d_minus == pred.iota_reg);
  CHECK(pred.iota_reg == 4);
}
