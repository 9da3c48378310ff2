#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "threefold/cocycle.hpp"
#include "threefold/group.hpp"
#include "threefold/matrix.hpp"

namespace threefold {

// D(g) D(h) = omega(g, h) D(gh) with unitary D(g).
struct ProjectiveRep {
  FiniteGroup group;
  TwoCocycle cocycle;
  int dim = 0;
  std::vector<Matrix> matrices;

  // max over (g,h) of the projective-product and unitarity residuals
  double check_residual() const;
};

// The projective regular representation D(g) = sum_g' omega(g,g') |gg'><g'|.
ProjectiveRep projective_regular_rep(const FiniteGroup& g0, const TwoCocycle& omega);

constexpr int kIndicatorUnset = 2;

struct IrrepBlock {
  int label = 0;  // 1-based, canonical order (dim, then character)
  int dim = 0;
  std::vector<Matrix> matrices;  // one unitary per group element
  int indicator = kIndicatorUnset;  // -1, 0, +1 once computed
  int partner = -1;                 // 0-based block index of alpha-star (iota=0)
  bool canonical_basis_applied = false;

  std::vector<cx> character() const;
};

struct IrrepDecomposition {
  FiniteGroup group;
  TwoCocycle cocycle;
  std::vector<IrrepBlock> blocks;   // one per equivalence class
  std::vector<int> multiplicity;    // copies in the regular rep (= dim)
  // U_reg with U_reg^dag D_reg(g) U_reg = direct-sum_alpha D^alpha(g) (x) 1_{d_alpha};
  // equals the adjoint of the partial diagonalizer built from the blocks.
  Matrix change_of_basis;
  std::uint64_t seed = 0;
};

// Fixed seed for deterministic classification paths (is_trivial_class, CLI).
constexpr std::uint64_t kClassifierSeed = 0xC0C1C1E5ULL;

// Random-commutant block diagonalization of the projective regular rep.
// Deterministic given seed; throws (suggesting a new seed) if eigenspaces
// fail to separate within the retry budget.
IrrepDecomposition decompose_regular(const FiniteGroup& g0, const TwoCocycle& omega,
                                     std::uint64_t seed);

// iota_alpha = (1/|G0|) sum_g omega(~g, g) chi_alpha(~g g), rounded to
// {-1, 0, +1}; errors if the sum is not within 1e-8 of one of those.
int indicator(const IrrepBlock& block, const TwoCocycle& omega,
              const TimeReversalStructure& trs);

// Rotates the block basis so conj(D(~g)) = D(g) (iota=+1) or
// Y conj(D(~g)) Y = D(g) with Y = sigma_y (x) 1 (iota=-1).
IrrepBlock canonicalize_irrep(const IrrepBlock& block, const TwoCocycle& omega,
                              const TimeReversalStructure& trs,
                              std::uint64_t seed = kClassifierSeed);

// iota_reg = sum over solutions of ~g g = e of omega(~g, g); evaluated in
// exact rational arithmetic whenever the pair contributions 2cos(2 pi r)
// are rational (turn denominators 1,2,3,4,6 - all presets), otherwise
// numerically with an exactness check at 1e-9.
int regular_indicator(const FiniteGroup& g0, const TwoCocycle& omega,
                      const TimeReversalStructure& trs);

// [U]_{theta, g} = sqrt(d_alpha/|G0|) D^alpha_{ij}(g), theta = (alpha, i, j).
Matrix build_partial_diagonalizer(const IrrepDecomposition& dec);

// Computes indicators, canonicalizes iota=+-1 blocks, pairs iota=0 blocks,
// and refreshes change_of_basis. Requires omega validated against trs.
void apply_trs_analysis(IrrepDecomposition& dec, const TimeReversalStructure& trs);

enum class Ensemble { LOE, LUE, LSE, LUEPair };
const char* ensemble_name(Ensemble e);

struct PredictionEntry {
  int block_index = 0;    // into decomposition.blocks
  int partner_index = -1; // for LUEPair
  Ensemble ensemble = Ensemble::LUE;
  int rows = 0, cols = 0; // d_L d_alpha x d_R d_alpha
  int degeneracy = 1;     // d_alpha
  double element_variance = 1.0;  // 1/d_alpha
};

struct DecompositionPrediction {
  IrrepDecomposition decomposition;  // canonicalized when trs present
  std::optional<TimeReversalStructure> trs;
  int d_L = 1, d_R = 1;
  std::vector<PredictionEntry> entries;
  int d_plus = 0, d_minus = 0;  // LOE- and LSE-block dims, degeneracy counted
  int iota_reg = 0;             // meaningful only with trs
  std::string summary() const;  // e.g. "LOE(2x2) + LSE(4x4, degeneracy 2)"
};

// The predicted block decomposition: all-LUE without trs, the threefold
// LOE/LUE-pair/LSE split with.
DecompositionPrediction predict_threefold(const FiniteGroup& g0,
                                          const TwoCocycle& omega,
                                          const std::optional<TimeReversalStructure>& trs,
                                          int d_l, int d_r,
                                          std::uint64_t seed = kClassifierSeed);

std::string decomposition_to_json(const IrrepDecomposition& dec);

}  // namespace threefold
