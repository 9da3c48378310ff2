#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "threefold/cocycle.hpp"
#include "threefold/group.hpp"
#include "threefold/matrix.hpp"
#include "threefold/rep.hpp"

namespace threefold {

enum class TrsMode { none, plus, minus };

const char* trs_mode_name(TrsMode m);
TrsMode parse_trs_mode(const std::string& s);

struct SampleConfig {
  std::string group_spec = "cyclic:2";
  std::string cocycle_name = "trivial";  // preset; ignored if cocycle_file set
  std::string cocycle_file;              // path to a JSON cocycle
  TrsMode trs_mode = TrsMode::none;
  int d_l = 2;
  int d_r = 2;
  std::uint64_t seed = 7;
  bool normalize = true;
};

// Parsed and validated form of SampleConfig. trs is engaged for plus/minus
// with the identity automorphism and omega(t,t) = +1 / -1.
struct ResolvedConfig {
  FiniteGroup group;
  TwoCocycle cocycle;
  std::optional<TimeReversalStructure> trs;
  TrsMode mode = TrsMode::none;
  int d_l = 2, d_r = 2;
  std::uint64_t seed = 7;
  bool normalize = true;
  std::string cocycle_name;
};

// Validates: group spec, cocycle (incl. TRS compatibility for plus/minus),
// d_l <= d_r, and even d_l, d_r for mode minus.
ResolvedConfig resolve(const SampleConfig& cfg);

// c[L, g, R], shape d_l x |G0| x d_r, flattened L-major.
struct CoefficientTensor {
  int d_l = 0, order = 0, d_r = 0;
  TrsMode constraint_mode = TrsMode::none;
  std::vector<cx> c;

  cx& at(int l, int g, int r) { return c[(l * order + g) * d_r + r]; }
  const cx& at(int l, int g, int r) const { return c[(l * order + g) * d_r + r]; }
};

// Gaussian draw with the TRS constraint of the mode:
//   none:  every entry ~ CN(0,1)
//   plus:  c[L,~g,R] = conj(c[L,g,R]); self-paired entries real N(0,1)
//   minus: sigma_y conj(c-block) sigma_y constraint on the 2x2 sigma blocks
// Deterministic function of (seed, sample_index); partners are assigned,
// not re-sampled.
CoefficientTensor sample_coefficients(const ResolvedConfig& cfg,
                                      std::uint64_t sample_index);

// Upsilon mixing of the sigma_L/sigma_R factors:
// c' = (1-i)/2 (c[sL,sR] + i sL sR c[-sL,-sR]). Maps a plus-constrained
// tensor onto a quaternionic-constrained one; mode-minus draws already
// carry the quaternionic constraint (the post-Upsilon description), so W
// is built from them directly.
CoefficientTensor apply_upsilon(const CoefficientTensor& c);
CoefficientTensor apply_upsilon_inverse(const CoefficientTensor& c);

// W with rows (L, g_l) L-major and columns (g_r, R) g_r-major:
// [W]_{(L,g_l),(g_r,R)} = omega(g_r, g_r^{-1} g_l) c[L, g_r^{-1} g_l, R] / sqrt|G0|.
struct WMatrix {
  Matrix w;
  int d_l = 0, d_r = 0, order = 0;
};

WMatrix build_w(const CoefficientTensor& c, const TwoCocycle& omega);

// W_alpha[(L,j),(R,j')] = (1/sqrt|G0|) sum_g c[L,g,R] D^alpha_{j'j}(g);
// rows (L major, j minor), columns (R major, j' minor).
std::vector<Matrix> block_w(const CoefficientTensor& c,
                            const IrrepDecomposition& dec);

// Explicit global state on (L, l, r, R) built through the gate pipeline:
// expand sum c |L>|psi_g>|R>, apply the Omega gate, apply Upsilon for mode
// minus, optionally normalize. Amplitudes indexed (L, g_l, g_r, R) L-major.
struct FullState {
  std::vector<cx> amp;
  int d_l = 0, order = 0, d_r = 0;
  bool normalized = false;
};

FullState build_full_state(const CoefficientTensor& c, const TwoCocycle& omega,
                           TrsMode mode, bool normalize);

// rho_a = Tr_{r,R} |Psi><Psi| for the recorded (L,l | r,R) cut.
Matrix reduced_density(const FullState& state);

}  // namespace threefold
