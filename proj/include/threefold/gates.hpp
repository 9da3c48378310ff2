#pragma once

#include <vector>

#include "threefold/cocycle.hpp"
#include "threefold/group.hpp"
#include "threefold/matrix.hpp"
#include "threefold/rep.hpp"

namespace threefold {

// An (anti)unitary operator as a unitary matrix plus a conjugation flag;
// acts as matrix * K when conjugates is set. Composition follows
// (A K)(B K) = A conj(B).
struct AntiunitaryOp {
  Matrix matrix;
  bool conjugates = false;

  std::vector<cx> apply(const std::vector<cx>& v) const;
  AntiunitaryOp inverse() const;
};

AntiunitaryOp compose(const AntiunitaryOp& a, const AntiunitaryOp& b);

// Maximum deviation over the basis vectors e_k and i*e_k; the imaginary
// probes make a conjugation-flag mismatch visible.
double antiunitary_distance(const AntiunitaryOp& a, const AntiunitaryOp& b);

// On-site regular representation D(g)|h> = |gh>.
Matrix regular_permutation(const FiniteGroup& g0, int g);

// D(t) = sum_g |~g><g| K.
AntiunitaryOp time_reversal_op(const FiniteGroup& g0,
                               const TimeReversalStructure& trs);

// psi_g = (1/sqrt|G0|) sum_h |h g>|h>, dim |G0|^2, index (g_l, g_r) g_l-major.
std::vector<std::vector<cx>> symmetric_basis(const FiniteGroup& g0);

// P = sum_g |psi_g><psi_g| = |G0|^{-1} sum_g D(g) (x) D(g).
Matrix symmetric_projector(const FiniteGroup& g0);

// Omega = sum omega(g_r, g_r^{-1} g_l) |g_l, g_r><g_l, g_r| (diagonal).
Matrix omega_gate(const FiniteGroup& g0, const TwoCocycle& omega);

// Upsilon = (1-i)/2 [1_4 - i sigma_y (x) sigma_y] on the (sigma_L, sigma_R)
// pair, basis order (++, +-, -+, --).
Matrix upsilon_gate();

Matrix sigma_y();

// u = U2 U1 with U1 = sum_g D(g) (x) |g^{-1}><g^{-1}| and
// U2 = u2 (x) 1, u2 = sum_g (w8 |g> + w8^{-1} |~g>) <g| / sqrt(2).
// Satisfies u (D(g) (x) D(g)) u^dag = 1 (x) D(g) for unitary g, and the
// analogous antiunitary identity for g0 t.
Matrix concentrator(const FiniteGroup& g0, const TimeReversalStructure& trs);

// The fractionalized on-site representation D(g) = sum omega(g,g')|gg'><g'|;
// additionally asserts Omega (D(g) (x) D(g)) Omega^dag = Dfrac(g) (x)
// conj(Dfrac(g)) before returning.
ProjectiveRep fractionalized_rep(const FiniteGroup& g0, const TwoCocycle& omega);

// |G0| <= 12 guard shared by the |G0|^2-sized constructions.
void check_state_scale(const FiniteGroup& g0);

}  // namespace threefold
