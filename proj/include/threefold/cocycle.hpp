#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "threefold/group.hpp"
#include "threefold/rational.hpp"

namespace threefold {

// A normalized unit-modulus 2-cocycle on G0, stored as exact rational turns:
// omega(g, h) = exp(2*pi*i * phases[g*order + h]).
struct TwoCocycle {
  FiniteGroup group;
  std::vector<Turn> phases;  // order x order, row-major
  // set by validate_cocycle when a time-reversal structure was checked
  std::optional<TimeReversalStructure> trs_checked;

  Turn at(int g, int h) const { return phases[g * group.order + h]; }
  std::complex<double> value(int g, int h) const { return at(g, h).to_complex(); }
};

struct CocycleValidation {
  bool normalized = false;
  bool cocycle_ok = false;
  // engaged only when a TRS structure was supplied
  std::optional<bool> trs_ok;
  std::string failure;  // first violation, human-readable; empty if pass

  bool pass() const {
    return normalized && cocycle_ok && (!trs_ok.has_value() || *trs_ok);
  }
};

// Exact checks: normalization omega(e,g)=omega(g,e)=1, the cocycle condition
// omega(g,g')omega(gg',g'') = omega(g,g'g'')omega(g',g''), and (with trs)
// omega(g,h)omega(~g,~h) = 1. On full success with trs, stamps trs_checked.
CocycleValidation validate_cocycle(TwoCocycle& omega,
                                   const std::optional<TimeReversalStructure>& trs);

// Same, but throws std::invalid_argument on failure.
void require_valid_cocycle(TwoCocycle& omega,
                           const std::optional<TimeReversalStructure>& trs);

// Presets: "trivial" (any group), "z2-minus" (Z2; omega(p,p) = -1),
// "z3z3-root" (Z3 x Z3; omega((a1,a2),(b1,b2)) = exp(2*pi*i*a2*b1/3)).
TwoCocycle preset_cocycle(const std::string& name, const FiniteGroup& g0);

// beta: G0 -> U(1) stored as turns; beta(e) = 1, and under TRS additionally
// beta(g) beta(~g) = 1.
struct Coboundary {
  std::vector<Turn> beta;
};

// omega'(g,h) = beta(gh) / (beta(g) beta(h)) * omega(g,h); the cohomology
// class is unchanged by construction.
TwoCocycle apply_coboundary(const TwoCocycle& omega, const Coboundary& beta,
                            const std::optional<TimeReversalStructure>& trs);

// The full-group phase function on (G0 x| Z2^T)^2 in the decoupled gauge.
// Elements of the full group are (g, tau) with tau in {0, 1} encoded as
// index g + tau * |G0|.
struct FullCocycle {
  TwoCocycle omega;
  TimeReversalStructure trs;

  int full_order() const { return 2 * omega.group.order; }
  Turn at_full(int a, int b) const;
  bool antiunitary(int a) const { return a >= omega.group.order; }
};

// Requires omega already validated against trs (trs_checked matches).
FullCocycle extend_full_omega(const TwoCocycle& omega,
                              const TimeReversalStructure& trs);

// True iff the cohomology class of omega is trivial in H^2(G0, U(1)),
// decided by whether the regular-representation decomposition contains a
// 1-dimensional irrep.
bool is_trivial_class(const TwoCocycle& omega);

// JSON cocycle file: { "group": "<spec>", "phases": [[num,den], ...] }
// row-major, turns as reduced fractions.
TwoCocycle load_cocycle_json(const std::string& text);
std::string cocycle_to_json(const TwoCocycle& omega);

}  // namespace threefold
