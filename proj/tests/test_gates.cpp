#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "threefold/gates.hpp"
#include "threefold/linalg.hpp"

using namespace threefold;

namespace {

TwoCocycle valid_cocycle(const std::string& name, const FiniteGroup& g,
                         const std::optional<TimeReversalStructure>& trs) {
  TwoCocycle w = preset_cocycle(name, g);
  require_valid_cocycle(w, trs);
  return w;
}

double ip_norm(const std::vector<cx>& a, const std::vector<cx>& b) {
  cx acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return std::abs(acc);
}

}  // namespace

TEST_CASE("symmetric basis") {
  SUBCASE("trivial group: the single vector [1]") {
    const auto basis = symmetric_basis(make_group("cyclic:1"));
    REQUIRE(basis.size() == 1);
    CHECK(std::abs(basis[0][0] - cx(1.0, 0.0)) < 1e-15);
  }
  SUBCASE("Z2: psi_e = (|ee>+|pp>)/sqrt2, psi_p = (|pe>+|ep>)/sqrt2") {
    const auto basis = symmetric_basis(make_group("cyclic:2"));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(basis[0][0] - cx(r, 0)) < 1e-15);  // |e>|e>
    CHECK(std::abs(basis[0][3] - cx(r, 0)) < 1e-15);  // |p>|p>
    CHECK(std::abs(basis[1][2] - cx(r, 0)) < 1e-15);  // |p>|e>
    CHECK(std::abs(basis[1][1] - cx(r, 0)) < 1e-15);  // |e>|p>
  }
  SUBCASE("orthonormality and G0-invariance") {
    for (const char* spec : {"cyclic:3", "dihedral:3", "q8"}) {
      const FiniteGroup g = make_group(spec);
      const auto basis = symmetric_basis(g);
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
          CHECK(std::abs(ip_norm(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
      for (int gp = 0; gp < g.order; ++gp) {
        const Matrix act = kron(regular_permutation(g, gp), regular_permutation(g, gp));
        for (const auto& psi : basis) {
          const auto moved = act.apply(psi);
          double dev = 0.0;
          for (std::size_t k = 0; k < psi.size(); ++k)
            dev = std::max(dev, std::abs(moved[k] - psi[k]));
          CHECK(dev < 1e-12);
        }
      }
    }
  }
  SUBCASE("projector equals the group average of D (x) D, trace |G0|") {
    const FiniteGroup g = make_group("dihedral:3");
    const Matrix p = symmetric_projector(g);
    Matrix avg(g.order * g.order, g.order * g.order);
    for (int gp = 0; gp < g.order; ++gp)
      avg += kron(regular_permutation(g, gp), regular_permutation(g, gp));
    avg *= cx(1.0 / g.order, 0.0);
    CHECK(distance_max(p, avg) < 1e-12);
    CHECK(std::abs(p.trace() - cx(g.order, 0.0)) < 1e-10);
  }
  SUBCASE("time reversal permutes psi_g to psi_tilde(g) on Z4 with inversion") {
    const FiniteGroup g = make_group("cyclic:4");
    std::vector<int> invmap{0, 3, 2, 1};
    const auto trs = make_time_reversal(g, invmap, +1);
    const auto tr_site = time_reversal_op(g, trs);
    const AntiunitaryOp tt{kron(tr_site.matrix, tr_site.matrix), true};
    const auto basis = symmetric_basis(g);
    for (int gg = 0; gg < g.order; ++gg) {
      const auto moved = tt.apply(basis[gg]);
      double dev = 0.0;
      for (std::size_t k = 0; k < moved.size(); ++k)
        dev = std::max(dev, std::abs(moved[k] - basis[trs.apply(gg)][k]));
      CHECK(dev < 1e-12);
    }
  }
}

TEST_CASE("omega gate") {
  SUBCASE("trivial cocycle gives the identity") {
    const FiniteGroup g = make_group("dihedral:3");
    const Matrix og = omega_gate(g, valid_cocycle("trivial", g, {}));
    CHECK(distance_max(og, Matrix::identity(g.order * g.order)) == 0.0);
  }
  SUBCASE("z2-minus: the single -1 sits at (g_l,g_r) = (e,p)") {
    const FiniteGroup g = make_group("cyclic:2");
    const Matrix og = omega_gate(g, valid_cocycle("z2-minus", g, {}));
    for (int gl = 0; gl < 2; ++gl)
      for (int gr = 0; gr < 2; ++gr) {
        const int idx = gl * 2 + gr;
        const double expect = (gl == 0 && gr == 1) ? -1.0 : 1.0;
        CHECK(std::abs(og(idx, idx) - cx(expect, 0.0)) < 1e-15);
      }
  }
  SUBCASE("conjugation identity against the fractionalized representation") {
    struct Case {
      std::string group, preset;
    };
    for (const Case& c : {Case{"cyclic:2", "z2-minus"},
                          Case{"product(cyclic:3,cyclic:3)", "z3z3-root"},
                          Case{"q8", "trivial"}}) {
      const FiniteGroup g = make_group(c.group);
      const TwoCocycle w = valid_cocycle(c.preset, g, {});
      const Matrix og = omega_gate(g, w);
      const auto frac = projective_regular_rep(g, w);
      for (int gg = 0; gg < g.order; ++gg) {
        const Matrix d = regular_permutation(g, gg);
        const Matrix lhs = (og * kron(d, d)).times_adjoint(og);
        const Matrix rhs = kron(frac.matrices[gg], frac.matrices[gg].conjugate());
        CHECK(distance_max(lhs, rhs) < 1e-12);
      }
    }
  }
  SUBCASE("gate unitarity residuals stay below 1e-12") {
    const FiniteGroup g = make_group("product(cyclic:3,cyclic:3)");
    CHECK(unitarity_residual(omega_gate(g, valid_cocycle("z3z3-root", g, {}))) <
          1e-12);
    CHECK(unitarity_residual(upsilon_gate()) < 1e-12);
    CHECK(unitarity_residual(concentrator(g, identity_time_reversal(g, +1))) <
          1e-12);
  }
  SUBCASE("Omega commutes with D(t) (x) D(t) exactly when TRS-compatible") {
    const FiniteGroup z2 = make_group("cyclic:2");
    const auto trs = identity_time_reversal(z2, +1);
    const Matrix og = omega_gate(z2, valid_cocycle("z2-minus", z2, trs));
    const auto tr_site = time_reversal_op(z2, trs);
    const AntiunitaryOp tt{kron(tr_site.matrix, tr_site.matrix), true};
    const AntiunitaryOp omega_op{og, false};
    CHECK(antiunitary_distance(compose(omega_op, tt), compose(tt, omega_op)) < 1e-12);

    const FiniteGroup z33 = make_group("product(cyclic:3,cyclic:3)");
    const auto trs9 = identity_time_reversal(z33, +1);
    const Matrix og9 = omega_gate(z33, valid_cocycle("z3z3-root", z33, {}));
    const auto tr9 = time_reversal_op(z33, trs9);
    const AntiunitaryOp tt9{kron(tr9.matrix, tr9.matrix), true};
    const AntiunitaryOp omega_op9{og9, false};
    CHECK(antiunitary_distance(compose(omega_op9, tt9), compose(tt9, omega_op9)) > 0.1);
  }
}

TEST_CASE("upsilon gate") {
  const Matrix ups = upsilon_gate();
  SUBCASE("unitary to machine precision") {
    CHECK(unitarity_residual(ups) < 1e-15);
  }
  SUBCASE("squares to -sigma_y (x) sigma_y, cubes to its conjugate") {
    const Matrix yy = kron(sigma_y(), sigma_y());
    CHECK(distance_max(ups * ups, yy * cx(-1.0, 0.0)) < 1e-15);
    CHECK(distance_max(ups * ups * ups, ups.conjugate()) < 1e-15);
  }
  SUBCASE("conjugates plain conjugation into (i sigma_y) (x) (i sigma_y) K") {
    const AntiunitaryOp plain{Matrix::identity(4), true};
    const AntiunitaryOp ups_op{ups, false};
    const AntiunitaryOp lhs =
        compose(ups_op, compose(plain, AntiunitaryOp{ups.adjoint(), false}));
    const Matrix isy = sigma_y() * cx(0.0, 1.0);
    const AntiunitaryOp rhs{kron(isy, isy), true};
    CHECK(antiunitary_distance(lhs, rhs) < 1e-14);
  }
  SUBCASE("real 2x2 block becomes a quaternion spin block") {
    const double x1 = 0.7, x2 = -1.3, x3 = 0.21, x4 = 2.2;
    std::vector<cx> block{cx(x1, 0), cx(x2, 0), cx(x3, 0), cx(x4, 0)};
    const auto mapped = ups.apply(block);
    const cx q1 = cx(0.5, -0.5) * (cx(x1, 0) + cx(0, 1) * cx(x4, 0));
    const cx q2 = cx(0.5, -0.5) * (cx(x2, 0) - cx(0, 1) * cx(x3, 0));
    CHECK(std::abs(mapped[0] - q1) < 1e-15);
    CHECK(std::abs(mapped[1] - q2) < 1e-15);
    CHECK(std::abs(mapped[2] + std::conj(q2)) < 1e-15);
    CHECK(std::abs(mapped[3] - std::conj(q1)) < 1e-15);
  }
}

TEST_CASE("concentrator") {
  SUBCASE("trivial group reduces to the scalar 1") {
    const FiniteGroup g = make_group("cyclic:1");
    const Matrix u = concentrator(g, identity_time_reversal(g, +1));
    CHECK(std::abs(u(0, 0) - cx(1.0, 0.0)) < 1e-12);
  }
  struct Case {
    std::string spec;
    bool inversion_tilde;
  };
  for (const Case& c : {Case{"cyclic:2", false}, Case{"dihedral:3", false},
                        Case{"cyclic:4", true}}) {
    const FiniteGroup g = make_group(c.spec);
    TimeReversalStructure trs = identity_time_reversal(g, +1);
    if (c.inversion_tilde) {
      std::vector<int> invmap(g.order);
      for (int x = 0; x < g.order; ++x) invmap[x] = g.inverse(x);
      trs = make_time_reversal(g, invmap, +1);
    }
    const Matrix u = concentrator(g, trs);
    SUBCASE(("unitarity and the unitary identity: " + c.spec).c_str()) {
      CHECK(unitarity_residual(u) < 1e-12);
      for (int gg = 0; gg < g.order; ++gg) {
        const Matrix d = regular_permutation(g, gg);
        const Matrix lhs = (u * kron(d, d)).times_adjoint(u);
        const Matrix rhs = kron(Matrix::identity(g.order), d);
        CHECK(distance_max(lhs, rhs) < 1e-10);
      }
    }
    SUBCASE(("antiunitary identity: " + c.spec).c_str()) {
      const AntiunitaryOp uop{u, false};
      const AntiunitaryOp uinv = uop.inverse();
      const auto tr_site = time_reversal_op(g, trs);
      for (int g0 = 0; g0 < g.order; ++g0) {
        const Matrix site = regular_permutation(g, g0) * tr_site.matrix;
        const AntiunitaryOp both{kron(site, site), true};
        const AntiunitaryOp lhs = compose(uop, compose(both, uinv));
        const AntiunitaryOp rhs{kron(Matrix::identity(g.order), site), true};
        CHECK(antiunitary_distance(lhs, rhs) < 1e-10);
      }
    }
  }
}

TEST_CASE("fractionalized representation") {
  SUBCASE("trivial cocycle reproduces the permutation regular rep") {
    const FiniteGroup g = make_group("dihedral:3");
    const auto rep = fractionalized_rep(g, valid_cocycle("trivial", g, {}));
    for (int gg = 0; gg < g.order; ++gg)
      CHECK(distance_max(rep.matrices[gg], regular_permutation(g, gg)) == 0.0);
  }
  SUBCASE("z2-minus squares to -1") {
    const FiniteGroup g = make_group("cyclic:2");
    const auto rep = fractionalized_rep(g, valid_cocycle("z2-minus", g, {}));
    CHECK(distance_max(rep.matrices[1] * rep.matrices[1],
                       Matrix::identity(2) * cx(-1.0, 0.0)) < 1e-15);
  }
  SUBCASE("the Omega-consistency assertion holds for the Z3xZ3 preset") {
    const FiniteGroup g = make_group("product(cyclic:3,cyclic:3)");
    CHECK_NOTHROW(fractionalized_rep(g, valid_cocycle("z3z3-root", g, {})));
  }
  SUBCASE("state-scale cap") {
    CHECK_THROWS_AS(symmetric_basis(make_group("product(q8,cyclic:2)")),
                    std::invalid_argument);
  }
}
