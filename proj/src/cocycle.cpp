#include "threefold/cocycle.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "threefold/rep.hpp"

namespace threefold {

CocycleValidation validate_cocycle(TwoCocycle& omega,
                                   const std::optional<TimeReversalStructure>& trs) {
  CocycleValidation out;
  const int n = omega.group.order;
  if (static_cast<int>(omega.phases.size()) != n * n)
    throw std::invalid_argument("cocycle: phase table size " +
                                std::to_string(omega.phases.size()) +
                                " does not match group order " + std::to_string(n));
  if (trs && static_cast<int>(trs->tilde.size()) != n)
    throw std::invalid_argument("cocycle: time-reversal structure does not match group");

  out.normalized = true;
  const int e = omega.group.identity;
  for (int g = 0; g < n && out.normalized; ++g) {
    if (!omega.at(e, g).is_zero() || !omega.at(g, e).is_zero()) {
      out.normalized = false;
      out.failure = "normalization fails at element " + std::to_string(g);
    }
  }

  out.cocycle_ok = true;
  for (int a = 0; a < n && out.cocycle_ok; ++a)
    for (int b = 0; b < n && out.cocycle_ok; ++b)
      for (int c = 0; c < n && out.cocycle_ok; ++c) {
        const Turn lhs = omega.at(a, b) + omega.at(omega.group.times(a, b), c);
        const Turn rhs = omega.at(a, omega.group.times(b, c)) + omega.at(b, c);
        if (lhs != rhs) {
          out.cocycle_ok = false;
          out.failure = "cocycle condition fails at (" + std::to_string(a) + "," +
                        std::to_string(b) + "," + std::to_string(c) + ")";
        }
      }

  if (trs) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g)
      for (int h = 0; h < n && ok; ++h) {
        const Turn prod = omega.at(g, h) + omega.at(trs->apply(g), trs->apply(h));
        if (!prod.is_zero()) {
          ok = false;
          out.failure = "TRS compatibility omega(g,h)omega(~g,~h)=1 fails at (" +
                        std::to_string(g) + "," + std::to_string(h) + ")";
        }
      }
    out.trs_ok = ok;
  }

  if (out.pass() && trs) omega.trs_checked = *trs;
  return out;
}

void require_valid_cocycle(TwoCocycle& omega,
                           const std::optional<TimeReversalStructure>& trs) {
  const CocycleValidation v = validate_cocycle(omega, trs);
  if (!v.pass()) throw std::invalid_argument("invalid cocycle: " + v.failure);
}

TwoCocycle preset_cocycle(const std::string& name, const FiniteGroup& g0) {
  TwoCocycle w;
  w.group = g0;
  w.phases.assign(static_cast<std::size_t>(g0.order) * g0.order, Turn::zero());
  if (name == "trivial") return w;
  if (name == "z2-minus") {
    if (!(g0 == cyclic_group(2)))
      throw std::invalid_argument("preset 'z2-minus' requires group cyclic:2, got '" +
                                  g0.name + "'");
    w.phases[1 * 2 + 1] = Turn::half();  // omega(p, p) = -1
    return w;
  }
  if (name == "z3z3-root") {
    const FiniteGroup canon = product_group(cyclic_group(3), cyclic_group(3));
    if (!(g0 == canon))
      throw std::invalid_argument(
          "preset 'z3z3-root' requires group product(cyclic:3,cyclic:3), got '" +
          g0.name + "'");
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b) {
        const int a2 = a % 3, b1 = b / 3;
        w.phases[a * 9 + b] = Turn::make(a2 * b1, 3);
      }
    return w;
  }
  throw std::invalid_argument("unknown cocycle preset '" + name + "'");
}

TwoCocycle apply_coboundary(const TwoCocycle& omega, const Coboundary& beta,
                            const std::optional<TimeReversalStructure>& trs) {
  const int n = omega.group.order;
  if (static_cast<int>(beta.beta.size()) != n)
    throw std::invalid_argument("coboundary: beta length does not match group order");
  if (!beta.beta[omega.group.identity].is_zero())
    throw std::invalid_argument("coboundary: beta(e) must be 1");
  if (trs) {
    for (int g = 0; g < n; ++g)
      if (!(beta.beta[g] + beta.beta[trs->apply(g)]).is_zero())
        throw std::invalid_argument(
            "coboundary: beta(g)beta(~g)=1 fails at element " + std::to_string(g));
  }
  TwoCocycle out;
  out.group = omega.group;
  out.phases.resize(omega.phases.size());
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      out.phases[g * n + h] = omega.at(g, h) + beta.beta[omega.group.times(g, h)] -
                              beta.beta[g] - beta.beta[h];
  require_valid_cocycle(out, trs);
  return out;
}

Turn FullCocycle::at_full(int a, int b) const {
  const int n = omega.group.order;
  const int g = a % n, h = b % n;
  const bool ta = a >= n, tb = b >= n;
  Turn r = ta ? omega.at(g, trs.apply(h)) : omega.at(g, h);
  if (ta && tb && trs.omega_tt == -1) r = r + Turn::half();
  return r;
}

FullCocycle extend_full_omega(const TwoCocycle& omega,
                              const TimeReversalStructure& trs) {
  if (!omega.trs_checked.has_value() || omega.trs_checked->tilde != trs.tilde ||
      omega.trs_checked->omega_tt != trs.omega_tt)
    throw std::invalid_argument(
        "extend_full_omega: cocycle has not been validated against this "
        "time-reversal structure");
  return FullCocycle{omega, trs};
}

bool is_trivial_class(const TwoCocycle& omega) {
  TwoCocycle w = omega;
  require_valid_cocycle(w, std::nullopt);
  const IrrepDecomposition dec = decompose_regular(w.group, w, kClassifierSeed);
  for (const auto& b : dec.blocks)
    if (b.dim == 1) return true;
  return false;
}

TwoCocycle load_cocycle_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("cocycle file: JSON parse error: ") +
                                e.what());
  }
  if (!j.contains("group") || !j.contains("phases"))
    throw std::invalid_argument("cocycle file: missing 'group' or 'phases'");
  TwoCocycle w;
  w.group = make_group(j["group"].get<std::string>());
  const auto& ph = j["phases"];
  const std::size_t need = static_cast<std::size_t>(w.group.order) * w.group.order;
  if (!ph.is_array() || ph.size() != need)
    throw std::invalid_argument("cocycle file: 'phases' must have order^2 entries");
  w.phases.reserve(need);
  for (const auto& p : ph) {
    if (!p.is_array() || p.size() != 2)
      throw std::invalid_argument("cocycle file: each phase is a [num, den] pair");
    w.phases.push_back(Turn::make(p[0].get<std::int64_t>(), p[1].get<std::int64_t>()));
  }
  return w;
}

std::string cocycle_to_json(const TwoCocycle& omega) {
  nlohmann::json j;
  j["group"] = omega.group.name;
  nlohmann::json ph = nlohmann::json::array();
  for (const auto& t : omega.phases) ph.push_back({t.num(), t.den()});
  j["phases"] = ph;
  return j.dump(2);
}

}  // namespace threefold
