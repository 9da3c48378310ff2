#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace threefold {

// A finite group as an explicit multiplication table over dense element
// indices 0..order-1, identity at index 0. Immutable after construction.
struct FiniteGroup {
  int order = 0;
  std::vector<int> mul;  // order x order, row-major: mul[a*order+b] = a*b
  int identity = 0;
  std::vector<int> inv;  // inv[g] * g = e
  std::string name;

  int times(int a, int b) const { return mul[a * order + b]; }
  int inverse(int g) const { return inv[g]; }
  bool operator==(const FiniteGroup& o) const {
    return order == o.order && mul == o.mul;
  }

  // Throws std::invalid_argument naming the violated axiom.
  void validate() const;
  bool is_abelian() const;
};

// Group spec grammar: cyclic:<n> (n>=1), dihedral:<n> (n>=3), q8,
// product(<spec>,<spec>). Malformed specs are rejected with the offending
// token in the message.
FiniteGroup make_group(const std::string& spec);

FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);  // order 2n
FiniteGroup quaternion_group();     // Q8
FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b);

// The time-reversal side structure of G = G0 x| Z2^T: the involutory
// automorphism g -> tilde(g) = t g t and the sign omega(t,t).
struct TimeReversalStructure {
  std::vector<int> tilde;
  int omega_tt = +1;  // +1 or -1

  int apply(int g) const { return tilde[g]; }
  bool is_direct_product() const;  // tilde is the identity map
};

// Validates involution and automorphism exactly; rejections name the
// violating element or pair.
TimeReversalStructure make_time_reversal(const FiniteGroup& g0,
                                         const std::vector<int>& tilde_map,
                                         int omega_tt);

// The identity automorphism (direct product G0 x Z2^T); always valid.
TimeReversalStructure identity_time_reversal(const FiniteGroup& g0, int omega_tt);

}  // namespace threefold
