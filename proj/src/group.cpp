#include "threefold/group.hpp"

#include <cctype>
#include <stdexcept>

#include "threefold/rng.hpp"

namespace threefold {

namespace {

FiniteGroup finish(FiniteGroup g) {
  g.inv.assign(g.order, -1);
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) {
      if (g.mul[a * g.order + b] == g.identity) {
        g.inv[a] = b;
        break;
      }
    }
    if (g.inv[a] < 0)
      throw std::invalid_argument("group '" + g.name + "': element " +
                                  std::to_string(a) + " has no inverse");
  }
  g.validate();
  return g;
}

}  // namespace

void FiniteGroup::validate() const {
  if (order <= 0) throw std::invalid_argument("group: nonpositive order");
  if (static_cast<int>(mul.size()) != order * order)
    throw std::invalid_argument("group: multiplication table size mismatch");
  for (const int v : mul)
    if (v < 0 || v >= order)
      throw std::invalid_argument("group: table entry out of range");
  for (int g = 0; g < order; ++g) {
    if (times(identity, g) != g || times(g, identity) != g)
      throw std::invalid_argument("group: identity axiom fails at element " +
                                  std::to_string(g));
    if (times(g, inv[g]) != identity || times(inv[g], g) != identity)
      throw std::invalid_argument("group: inverse axiom fails at element " +
                                  std::to_string(g));
  }
  if (order <= 128) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          if (times(times(a, b), c) != times(a, times(b, c)))
            throw std::invalid_argument(
                "group: associativity fails at (" + std::to_string(a) + "," +
                std::to_string(b) + "," + std::to_string(c) + ")");
  } else {
    rng::Stream s(0x726f757073ULL, rng::Purpose::test, 0);
    for (std::uint64_t i = 0; i < 1000000; ++i) {
      const int a = static_cast<int>(s.uniform(3 * i) * order);
      const int b = static_cast<int>(s.uniform(3 * i + 1) * order);
      const int c = static_cast<int>(s.uniform(3 * i + 2) * order);
      if (times(times(a, b), c) != times(a, times(b, c)))
        throw std::invalid_argument(
            "group: associativity fails at (" + std::to_string(a) + "," +
            std::to_string(b) + "," + std::to_string(c) + ")");
    }
  }
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = a + 1; b < order; ++b)
      if (times(a, b) != times(b, a)) return false;
  return true;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group needs n >= 1");
  FiniteGroup g;
  g.order = n;
  g.name = "cyclic:" + std::to_string(n);
  g.mul.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[a * n + b] = (a + b) % n;
  return finish(std::move(g));
}

FiniteGroup dihedral_group(int n) {
  if (n < 3) throw std::invalid_argument("dihedral group needs n >= 3");
  // indices 0..n-1: rotations r^k; n..2n-1: reflections s r^k
  FiniteGroup g;
  const int ord = 2 * n;
  g.order = ord;
  g.name = "dihedral:" + std::to_string(n);
  g.mul.resize(ord * ord);
  auto rot = [n](int k) { return ((k % n) + n) % n; };
  for (int a = 0; a < ord; ++a)
    for (int b = 0; b < ord; ++b) {
      int r;
      if (a < n && b < n) r = rot(a + b);
      else if (a < n) r = n + rot((b - n) - a);
      else if (b < n) r = n + rot((a - n) + b);
      else r = rot((b - n) - (a - n));
      g.mul[a * ord + b] = r;
    }
  return finish(std::move(g));
}

FiniteGroup quaternion_group() {
  // index = 2*base + sign with bases (1, i, j, k); 0 is the identity
  FiniteGroup g;
  g.order = 8;
  g.name = "q8";
  g.mul.resize(64);
  static const int base_out[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  // sign convention: i*j=k, j*k=i, k*i=j and squares are -1
  static const int sign_out[4][4] = {
      {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int b1 = a / 2, s1 = a % 2, b2 = b / 2, s2 = b % 2;
      const int br = base_out[b1][b2];
      const int sr = s1 ^ s2 ^ sign_out[b1][b2];
      g.mul[a * 8 + b] = 2 * br + sr;
    }
  return finish(std::move(g));
}

FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  g.order = a.order * b.order;
  g.name = "product(" + a.name + "," + b.name + ")";
  g.mul.resize(static_cast<std::size_t>(g.order) * g.order);
  for (int x1 = 0; x1 < a.order; ++x1)
    for (int y1 = 0; y1 < b.order; ++y1)
      for (int x2 = 0; x2 < a.order; ++x2)
        for (int y2 = 0; y2 < b.order; ++y2) {
          const int p = x1 * b.order + y1;
          const int q = x2 * b.order + y2;
          g.mul[p * g.order + q] =
              a.times(x1, x2) * b.order + b.times(y1, y2);
        }
  return finish(std::move(g));
}

namespace {

struct SpecParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit SpecParser(const std::string& str) : s(str) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& token) {
    throw std::invalid_argument("bad group spec '" + s + "': offending token '" +
                                token + "'");
  }

  std::string read_word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    return s.substr(start, pos - start);
  }

  int read_int() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail(s.substr(start, 1).empty() ? "<end>" : s.substr(start, 1));
    const std::string tok = s.substr(start, pos - start);
    if (tok.size() > 6) fail(tok);
    return std::stoi(tok);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c)
      fail(pos >= s.size() ? "<end>" : s.substr(pos, 1));
    ++pos;
  }

  FiniteGroup parse() {
    const std::string word = read_word();
    if (word == "cyclic") {
      expect(':');
      const int n = read_int();
      if (n < 1) fail(word + ":" + std::to_string(n));
      return cyclic_group(n);
    }
    if (word == "dihedral") {
      expect(':');
      const int n = read_int();
      if (n < 3) fail(word + ":" + std::to_string(n));
      return dihedral_group(n);
    }
    if (word == "q8") return quaternion_group();
    if (word == "product") {
      expect('(');
      FiniteGroup a = parse();
      expect(',');
      FiniteGroup b = parse();
      expect(')');
      if (a.order * b.order > 1024)
        throw std::invalid_argument("bad group spec '" + s + "': order above 1024");
      return product_group(a, b);
    }
    fail(word.empty() ? "<end>" : word);
  }
};

}  // namespace

FiniteGroup make_group(const std::string& spec) {
  SpecParser p(spec);
  FiniteGroup g = p.parse();
  p.skip_ws();
  if (p.pos != spec.size()) p.fail(spec.substr(p.pos, 1));
  return g;
}

bool TimeReversalStructure::is_direct_product() const {
  for (std::size_t g = 0; g < tilde.size(); ++g)
    if (tilde[g] != static_cast<int>(g)) return false;
  return true;
}

TimeReversalStructure make_time_reversal(const FiniteGroup& g0,
                                         const std::vector<int>& tilde_map,
                                         int omega_tt) {
  if (omega_tt != 1 && omega_tt != -1)
    throw std::invalid_argument("time reversal: omega(t,t) must be +1 or -1");
  if (static_cast<int>(tilde_map.size()) != g0.order)
    throw std::invalid_argument("time reversal: tilde map length " +
                                std::to_string(tilde_map.size()) +
                                " does not match group order " +
                                std::to_string(g0.order));
  for (const int v : tilde_map)
    if (v < 0 || v >= g0.order)
      throw std::invalid_argument("time reversal: tilde map entry out of range");
  for (int g = 0; g < g0.order; ++g)
    if (tilde_map[tilde_map[g]] != g)
      throw std::invalid_argument(
          "time reversal: map is not an involution at element " + std::to_string(g));
  for (int a = 0; a < g0.order; ++a)
    for (int b = 0; b < g0.order; ++b)
      if (tilde_map[g0.times(a, b)] != g0.times(tilde_map[a], tilde_map[b]))
        throw std::invalid_argument(
            "time reversal: map is not an automorphism at pair (" +
            std::to_string(a) + "," + std::to_string(b) + ")");
  return TimeReversalStructure{tilde_map, omega_tt};
}

TimeReversalStructure identity_time_reversal(const FiniteGroup& g0, int omega_tt) {
  std::vector<int> id(g0.order);
  for (int g = 0; g < g0.order; ++g) id[g] = g;
  return make_time_reversal(g0, id, omega_tt);
}

}  // namespace threefold
