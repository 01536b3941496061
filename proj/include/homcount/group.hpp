#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "homcount/base.hpp"

namespace homcount {

constexpr int kDefaultOrderBound = 200;

// Additive abelian group given by its cyclic factor moduli, in order.
// A modulus of 0 encodes an infinite cyclic factor; ord() is then 0 and no
// Cayley table can be built from it.
struct AbelianFactors {
  std::vector<long long> moduli;

  long long ord() const {
    long long o = 1;
    for (auto m : moduli) {
      if (m == 0) return 0;
      o *= m;
    }
    return o;
  }

  bool finite() const {
    for (auto m : moduli)
      if (m == 0) return false;
    return true;
  }
};

/// A finite group as a validated Cayley table over dense element indices
/// 0..order-1 with the identity at index 0. Immutable after construction and
/// safe to share across threads.
class FiniteGroup {
 public:
  int order = 0;
  std::vector<std::uint16_t> table;     // row-major: table[i*order+j] = i*j
  std::vector<std::uint16_t> inverses;  // table[i][inverses[i]] = identity
  int identity = 0;
  std::string label;

  // Precomputed at construction.
  std::vector<int> element_orders;
  std::vector<int> generators;  // greedy generating sequence, largest order first
  bool abelian = false;
  // Set when the group was built from AbelianFactors; element encoding is
  // mixed-radix with the last factor varying fastest.
  std::optional<AbelianFactors> factors;

  int mul(int a, int b) const { return table[std::size_t(a) * order + b]; }
  int inv(int a) const { return inverses[a]; }

  int pow(int a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    int r = identity;
    int base = a;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  int conj(int x, int g) const { return mul(inv(g), mul(x, g)); }  // x^g = g^-1 x g
  int commutator(int a, int b) const { return mul(inv(a), mul(inv(b), mul(a, b))); }
};

namespace detail {

// Relabels so the identity lands at index 0 (a single transposition of
// indices; all other labels keep their positions).
inline void relabel_identity_to_zero(int order, std::vector<std::uint16_t>& table, int id) {
  if (id == 0) return;
  std::vector<std::uint16_t> remap(order);
  for (int i = 0; i < order; ++i) remap[i] = static_cast<std::uint16_t>(i);
  remap[0] = static_cast<std::uint16_t>(id);
  remap[id] = 0;
  std::vector<std::uint16_t> nt(table.size());
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      nt[std::size_t(remap[i]) * order + remap[j]] = remap[table[std::size_t(i) * order + j]];
  table.swap(nt);
}

inline void check_axioms(int order, const std::vector<std::uint16_t>& table,
                         const std::string& label) {
  for (std::size_t k = 0; k < table.size(); ++k)
    if (table[k] >= order)
      fail_axiom(label + ": closure violated, entry " + std::to_string(k) + " = " +
                 std::to_string(table[k]) + " outside [0," + std::to_string(order) + ")");
  auto mul = [&](int a, int b) { return table[std::size_t(a) * order + b]; };

  // Identity candidate must be a two-sided identity once relabeled; here we
  // only locate it.
  int id = -1;
  for (int e = 0; e < order && id < 0; ++e) {
    bool ok = true;
    for (int i = 0; i < order && ok; ++i) ok = mul(e, i) == i && mul(i, e) == i;
    if (ok) id = e;
  }
  if (id < 0) fail_axiom(label + ": no identity element");

  for (int i = 0; i < order; ++i) {
    bool has_inv = false;
    for (int j = 0; j < order && !has_inv; ++j) has_inv = mul(i, j) == id && mul(j, i) == id;
    if (!has_inv) fail_axiom(label + ": element " + std::to_string(i) + " has no inverse");
  }

  // Associativity: total up to order 64, deterministic sampling above.
  constexpr int kTotalAssocBound = 64;
  auto check_triple = [&](int i, int j, int k) {
    if (mul(mul(i, j), k) != mul(i, mul(j, k)))
      fail_axiom(label + ": associativity fails at (" + std::to_string(i) + "," +
                 std::to_string(j) + "," + std::to_string(k) + ")");
  };
  if (order <= kTotalAssocBound) {
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j)
        for (int k = 0; k < order; ++k) check_triple(i, j, k);
  } else {
    std::mt19937 rng(0x5eed5u);
    std::uniform_int_distribution<int> d(0, order - 1);
    for (int t = 0; t < 200000; ++t) check_triple(d(rng), d(rng), d(rng));
  }
}

}  // namespace detail

/// Builds a FiniteGroup from a raw multiplication table, validating every
/// axiom and canonicalizing the identity to index 0.
inline FiniteGroup make_group(int order, std::vector<std::uint16_t> table, std::string label,
                              int order_bound = kDefaultOrderBound) {
  if (order <= 0) fail_spec(label + ": order must be positive");
  if (order > order_bound)
    throw bound_error(label + ": order " + std::to_string(order) + " exceeds bound " +
                      std::to_string(order_bound));
  if (table.size() != std::size_t(order) * order)
    fail_spec(label + ": table size mismatch");

  detail::check_axioms(order, table, label);

  auto mul0 = [&](int a, int b) { return table[std::size_t(a) * order + b]; };
  int id = 0;
  for (int e = 0; e < order; ++e) {
    bool ok = true;
    for (int i = 0; i < order && ok; ++i) ok = mul0(e, i) == i && mul0(i, e) == i;
    if (ok) {
      id = e;
      break;
    }
  }
  detail::relabel_identity_to_zero(order, table, id);

  FiniteGroup g;
  g.order = order;
  g.table = std::move(table);
  g.identity = 0;
  g.label = std::move(label);

  g.inverses.assign(order, 0);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      if (g.mul(i, j) == 0 && g.mul(j, i) == 0) {
        g.inverses[i] = static_cast<std::uint16_t>(j);
        break;
      }

  g.element_orders.assign(order, 1);
  for (int i = 0; i < order; ++i) {
    int x = i, k = 1;
    while (x != 0) {
      x = g.mul(x, i);
      ++k;
    }
    g.element_orders[i] = k;
  }

  g.abelian = true;
  for (int i = 0; i < order && g.abelian; ++i)
    for (int j = i + 1; j < order; ++j)
      if (g.mul(i, j) != g.mul(j, i)) {
        g.abelian = false;
        break;
      }

  // Greedy generating sequence: repeatedly adjoin an element of largest
  // order outside the closure of what we have.
  std::vector<char> closed(order, 0);
  closed[0] = 1;
  int closed_count = 1;
  auto extend_closure = [&](int x) {
    std::vector<int> queue{x};
    if (!closed[x]) {
      closed[x] = 1;
      ++closed_count;
    }
    std::vector<int> members;
    for (int i = 0; i < order; ++i)
      if (closed[i]) members.push_back(i);
    std::size_t qi = 0;
    // members is closed before x arrived; saturate products with the queue.
    std::vector<int> work = members;
    while (qi < queue.size()) {
      int a = queue[qi++];
      for (std::size_t wi = 0; wi < work.size(); ++wi) {
        int b = work[wi];
        for (int c : {g.mul(a, b), g.mul(b, a)}) {
          if (!closed[c]) {
            closed[c] = 1;
            ++closed_count;
            queue.push_back(c);
            work.push_back(c);
          }
        }
      }
      if (std::find(work.begin(), work.end(), a) == work.end()) work.push_back(a);
    }
  };
  while (closed_count < order) {
    int best = -1;
    for (int i = 0; i < order; ++i)
      if (!closed[i] && (best < 0 || g.element_orders[i] > g.element_orders[best])) best = i;
    g.generators.push_back(best);
    extend_closure(best);
  }

  return g;
}

// --- standard families ------------------------------------------------------

namespace detail {

// Abelian groups built from factors use the factor basis as their
// generating sequence (largest factor first): the canonical generators keep
// candidate lists small and make sweeps addressable by exponent vector.
inline void use_factor_basis_generators(FiniteGroup& g) {
  if (!g.factors) return;
  const auto& mod = g.factors->moduli;
  std::vector<long long> place(mod.size(), 1);
  for (std::size_t i = mod.size(); i-- > 1;) place[i - 1] = place[i] * mod[i];
  std::vector<std::pair<long long, int>> units;
  for (std::size_t i = 0; i < mod.size(); ++i)
    if (mod[i] > 1) units.emplace_back(mod[i], static_cast<int>(place[i]));
  std::stable_sort(units.begin(), units.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  g.generators.clear();
  for (const auto& [m, idx] : units) g.generators.push_back(idx);
}

}  // namespace detail

inline FiniteGroup trivial_group() { return make_group(1, {0}, "cyclic:1"); }

inline FiniteGroup cyclic_group(int n, int order_bound = kDefaultOrderBound) {
  if (n <= 0) fail_spec("cyclic: order must be positive");
  std::vector<std::uint16_t> t(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[std::size_t(i) * n + j] = static_cast<std::uint16_t>((i + j) % n);
  auto g = make_group(n, std::move(t), "cyclic:" + std::to_string(n), order_bound);
  g.factors = AbelianFactors{{n}};
  detail::use_factor_basis_generators(g);
  return g;
}

/// Direct product of cyclic groups in the given factor order; element index
/// is mixed-radix with the last factor varying fastest.
inline FiniteGroup abelian_group(const AbelianFactors& f, int order_bound = kDefaultOrderBound) {
  if (!f.finite() || f.moduli.empty())
    fail_spec("abelian-factors: all moduli must be positive to build a finite group");
  long long n = f.ord();
  if (n > order_bound)
    throw bound_error("abelian-factors: order " + std::to_string(n) + " exceeds bound");
  int order = static_cast<int>(n);
  std::size_t r = f.moduli.size();
  auto add = [&](int a, int b) {
    int out = 0;
    // decode both mixed-radix, add componentwise mod factor, re-encode
    std::vector<int> xa(r), xb(r);
    int ta = a, tb = b;
    for (std::size_t i = r; i-- > 0;) {
      xa[i] = ta % int(f.moduli[i]);
      ta /= int(f.moduli[i]);
      xb[i] = tb % int(f.moduli[i]);
      tb /= int(f.moduli[i]);
    }
    for (std::size_t i = 0; i < r; ++i) out = out * int(f.moduli[i]) + (xa[i] + xb[i]) % int(f.moduli[i]);
    return out;
  };
  std::vector<std::uint16_t> t(std::size_t(order) * order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) t[std::size_t(i) * order + j] = static_cast<std::uint16_t>(add(i, j));
  std::string label = "abelian:";
  for (std::size_t i = 0; i < r; ++i) label += (i ? "," : "") + std::to_string(f.moduli[i]);
  if (r == 1) label = "cyclic:" + std::to_string(f.moduli[0]);
  auto g = make_group(order, std::move(t), std::move(label), order_bound);
  g.factors = f;
  detail::use_factor_basis_generators(g);
  return g;
}

/// Metacyclic group <a, b | a^n = 1, b^m = a^t, b^-1 a b = a^s> with
/// s^m = 1 mod n and s*t = t mod n. Element a^i b^j is index i*m + j.
/// Covers the dihedral, generalized quaternion, semidihedral and modular
/// families and the C4:C4-style extensions used by the catalog.
inline FiniteGroup metacyclic_group(int n, int m, long long s, long long t, std::string label = "",
                                    int order_bound = kDefaultOrderBound) {
  if (n <= 0 || m <= 0) fail_spec("metacyclic: n, m must be positive");
  s = ((s % n) + n) % n;
  t = ((t % n) + n) % n;
  auto powmod = [&](long long base, long long e) {
    long long r = 1 % n;
    base %= n;
    for (; e > 0; e >>= 1, base = base * base % n)
      if (e & 1) r = r * base % n;
    return r;
  };
  if (powmod(s, m) != 1 % n) fail_spec("metacyclic: s^m != 1 mod n");
  if (s * t % n != t % n) fail_spec("metacyclic: s*t != t mod n");
  long long order = static_cast<long long>(n) * m;
  if (order > order_bound) throw bound_error("metacyclic: order exceeds bound");
  int N = static_cast<int>(order);
  std::vector<std::uint16_t> tab(std::size_t(N) * N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < m; ++l) {
          // (a^i b^j)(a^k b^l) = a^(i + k*s^j) b^(j+l), with b^m = a^t carry
          long long e = (i + k * powmod(s, j)) % n;
          int jl = j + l;
          if (jl >= m) {
            jl -= m;
            e = (e + t) % n;
          }
          tab[std::size_t(i * m + j) * N + (k * m + l)] =
              static_cast<std::uint16_t>(e * m + jl);
        }
  if (label.empty())
    label = "metacyclic:" + std::to_string(n) + "," + std::to_string(m) + "," +
            std::to_string(s) + "," + std::to_string(t);
  return make_group(N, std::move(tab), std::move(label), order_bound);
}

/// Dihedral group of the given order 2n: rotation r of order n, reflection s
/// with s r s = r^-1.
inline FiniteGroup dihedral_group(int order, int order_bound = kDefaultOrderBound) {
  if (order < 2 || order % 2 != 0) fail_spec("dihedral: order must be even and >= 2");
  int n = order / 2;
  return metacyclic_group(n, 2, n - 1, 0, "dihedral:" + std::to_string(order), order_bound);
}

/// Generalized quaternion group of order 2^k, k >= 3:
/// <a, b | a^(2^(k-1)) = 1, b^2 = a^(2^(k-2)), b^-1 a b = a^-1>.
inline FiniteGroup quaternion_group(int order, int order_bound = kDefaultOrderBound) {
  if (order < 8 || (order & (order - 1)) != 0)
    fail_spec("generalized-quaternion: order must be 2^k with k >= 3");
  int n = order / 2;
  return metacyclic_group(n, 2, n - 1, n / 2, "quaternion:" + std::to_string(order), order_bound);
}

/// Semidihedral group of order 2^k, k >= 4: b^-1 a b = a^(2^(k-2) - 1).
inline FiniteGroup semidihedral_group(int order, int order_bound = kDefaultOrderBound) {
  if (order < 16 || (order & (order - 1)) != 0)
    fail_spec("semidihedral: order must be 2^k with k >= 4");
  int n = order / 2;
  return metacyclic_group(n, 2, n / 2 - 1, 0, "semidihedral:" + std::to_string(order), order_bound);
}

/// Modular maximal-cyclic group of order 2^k, k >= 4: b^-1 a b = a^(2^(k-2)+1).
inline FiniteGroup modular_group(int order, int order_bound = kDefaultOrderBound) {
  if (order < 16 || (order & (order - 1)) != 0)
    fail_spec("modular: order must be 2^k with k >= 4");
  int n = order / 2;
  return metacyclic_group(n, 2, n / 2 + 1, 0, "modular:" + std::to_string(order), order_bound);
}

/// Closure of a set of permutations of {0..deg-1} under products, indexed in
/// lexicographic order.
inline FiniteGroup group_from_permutations(int deg, const std::vector<Perm>& gens,
                                           std::string label,
                                           int order_bound = kDefaultOrderBound) {
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != deg) fail_spec(label + ": generator degree mismatch");
    Perm sorted = p;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != perm_identity(deg)) fail_spec(label + ": generator is not a permutation");
  }
  // Positive words in the generators suffice: every element of a finite
  // permutation group has its inverse among its own powers.
  std::vector<Perm> elems{perm_identity(deg)};
  auto contains = [&](const Perm& p) {
    return std::find(elems.begin(), elems.end(), p) != elems.end();
  };
  std::size_t qi = 0;
  while (qi < elems.size()) {
    Perm cur = elems[qi++];
    for (const auto& g : gens) {
      Perm nxt = perm_then(cur, g);
      if (!contains(nxt)) {
        if (static_cast<int>(elems.size()) >= order_bound)
          throw bound_error(label + ": permutation closure exceeds order bound");
        elems.push_back(std::move(nxt));
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  int order = static_cast<int>(elems.size());
  std::unordered_map<std::size_t, std::vector<int>> index;
  for (int i = 0; i < order; ++i) index[PermHash{}(elems[i])].push_back(i);
  auto find_index = [&](const Perm& p) {
    for (int i : index[PermHash{}(p)])
      if (elems[i] == p) return i;
    fail_axiom(label + ": closure lookup failed");
    return -1;
  };
  std::vector<std::uint16_t> t(std::size_t(order) * order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      t[std::size_t(i) * order + j] = static_cast<std::uint16_t>(find_index(perm_then(elems[i], elems[j])));
  return make_group(order, std::move(t), std::move(label), order_bound);
}

inline FiniteGroup symmetric_group(int n, int order_bound = kDefaultOrderBound) {
  if (n < 1) fail_spec("symmetric: n must be >= 1");
  if (n == 1) {
    auto g = trivial_group();
    g.label = "symmetric:1";
    return g;
  }
  std::vector<Perm> gens;
  Perm t = perm_identity(n);
  std::swap(t[0], t[1]);
  gens.push_back(t);
  Perm c(n);
  for (int i = 0; i < n; ++i) c[i] = static_cast<std::uint16_t>((i + 1) % n);
  gens.push_back(c);
  return group_from_permutations(n, gens, "symmetric:" + std::to_string(n), order_bound);
}

inline FiniteGroup alternating_group(int n, int order_bound = kDefaultOrderBound) {
  if (n < 1) fail_spec("alternating: n must be >= 1");
  if (n <= 2) {
    auto g = trivial_group();
    g.label = "alternating:" + std::to_string(n);
    return g;
  }
  std::vector<Perm> gens;
  // 3-cycles (0 1 i) generate A_n.
  for (int i = 2; i < n; ++i) {
    Perm p = perm_identity(n);
    p[0] = 1;
    p[1] = static_cast<std::uint16_t>(i);
    p[i] = 0;
    gens.push_back(p);
  }
  return group_from_permutations(n, gens, "alternating:" + std::to_string(n), order_bound);
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                                  std::string label = "",
                                  int order_bound = kDefaultOrderBound) {
  long long n = static_cast<long long>(a.order) * b.order;
  if (n > order_bound) throw bound_error("direct-product: order exceeds bound");
  int order = static_cast<int>(n);
  std::vector<std::uint16_t> t(std::size_t(order) * order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      int ai = i / b.order, hi = i % b.order;
      int aj = j / b.order, hj = j % b.order;
      t[std::size_t(i) * order + j] =
          static_cast<std::uint16_t>(a.mul(ai, aj) * b.order + b.mul(hi, hj));
    }
  if (label.empty()) label = "prod:" + a.label + "*" + b.label;
  auto g = make_group(order, std::move(t), std::move(label), order_bound);
  if (a.factors && b.factors) {
    AbelianFactors f = *a.factors;
    f.moduli.insert(f.moduli.end(), b.factors->moduli.begin(), b.factors->moduli.end());
    g.factors = f;
    detail::use_factor_basis_generators(g);
  }
  return g;
}

}  // namespace homcount
