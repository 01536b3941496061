#pragma once

#include <map>
#include <mutex>
#include <string>
#include <unordered_set>
#include <vector>

#include "homcount/base.hpp"
#include "homcount/group.hpp"

namespace homcount {

constexpr int kDefaultSubgroupBound = 64;

/// A subgroup of a parent group, stored as a bitset over the parent's
/// element indices. The parent must outlive the subgroup.
struct Subgroup {
  const FiniteGroup* parent = nullptr;
  Bitset members;

  int size() const { return members.count(); }
  bool contains(int i) const { return members.test(i); }
  std::vector<int> elements() const { return members.members(); }

  bool operator==(const Subgroup& o) const {
    return parent == o.parent && members == o.members;
  }
};

inline void validate_subgroup(const Subgroup& s) {
  const auto& g = *s.parent;
  if (!s.members.test(g.identity)) fail_axiom("subgroup: missing identity");
  auto elems = s.elements();
  for (int a : elems) {
    if (!s.members.test(g.inv(a)))
      fail_axiom("subgroup: not closed under inverse at " + std::to_string(a));
    for (int b : elems)
      if (!s.members.test(g.mul(a, b)))
        fail_axiom("subgroup: not closed under product at (" + std::to_string(a) + "," +
                   std::to_string(b) + ")");
  }
  if (g.order % s.size() != 0) fail_axiom("subgroup: order does not divide parent order");
}

/// Closure of a subset under products (and hence inverses, the group being
/// finite).
inline Bitset subgroup_closure(const FiniteGroup& g, const std::vector<int>& seed) {
  Bitset b(g.order);
  std::vector<int> members{g.identity};
  b.set(g.identity);
  std::vector<int> queue;
  for (int x : seed)
    if (!b.test(x)) {
      b.set(x);
      members.push_back(x);
      queue.push_back(x);
    }
  std::size_t qi = 0;
  while (qi < queue.size()) {
    int a = queue[qi++];
    for (std::size_t i = 0; i < members.size(); ++i) {
      int m = members[i];
      for (int c : {g.mul(a, m), g.mul(m, a)}) {
        if (!b.test(c)) {
          b.set(c);
          members.push_back(c);
          queue.push_back(c);
        }
      }
    }
  }
  return b;
}

inline Subgroup make_subgroup(const FiniteGroup& g, const std::vector<int>& generators) {
  Subgroup s{&g, subgroup_closure(g, generators)};
  return s;
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) {
  Bitset b(g.order);
  b.set(g.identity);
  return Subgroup{&g, b};
}

inline Subgroup full_subgroup(const FiniteGroup& g) {
  Bitset b(g.order);
  for (int i = 0; i < g.order; ++i) b.set(i);
  return Subgroup{&g, b};
}

/// Centralizer of a set of elements: { g : gs = sg for all s in S }.
inline Subgroup centralizer(const FiniteGroup& g, const std::vector<int>& set) {
  Bitset b(g.order);
  for (int x = 0; x < g.order; ++x) {
    bool ok = true;
    for (int s : set)
      if (g.mul(x, s) != g.mul(s, x)) {
        ok = false;
        break;
      }
    if (ok) b.set(x);
  }
  return Subgroup{&g, b};
}

inline Subgroup center(const FiniteGroup& g) {
  std::vector<int> all(g.order);
  for (int i = 0; i < g.order; ++i) all[i] = i;
  return centralizer(g, all);
}

inline Subgroup commutator_subgroup(const FiniteGroup& g) {
  std::vector<int> comms;
  Bitset seen(g.order);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      int c = g.commutator(a, b);
      if (!seen.test(c)) {
        seen.set(c);
        comms.push_back(c);
      }
    }
  return make_subgroup(g, comms);
}

inline bool is_normal(const Subgroup& s) {
  const auto& g = *s.parent;
  for (int x = 0; x < g.order; ++x)
    for (int n : s.elements())
      if (!s.members.test(g.conj(n, x))) return false;
  return true;
}

/// Complete subgroup list by cyclic extension: seed with all cyclic
/// subgroups, then repeatedly extend each known subgroup by one outside
/// element and close, deduplicating by bitset.
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g,
                                           int bound = kDefaultSubgroupBound) {
  if (g.order > bound)
    throw bound_error("all_subgroups: |" + g.label + "| = " + std::to_string(g.order) +
                      " exceeds enumeration bound " + std::to_string(bound));
  std::unordered_set<Bitset, BitsetHash> seen;
  std::vector<Subgroup> out;
  auto add = [&](Bitset b) -> bool {
    if (seen.count(b)) return false;
    seen.insert(b);
    out.push_back(Subgroup{&g, std::move(b)});
    return true;
  };
  add(trivial_subgroup(g).members);
  for (int x = 0; x < g.order; ++x) add(subgroup_closure(g, {x}));
  std::size_t next = 0;
  while (next < out.size()) {
    // copy: out grows while we scan
    Bitset cur = out[next++].members;
    for (int x = 0; x < g.order; ++x) {
      if (cur.test(x)) continue;
      auto mem = cur.members();
      mem.push_back(x);
      add(subgroup_closure(g, mem));
    }
  }
  // Deterministic order: by size, then by member list.
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return out;
}

/// A Sylow p-subgroup: order p^v with p^v the largest p-power dividing |G|.
inline Subgroup sylow_subgroup(const FiniteGroup& g, long long p) {
  if (!is_prime(p)) fail_spec("sylow: " + std::to_string(p) + " is not prime");
  long long pv = 1;
  long long n = g.order;
  while (n % p == 0) {
    pv *= p;
    n /= p;
  }
  auto is_p_power = [&](long long k) {
    while (k % p == 0) k /= p;
    return k == 1;
  };
  Subgroup s = trivial_subgroup(g);
  while (s.size() < pv) {
    bool grown = false;
    for (int x = 0; x < g.order && !grown; ++x) {
      if (s.members.test(x) || !is_p_power(g.element_orders[x])) continue;
      auto mem = s.elements();
      mem.push_back(x);
      Bitset b = subgroup_closure(g, mem);
      int sz = b.count();
      if (sz > s.size() && is_p_power(sz) && sz <= pv) {
        s.members = std::move(b);
        grown = true;
      }
    }
    if (!grown) fail_axiom("sylow: no p-extension found (should not happen)");
  }
  return s;
}

/// gcd(G, n) = lcm{ |H| : H <= G, |H| divides n }; every integer divides 0,
/// so n = 0 yields the lcm of all subgroup orders.
inline long long gcd_group(const FiniteGroup& g, long long n,
                           const std::vector<int>* cached_orders = nullptr,
                           int bound = kDefaultSubgroupBound) {
  std::vector<int> local;
  const std::vector<int>* orders = cached_orders;
  if (!orders) {
    for (const auto& s : all_subgroups(g, bound)) local.push_back(s.size());
    orders = &local;
  }
  long long l = 1;
  for (int o : *orders)
    if (divides(o, n) || n == 0) l = lcm_ll(l, o);
  return l;
}

/// Memo of subgroup-order multisets, shared by sweeps that evaluate
/// gcd_group once per (G, n) cell.
class SubgroupOrderCache {
 public:
  const std::vector<int>& get(const FiniteGroup& g, int bound = kDefaultSubgroupBound) {
    std::lock_guard lock(mu_);
    auto it = map_.find(&g);
    if (it != map_.end()) return it->second;
    std::vector<int> orders;
    for (const auto& s : all_subgroups(g, bound)) orders.push_back(s.size());
    return map_.emplace(&g, std::move(orders)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<const FiniteGroup*, std::vector<int>> map_;
};

/// Materializes a subgroup as a group in its own right. Returns the group
/// plus the map from subgroup index to parent element index (its inverse is
/// recoverable by search). Parent identity lands at index 0.
struct SubgroupAsGroup {
  FiniteGroup group;
  std::vector<int> to_parent;    // subgroup index -> parent index
  std::vector<int> from_parent;  // parent index -> subgroup index or -1
};

inline SubgroupAsGroup subgroup_as_group(const Subgroup& s, std::string label = "") {
  const auto& g = *s.parent;
  auto elems = s.elements();  // ascending parent index; identity (=0) first
  int n = static_cast<int>(elems.size());
  std::vector<int> from_parent(g.order, -1);
  for (int i = 0; i < n; ++i) from_parent[elems[i]] = i;
  std::vector<std::uint16_t> t(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = g.mul(elems[i], elems[j]);
      if (from_parent[p] < 0) fail_axiom("subgroup_as_group: set is not closed");
      t[std::size_t(i) * n + j] = static_cast<std::uint16_t>(from_parent[p]);
    }
  if (label.empty()) label = g.label + "[" + std::to_string(n) + "]";
  SubgroupAsGroup out;
  out.group = make_group(n, std::move(t), std::move(label), std::max(kDefaultOrderBound, g.order));
  out.to_parent = std::move(elems);
  out.from_parent = std::move(from_parent);
  return out;
}

}  // namespace homcount
