#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "homcount/base.hpp"
#include "homcount/enumerate.hpp"
#include "homcount/group.hpp"
#include "homcount/hom.hpp"

namespace homcount {

constexpr int kDefaultAutBound = 32;

/// The automorphism group of a finite group, as the sorted list of its
/// permutations of element indices. perms[0] is the identity.
struct AutGroup {
  const FiniteGroup* group = nullptr;
  std::shared_ptr<const std::vector<Perm>> perms;

  int size() const { return static_cast<int>(perms->size()); }
  const Perm& operator[](int i) const { return (*perms)[i]; }
};

inline void validate_automorphism(const FiniteGroup& g, const Perm& p) {
  if (p.size() != std::size_t(g.order)) fail_axiom("automorphism: size mismatch");
  Perm sorted = p;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != perm_identity(g.order)) fail_axiom("automorphism: not bijective");
  if (p[g.identity] != g.identity) fail_axiom("automorphism: identity moved");
  for (int i = 0; i < g.order; ++i)
    for (int j = 0; j < g.order; ++j)
      if (p[g.mul(i, j)] != g.mul(p[i], p[j]))
        fail_axiom("automorphism: product not respected at (" + std::to_string(i) + "," +
                   std::to_string(j) + ")");
}

/// Brute force over images of the generating sequence: candidates must have
/// the exact order of the generator, extensions are closed and checked, and
/// non-bijective maps are dropped.
inline AutGroup automorphism_group(const FiniteGroup& h, int bound = kDefaultAutBound,
                                   std::uint64_t budget = kDefaultBudget, int workers = 1) {
  if (h.order > bound)
    throw bound_error("automorphism_group: |" + h.label + "| exceeds bound " +
                      std::to_string(bound));
  std::vector<std::vector<int>> cands(h.generators.size());
  for (std::size_t i = 0; i < h.generators.size(); ++i)
    for (int x = 0; x < h.order; ++x)
      if (h.element_orders[x] == h.element_orders[h.generators[i]]) cands[i].push_back(x);

  IndexOps ops{&h};
  auto perms = collect_homs<IndexOps, Perm>(
      h, ops, cands, budget, workers, [&](const std::vector<int>& images) -> std::optional<Perm> {
        std::vector<char> seen(h.order, 0);
        for (int v : images) {
          if (seen[v]) return std::nullopt;
          seen[v] = 1;
        }
        return Perm(images.begin(), images.end());
      });
  std::sort(perms.begin(), perms.end());
  AutGroup out;
  out.group = &h;
  out.perms = std::make_shared<const std::vector<Perm>>(std::move(perms));
  return out;
}

/// Thread-safe per-group memo; sweeps compute Aut(H) once per target.
class AutCache {
 public:
  const AutGroup& get(const FiniteGroup& h, int bound = kDefaultAutBound,
                      std::uint64_t budget = kDefaultBudget, int workers = 1) {
    std::lock_guard lock(mu_);
    auto it = map_.find(&h);
    if (it != map_.end()) return it->second;
    return map_.emplace(&h, automorphism_group(h, bound, budget, workers)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<const FiniteGroup*, AutGroup> map_;
};

/// A right action of M on H: one automorphism of H per element of M, with
/// h^(ab) = (h^a)^b. per_element indexes into the shared automorphism list.
struct Action {
  const FiniteGroup* actor = nullptr;   // M
  const FiniteGroup* target = nullptr;  // H
  std::shared_ptr<const std::vector<Perm>> auts;
  std::vector<std::uint32_t> per_element;
  // Number of actions in this action's Aut(H)-conjugacy class when produced
  // by a deduplicating enumeration; 1 otherwise.
  std::uint64_t class_size = 1;

  int apply(int m, int h) const { return (*auts)[per_element[m]][h]; }
  const Perm& perm_of(int m) const { return (*auts)[per_element[m]]; }

  bool trivial() const {
    for (int m = 0; m < actor->order; ++m)
      if (!perm_is_identity(perm_of(m))) return false;
    return true;
  }
};

inline void validate_action(const Action& a) {
  const FiniteGroup& m = *a.actor;
  if (a.per_element.size() != std::size_t(m.order)) fail_axiom("action: size mismatch");
  for (int i = 0; i < m.order; ++i) validate_automorphism(*a.target, a.perm_of(i));
  if (!perm_is_identity(a.perm_of(m.identity))) fail_axiom("action: identity acts nontrivially");
  for (int x = 0; x < m.order; ++x)
    for (int y = 0; y < m.order; ++y)
      if (a.perm_of(m.mul(x, y)) != perm_then(a.perm_of(x), a.perm_of(y)))
        fail_axiom("action: composition law fails at (" + std::to_string(x) + "," +
                   std::to_string(y) + ")");
}

/// Builds an action directly from automorphism images of M's generating
/// sequence (validated).
inline Action make_action(const FiniteGroup& m, const FiniteGroup& h,
                          const std::vector<Perm>& gen_images) {
  if (gen_images.size() != m.generators.size()) fail_spec("make_action: image count mismatch");
  PermOps ops{h.order};
  detail::HomSearch<PermOps> search(m, ops);
  for (std::size_t i = 0; i < gen_images.size(); ++i)
    if (!search.assign(m.generators[i], gen_images[i]))
      fail_spec("make_action: generator images do not define an action");
  if (!search.total()) fail_spec("make_action: generators do not generate M");

  std::vector<Perm> palette;
  std::unordered_map<Perm, std::uint32_t, PermHash> idx;
  Action a;
  a.actor = &m;
  a.target = &h;
  a.per_element.resize(m.order);
  for (int i = 0; i < m.order; ++i) {
    const Perm& p = search.images()[i];
    auto [it, fresh] = idx.try_emplace(p, static_cast<std::uint32_t>(palette.size()));
    if (fresh) palette.push_back(p);
    a.per_element[i] = it->second;
  }
  a.auts = std::make_shared<const std::vector<Perm>>(std::move(palette));
  validate_action(a);
  return a;
}

inline Action trivial_action(const FiniteGroup& m, const FiniteGroup& h) {
  Action a;
  a.actor = &m;
  a.target = &h;
  a.auts = std::make_shared<const std::vector<Perm>>(std::vector<Perm>{perm_identity(h.order)});
  a.per_element.assign(m.order, 0);
  return a;
}

struct ActionEnumOptions {
  // Quotient by Aut(H)-conjugacy: one representative per class with
  // class_size filled in. Counts of crossed homomorphisms are constant on
  // classes, so divisibility verdicts are unchanged.
  bool dedup = false;
  std::uint64_t budget = kDefaultBudget;
  int workers = 1;
  const AutGroup* auts = nullptr;  // precomputed Aut(H), if available
  int aut_bound = kDefaultAutBound;
};

namespace detail {

// Small generating set of a subset of Aut (given as index list) under
// composition, found greedily. Closure walks right-multiplications by the
// current generators only, so the cost stays near-linear in the subgroup
// size per adopted generator.
inline std::vector<int> greedy_generators(const std::vector<Perm>& perms,
                                          const std::vector<int>& subset,
                                          const std::unordered_map<Perm, int, PermHash>& index) {
  std::vector<int> gens;
  std::vector<char> in_closure(perms.size(), 0);
  std::vector<int> closure;
  int id = index.at(perm_identity(static_cast<int>(perms[0].size())));
  in_closure[id] = 1;
  closure.push_back(id);
  auto reclose = [&]() {
    std::vector<int> queue = closure;
    std::size_t qi = 0;
    while (qi < queue.size()) {
      int a = queue[qi++];
      for (int g : gens) {
        int b = index.at(perm_then(perms[a], perms[g]));
        if (!in_closure[b]) {
          in_closure[b] = 1;
          closure.push_back(b);
          queue.push_back(b);
        }
      }
    }
  };
  for (int x : subset) {
    if (!in_closure[x]) {
      gens.push_back(x);
      reclose();
    }
  }
  return gens;
}

struct ConjClasses {
  std::vector<int> class_of;    // aut index -> class id
  std::vector<int> rep;         // class id -> minimal member
  std::vector<long long> size;  // class id -> size
};

inline ConjClasses conjugacy_classes(const std::vector<Perm>& perms,
                                     const std::unordered_map<Perm, int, PermHash>& index) {
  int n = static_cast<int>(perms.size());
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  auto gens = greedy_generators(perms, all, index);
  std::vector<Perm> gen_inv;
  for (int g : gens) gen_inv.push_back(perm_inverse(perms[g]));

  ConjClasses out;
  out.class_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (out.class_of[x] >= 0) continue;
    int cid = static_cast<int>(out.rep.size());
    out.rep.push_back(x);
    out.size.push_back(0);
    std::vector<int> queue{x};
    out.class_of[x] = cid;
    std::size_t qi = 0;
    while (qi < queue.size()) {
      int a = queue[qi++];
      ++out.size[cid];
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        Perm c = perm_then(perm_then(gen_inv[gi], perms[a]), perms[gens[gi]]);
        int ci = index.at(c);
        if (out.class_of[ci] < 0) {
          out.class_of[ci] = cid;
          queue.push_back(ci);
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// All homomorphisms M -> Aut(H), materialized as Actions. With dedup, one
/// representative per Aut(H)-conjugacy class (lexicographically minimal
/// generator images) with class_size set; the representatives' class sizes
/// sum to the total number of actions.
inline std::vector<Action> enumerate_actions(const FiniteGroup& m, const FiniteGroup& h,
                                             const ActionEnumOptions& opt = {}) {
  AutGroup local;
  const AutGroup* auts = opt.auts;
  if (!auts) {
    local = automorphism_group(h, opt.aut_bound, opt.budget, opt.workers);
    auts = &local;
  }
  const auto& perms = *auts->perms;
  int na = static_cast<int>(perms.size());
  std::unordered_map<Perm, int, PermHash> index;
  index.reserve(na * 2);
  for (int i = 0; i < na; ++i) index.emplace(perms[i], i);

  std::vector<long long> aut_order(na);
  for (int i = 0; i < na; ++i) aut_order[i] = perm_order(perms[i]);

  const auto& gens = m.generators;
  int ng = static_cast<int>(gens.size());

  // Trivial M: only the trivial action.
  if (ng == 0) return {trivial_action(m, h)};

  // Per-generator candidates by order divisibility.
  std::vector<std::vector<int>> cands(ng);
  for (int i = 0; i < ng; ++i)
    for (int x = 0; x < na; ++x)
      if (m.element_orders[gens[i]] % aut_order[x] == 0) cands[i].push_back(x);

  // Pairwise commutation requirements inherited from M.
  std::vector<std::vector<char>> must_commute(ng, std::vector<char>(ng, 0));
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < i; ++j)
      must_commute[i][j] = m.mul(gens[i], gens[j]) == m.mul(gens[j], gens[i]);

  PermOps pops{h.order};
  auto commutes = [&](int a, int b) {
    return perm_then(perms[a], perms[b]) == perm_then(perms[b], perms[a]);
  };

  // Tuples are budgeted per first-image block after centralizer filtering,
  // accumulated across the call.
  std::uint64_t used_tuples = 0;

  // Enumerate generator-image tuples with the first image fixed; each
  // complete tuple is verified by full closure before being kept.
  auto enumerate_extensions = [&](int first) {
    std::vector<std::vector<int>> filt(ng);
    filt[0] = {first};
    for (int i = 1; i < ng; ++i) {
      if (must_commute[i][0]) {
        for (int c : cands[i])
          if (commutes(c, first)) filt[i].push_back(c);
      } else {
        filt[i] = cands[i];
      }
    }
    std::uint64_t plan = 1;
    for (int i = 1; i < ng; ++i) {
      plan *= filt[i].size();
      if (plan > (std::uint64_t(1) << 62)) break;
    }
    used_tuples += std::max<std::uint64_t>(plan, 1);
    if (used_tuples > opt.budget)
      throw budget_error("action enumeration: " + std::to_string(used_tuples) +
                         " candidate tuples exceed budget " + std::to_string(opt.budget));

    std::vector<std::vector<std::uint32_t>> tuples;
    std::vector<int> cur(ng, 0);
    cur[0] = first;
    auto rec = [&](auto&& self, int level) -> void {
      if (level == ng) {
        detail::HomSearch<PermOps> search(m, pops);
        bool ok = true;
        for (int i = 0; i < ng && ok; ++i) ok = search.assign(gens[i], perms[cur[i]]);
        if (ok && search.total())
          tuples.emplace_back(cur.begin(), cur.end());
        return;
      }
      for (int c : filt[level]) {
        bool ok = true;
        for (int j = 1; j < level && ok; ++j)
          if (must_commute[level][j]) ok = commutes(c, cur[j]);
        if (!ok) continue;
        cur[level] = c;
        self(self, level + 1);
      }
    };
    rec(rec, 1);
    return tuples;
  };

  auto materialize = [&](const std::vector<std::uint32_t>& tuple, std::uint64_t class_size) {
    detail::HomSearch<PermOps> search(m, pops);
    for (int i = 0; i < ng; ++i)
      if (!search.assign(gens[i], perms[tuple[i]]))
        fail_axiom("action enumeration: verified tuple failed to re-extend");
    Action a;
    a.actor = &m;
    a.target = &h;
    a.auts = auts->perms;
    a.per_element.resize(m.order);
    for (int i = 0; i < m.order; ++i)
      a.per_element[i] = static_cast<std::uint32_t>(index.at(search.images()[i]));
    a.class_size = class_size;
    return a;
  };

  std::vector<Action> out;

  if (!opt.dedup) {
    for (int first : cands[0])
      for (const auto& t : enumerate_extensions(first)) out.push_back(materialize(t, 1));
    return out;
  }

  // Dedup by Aut(H)-conjugacy. Any action is conjugate to one whose first
  // generator image is a class representative; within that block the
  // residual identifications come from the representative's centralizer.
  auto classes = detail::conjugacy_classes(perms, index);
  for (std::size_t cid = 0; cid < classes.rep.size(); ++cid) {
    int r = classes.rep[cid];
    if (m.element_orders[gens[0]] % aut_order[r] != 0) continue;
    auto block = enumerate_extensions(r);
    if (block.empty()) continue;

    std::vector<int> cent;
    for (int x = 0; x < na; ++x)
      if (commutes(x, r)) cent.push_back(x);
    auto cgens = detail::greedy_generators(perms, cent, index);

    std::unordered_map<std::vector<std::uint32_t>, int, U32VecHash> pos;
    pos.reserve(block.size() * 2);
    for (std::size_t i = 0; i < block.size(); ++i) pos.emplace(block[i], static_cast<int>(i));

    // Union-find over the block under conjugation by centralizer generators.
    std::vector<int> parent(block.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < block.size(); ++i) {
      for (int cg : cgens) {
        Perm ci = perm_inverse(perms[cg]);
        std::vector<std::uint32_t> conj(ng);
        for (int k = 0; k < ng; ++k)
          conj[k] = static_cast<std::uint32_t>(
              index.at(perm_then(perm_then(ci, perms[block[i][k]]), perms[cg])));
        auto it = pos.find(conj);
        if (it == pos.end())
          fail_axiom("action dedup: conjugate tuple missing from block");
        int a = find(static_cast<int>(i)), b = find(it->second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::map<int, std::pair<std::vector<std::uint32_t>, std::uint64_t>> comps;
    for (std::size_t i = 0; i < block.size(); ++i) {
      int root = find(static_cast<int>(i));
      auto [it, fresh] = comps.try_emplace(root, block[i], 0);
      ++it->second.second;
      if (block[i] < it->second.first) it->second.first = block[i];
    }
    for (auto& [root, entry] : comps)
      out.push_back(materialize(entry.first, entry.second * classes.size[cid]));
  }
  return out;
}

/// M x| H with elements encoded a*|H| + h and (a,h)(b,k) = (ab, h^b k).
struct SemidirectProduct {
  std::shared_ptr<const FiniteGroup> product;
  const FiniteGroup* actor = nullptr;
  const FiniteGroup* target = nullptr;
  Action action;
  Homomorphism embed_m, embed_h, project_m;

  int encode(int a, int h) const { return a * target->order + h; }
  int m_part(int x) const { return x / target->order; }
  int h_part(int x) const { return x % target->order; }
};

inline SemidirectProduct semidirect_product(const Action& act,
                                            int order_bound = kDefaultOrderBound) {
  const FiniteGroup& m = *act.actor;
  const FiniteGroup& h = *act.target;
  long long n = static_cast<long long>(m.order) * h.order;
  if (n > order_bound)
    throw bound_error("semidirect: order " + std::to_string(n) + " exceeds bound " +
                      std::to_string(order_bound));
  int order = static_cast<int>(n);
  std::vector<std::uint16_t> t(std::size_t(order) * order);
  for (int a = 0; a < m.order; ++a)
    for (int hh = 0; hh < h.order; ++hh)
      for (int b = 0; b < m.order; ++b)
        for (int k = 0; k < h.order; ++k)
          t[std::size_t(a * h.order + hh) * order + (b * h.order + k)] =
              static_cast<std::uint16_t>(m.mul(a, b) * h.order + h.mul(act.apply(b, hh), k));
  SemidirectProduct sd;
  sd.product = std::make_shared<const FiniteGroup>(
      make_group(order, std::move(t), "sdp:" + m.label + "*" + h.label, order_bound));
  sd.actor = &m;
  sd.target = &h;
  sd.action = act;

  sd.embed_m.source = &m;
  sd.embed_m.target = sd.product.get();
  sd.embed_m.images.resize(m.order);
  for (int a = 0; a < m.order; ++a)
    sd.embed_m.images[a] = static_cast<std::uint16_t>(a * h.order);

  sd.embed_h.source = &h;
  sd.embed_h.target = sd.product.get();
  sd.embed_h.images.resize(h.order);
  for (int x = 0; x < h.order; ++x) sd.embed_h.images[x] = static_cast<std::uint16_t>(x);

  sd.project_m.source = sd.product.get();
  sd.project_m.target = &m;
  sd.project_m.images.resize(order);
  for (int x = 0; x < order; ++x)
    sd.project_m.images[x] = static_cast<std::uint16_t>(x / h.order);
  return sd;
}

/// Group operations of M x| H computed on the fly from the action, without
/// materializing the product table.
struct SemidirectOps {
  using Elem = int;
  const Action* act;
  int horder;

  Elem identity() const { return 0; }
  Elem mul(Elem x, Elem y) const {
    int b = y / horder;
    return act->actor->mul(x / horder, b) * horder +
           act->target->mul(act->apply(b, x % horder), y % horder);
  }
  bool equal(Elem a, Elem b) const { return a == b; }
};

/// A crossed homomorphism alpha : M -> H for a given action, satisfying
/// alpha(ab) = alpha(a)^b alpha(b).
struct CrossedHom {
  const FiniteGroup* actor = nullptr;
  const FiniteGroup* target = nullptr;
  const Action* action = nullptr;
  std::vector<std::uint16_t> values;
};

inline void validate_crossed_hom(const CrossedHom& c) {
  const FiniteGroup& m = *c.actor;
  const FiniteGroup& h = *c.target;
  if (c.values[m.identity] != h.identity) fail_axiom("crossed hom: identity value");
  for (int a = 0; a < m.order; ++a)
    for (int b = 0; b < m.order; ++b)
      if (c.values[m.mul(a, b)] != h.mul(c.action->apply(b, c.values[a]), c.values[b]))
        fail_axiom("crossed hom: equation fails at (" + std::to_string(a) + "," +
                   std::to_string(b) + ")");
}

/// All crossed homomorphisms M -> H: the H-parts of the sections
/// M -> M x| H (homomorphisms a |-> (a, h_a)), enumerated in the semidirect
/// product with the projection to M pinned to the identity.
inline std::vector<CrossedHom> enumerate_crossed_homs(const Action& act,
                                                      const EnumOptions& opt = {}) {
  const FiniteGroup& m = *act.actor;
  const FiniteGroup& h = *act.target;
  SemidirectOps ops{&act, h.order};
  std::vector<std::vector<int>> cands(m.generators.size());
  for (std::size_t i = 0; i < m.generators.size(); ++i) {
    cands[i].reserve(h.order);
    for (int x = 0; x < h.order; ++x) cands[i].push_back(m.generators[i] * h.order + x);
  }
  auto out = collect_homs<SemidirectOps, CrossedHom>(
      m, ops, cands, opt.budget, opt.workers,
      [&](const std::vector<int>& images) -> std::optional<CrossedHom> {
        CrossedHom c;
        c.actor = &m;
        c.target = &h;
        c.action = &act;
        c.values.resize(m.order);
        for (int i = 0; i < m.order; ++i) {
          if (images[i] / h.order != i)
            fail_axiom("crossed homs: section left its coset");
          c.values[i] = static_cast<std::uint16_t>(images[i] % h.order);
        }
        return c;
      });
  std::sort(out.begin(), out.end(),
            [](const CrossedHom& a, const CrossedHom& b) { return a.values < b.values; });
  return out;
}

inline long long count_crossed_homs(const Action& act, const EnumOptions& opt = {}) {
  return static_cast<long long>(enumerate_crossed_homs(act, opt).size());
}

/// Sections M -> M x| H: homomorphisms whose projection to M is the
/// identity. In bijection with crossed homomorphisms.
inline std::vector<Homomorphism> enumerate_sections(const SemidirectProduct& sd,
                                                    EnumOptions opt = {}) {
  Homomorphism ident = identity_hom(*sd.actor);
  SectionConstraint sc{&sd.project_m, &ident};
  opt.constraint = &sc;
  return enumerate_homs(*sd.actor, *sd.product, opt);
}

}  // namespace homcount
