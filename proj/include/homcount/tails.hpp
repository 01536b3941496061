#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "homcount/action.hpp"
#include "homcount/base.hpp"
#include "homcount/enumerate.hpp"
#include "homcount/group.hpp"
#include "homcount/hom.hpp"
#include "homcount/subgroup.hpp"

namespace homcount {

/// The ambient data (F -->> M ; H <= G) that tails are taken with respect
/// to. The source F is either finite or presented; M is always finite. For
/// a presented source, kernel_words must generate ker(deg) as a subgroup
/// (exact for the abelian presentations this engine works with; see docs).
struct Quadruple {
  const FiniteGroup* F = nullptr;  // exactly one of F / Fp set
  const FpGroup* Fp = nullptr;
  const FiniteGroup* G = nullptr;
  Subgroup H;
  Homomorphism deg;  // onto M
  const FiniteGroup* M = nullptr;
  std::vector<Word> kernel_words;  // presented source only

  // Derived at construction.
  std::vector<int> kernel_elems;     // finite source: ker(deg), ascending
  std::vector<int> preimage_elem;    // finite source: canonical preimage per m
  std::vector<Word> preimage_word;   // presented source: word w_m with deg(w_m) = m
  std::vector<int> coset_label_of;   // per G element: min of its left coset xH
};

namespace detail {

inline void fill_coset_labels(Quadruple& q) {
  const FiniteGroup& g = *q.G;
  auto h_elems = q.H.elements();
  q.coset_label_of.assign(g.order, -1);
  for (int x = 0; x < g.order; ++x) {
    if (q.coset_label_of[x] >= 0) continue;
    int mn = g.order;
    std::vector<int> coset;
    coset.reserve(h_elems.size());
    for (int e : h_elems) coset.push_back(g.mul(x, e));
    for (int c : coset) mn = std::min(mn, c);
    for (int c : coset) q.coset_label_of[c] = mn;
  }
}

}  // namespace detail

inline Quadruple make_quadruple(const FiniteGroup& f, Homomorphism deg, const FiniteGroup& g,
                                Subgroup h) {
  if (deg.source != &f) fail_spec("quadruple: deg source mismatch");
  if (h.parent != &g) fail_spec("quadruple: H is not a subgroup of G");
  validate_homomorphism(deg);
  if (!is_surjective(deg)) fail_spec("quadruple: deg is not surjective");
  validate_subgroup(h);

  Quadruple q;
  q.F = &f;
  q.G = &g;
  q.H = std::move(h);
  q.M = deg.target;
  q.deg = std::move(deg);
  q.preimage_elem.assign(q.M->order, -1);
  for (int x = 0; x < f.order; ++x) {
    int m = q.deg.images[x];
    if (m == q.M->identity) q.kernel_elems.push_back(x);
    if (q.preimage_elem[m] < 0) q.preimage_elem[m] = x;
  }
  detail::fill_coset_labels(q);
  return q;
}

inline Quadruple make_quadruple(const FpGroup& f, Homomorphism deg, const FiniteGroup& g,
                                Subgroup h, std::vector<Word> kernel_words) {
  if (deg.fp_source != &f) fail_spec("quadruple: deg source mismatch");
  if (h.parent != &g) fail_spec("quadruple: H is not a subgroup of G");
  validate_homomorphism(deg);
  if (!is_surjective(deg)) fail_spec("quadruple: deg is not surjective");
  validate_subgroup(h);
  for (const auto& w : kernel_words) {
    validate_word(f, w);
    if (deg.eval_word(w) != deg.target->identity)
      fail_spec("quadruple: kernel word does not map into ker(deg)");
  }

  Quadruple q;
  q.Fp = &f;
  q.G = &g;
  q.H = std::move(h);
  q.M = deg.target;
  q.deg = std::move(deg);
  q.kernel_words = std::move(kernel_words);

  // Canonical preimage words by BFS over M along generator degrees.
  q.preimage_word.assign(q.M->order, Word{});
  std::vector<char> seen(q.M->order, 0);
  seen[q.M->identity] = 1;
  std::vector<int> queue{q.M->identity};
  std::size_t qi = 0;
  while (qi < queue.size()) {
    int m = queue[qi++];
    for (int gi = 0; gi < f.generator_count; ++gi) {
      int nm = q.M->mul(m, q.deg.images[gi]);
      if (!seen[nm]) {
        seen[nm] = 1;
        q.preimage_word[nm] = q.preimage_word[m];
        q.preimage_word[nm].push_back(gi + 1);
        queue.push_back(nm);
      }
    }
  }
  detail::fill_coset_labels(q);
  return q;
}

/// The tail of a homomorphism with respect to a quadruple: its restriction
/// to ker(deg) together with the left H-coset of every image. Two
/// homomorphisms over the same quadruple have equal tails iff these arrays
/// are equal. For a presented source the restriction is recorded on the
/// kernel words and the coset map on one canonical preimage per element of
/// M (the coset of phi(f) depends only on deg f once the kernels agree).
struct Tail {
  std::vector<std::uint16_t> kernel_images;
  std::vector<std::uint16_t> coset_labels;

  bool operator==(const Tail&) const = default;
};

struct TailHash {
  std::size_t operator()(const Tail& t) const {
    std::size_t h = U16VecHash{}(t.kernel_images);
    return h * 0x9e3779b97f4a7c15ull + U16VecHash{}(t.coset_labels);
  }
};

inline void check_hom_matches_quadruple(const Homomorphism& phi, const Quadruple& q) {
  if (phi.target != q.G) fail_spec("tail: homomorphism target is not the quadruple's G");
  if (q.F && phi.source != q.F) fail_spec("tail: homomorphism source is not the quadruple's F");
  if (q.Fp && phi.fp_source != q.Fp) fail_spec("tail: homomorphism source is not the quadruple's F");
}

inline Tail tail_of(const Homomorphism& phi, const Quadruple& q) {
  check_hom_matches_quadruple(phi, q);
  Tail t;
  if (q.F) {
    t.kernel_images.reserve(q.kernel_elems.size());
    for (int k : q.kernel_elems) t.kernel_images.push_back(phi.images[k]);
    t.coset_labels.reserve(q.F->order);
    for (int f = 0; f < q.F->order; ++f)
      t.coset_labels.push_back(static_cast<std::uint16_t>(q.coset_label_of[phi.images[f]]));
  } else {
    t.kernel_images.reserve(q.kernel_words.size());
    for (const auto& w : q.kernel_words)
      t.kernel_images.push_back(static_cast<std::uint16_t>(phi.eval_word(w)));
    t.coset_labels.reserve(q.M->order);
    for (int m = 0; m < q.M->order; ++m)
      t.coset_labels.push_back(
          static_cast<std::uint16_t>(q.coset_label_of[phi.eval_word(q.preimage_word[m])]));
  }
  return t;
}

/// The phi-core of H with its induced M-action: elements h of H whose
/// phi(F)-conjugates stay in H and which are fixed by conjugation by
/// phi(ker deg). M acts by h^a = h^(phi(f)) for any f with deg f = a.
struct PhiCore {
  Subgroup core;  // as a subset of G
  std::shared_ptr<const SubgroupAsGroup> core_group;
  Action induced;
};

inline PhiCore phi_core(const Homomorphism& phi, const Quadruple& q) {
  check_hom_matches_quadruple(phi, q);
  const FiniteGroup& g = *q.G;

  // phi(F) as an element list, and generators of phi(ker deg).
  std::vector<int> image_elems;
  std::vector<int> kernel_image_gens;
  if (q.F) {
    Bitset img(g.order);
    for (int f = 0; f < q.F->order; ++f)
      if (!img.test(phi.images[f])) {
        img.set(phi.images[f]);
        image_elems.push_back(phi.images[f]);
      }
    for (int k : q.kernel_elems) kernel_image_gens.push_back(phi.images[k]);
  } else {
    std::vector<int> gen_imgs(phi.images.begin(), phi.images.end());
    image_elems = subgroup_closure(g, gen_imgs).members();
    // phi(ker deg) is the normal closure of the kernel words' images in
    // phi(F); conjugates by all of phi(F) generate it.
    for (const auto& w : q.kernel_words) {
      int base = phi.eval_word(w);
      for (int x : image_elems) kernel_image_gens.push_back(g.conj(base, x));
    }
  }

  Bitset core(g.order);
  for (int h : q.H.elements()) {
    bool ok = true;
    for (int x : image_elems)
      if (!q.H.members.test(g.conj(h, x))) {
        ok = false;
        break;
      }
    for (std::size_t i = 0; ok && i < kernel_image_gens.size(); ++i)
      if (g.conj(h, kernel_image_gens[i]) != h) ok = false;
    if (ok) core.set(h);
  }

  PhiCore out;
  out.core = Subgroup{&g, core};
  validate_subgroup(out.core);
  auto cg = std::make_shared<SubgroupAsGroup>(subgroup_as_group(out.core));
  out.core_group = cg;

  // Induced action; every preimage of m must induce the same permutation.
  int n = cg->group.order;
  std::vector<Perm> palette;
  std::unordered_map<Perm, std::uint32_t, PermHash> idx;
  auto conj_perm = [&](int by) {
    Perm p(n);
    for (int i = 0; i < n; ++i) {
      int local = cg->from_parent[g.conj(cg->to_parent[i], by)];
      if (local < 0)
        fail_axiom("phi-core: induced action leaves the core (implementation bug)");
      p[i] = static_cast<std::uint16_t>(local);
    }
    return p;
  };

  out.induced.actor = q.M;
  out.induced.target = &cg->group;
  out.induced.per_element.resize(q.M->order);
  for (int m = 0; m < q.M->order; ++m) {
    int rep = q.F ? phi.images[q.preimage_elem[m]] : phi.eval_word(q.preimage_word[m]);
    Perm p = conj_perm(rep);
    auto [it, fresh] = idx.try_emplace(p, static_cast<std::uint32_t>(palette.size()));
    if (fresh) palette.push_back(std::move(p));
    out.induced.per_element[m] = it->second;
  }
  out.induced.auts = std::make_shared<const std::vector<Perm>>(std::move(palette));

  // Well-definedness assertion. For a finite source this is the literal
  // exhaustive check over all preimages; for a presented source the action
  // axioms below certify it together with the centralizer condition.
  if (q.F) {
    for (int f = 0; f < q.F->order; ++f) {
      int m = q.deg.images[f];
      for (int i = 0; i < n; ++i)
        if (cg->from_parent[g.conj(cg->to_parent[i], phi.images[f])] !=
            out.induced.perm_of(m)[i])
          fail_axiom("phi-core: induced action is not well-defined (implementation bug)");
    }
  }
  validate_action(out.induced);
  return out;
}

inline bool same_tail(const Homomorphism& a, const Homomorphism& b, const Quadruple& q) {
  return tail_of(a, q) == tail_of(b, q);
}

/// All members of the family with the same tail as phi.
inline std::vector<Homomorphism> same_tail_set(const Homomorphism& phi,
                                               const std::vector<Homomorphism>& family,
                                               const Quadruple& q) {
  Tail t = tail_of(phi, q);
  std::vector<Homomorphism> out;
  for (const auto& psi : family)
    if (tail_of(psi, q) == t) out.push_back(psi);
  return out;
}

/// Partition of a family into similarity classes (tails conjugate by an
/// element of H), with the per-class tail statistics the structural claims
/// quantify over.
struct SimClass {
  std::vector<int> members;      // indices into the family
  int n_tails = 0;               // distinct tails in the class
  std::vector<int> tail_sizes;   // members per tail
  int core_order = 0;            // |H_phi| of the class representative
};

struct SimilarityPartition {
  std::vector<SimClass> classes;
};

inline SimilarityPartition similarity_partition(const std::vector<Homomorphism>& family,
                                                const Quadruple& q) {
  std::unordered_map<std::vector<std::uint16_t>, int, U16VecHash> member_index;
  for (std::size_t i = 0; i < family.size(); ++i) {
    check_hom_matches_quadruple(family[i], q);
    member_index.emplace(family[i].images, static_cast<int>(i));
  }
  auto h_elems = q.H.elements();

  // Hypothesis: the family is invariant under conjugation by H.
  for (const auto& phi : family)
    for (int h : h_elems)
      if (!member_index.count(conjugate_hom(phi, h).images))
        fail_spec("similarity: family is not invariant under H-conjugation");

  // Tail buckets in first-appearance order.
  std::unordered_map<Tail, int, TailHash> bucket_of;
  std::vector<std::vector<int>> buckets;
  std::vector<int> bucket_of_member(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    Tail t = tail_of(family[i], q);
    auto [it, fresh] = bucket_of.try_emplace(std::move(t), static_cast<int>(buckets.size()));
    if (fresh) buckets.emplace_back();
    buckets[it->second].push_back(static_cast<int>(i));
    bucket_of_member[i] = it->second;
  }

  // Merge buckets whose tails are conjugate by some h in H.
  std::vector<int> parent(buckets.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    const Homomorphism& rep = family[buckets[b][0]];
    for (int h : h_elems) {
      auto it = member_index.find(conjugate_hom(rep, h).images);
      int other = bucket_of_member[it->second];
      int x = find(static_cast<int>(b)), y = find(other);
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  }

  std::map<int, std::vector<int>> grouped;  // root -> bucket ids, ordered
  for (std::size_t b = 0; b < buckets.size(); ++b)
    grouped[find(static_cast<int>(b))].push_back(static_cast<int>(b));

  SimilarityPartition out;
  for (auto& [root, bucket_ids] : grouped) {
    SimClass c;
    c.n_tails = static_cast<int>(bucket_ids.size());
    for (int b : bucket_ids) {
      c.tail_sizes.push_back(static_cast<int>(buckets[b].size()));
      for (int m : buckets[b]) c.members.push_back(m);
    }
    std::sort(c.members.begin(), c.members.end());
    c.core_order = phi_core(family[c.members[0]], q).core.size();
    out.classes.push_back(std::move(c));
  }
  return out;
}

/// Z_H = H n Z(M x| H): the elements of H central in H and fixed by the
/// whole action.
inline Subgroup central_core(const Action& act) {
  const FiniteGroup& h = *act.target;
  Subgroup z = center(h);
  Bitset b(h.order);
  for (int x : z.elements()) {
    bool fixed = true;
    for (int gen : act.actor->generators)
      if (act.apply(gen, x) != x) {
        fixed = false;
        break;
      }
    if (fixed) b.set(x);
  }
  return Subgroup{&h, b};
}

/// Shifts a section of M x| H by a homomorphism alpha from the designated
/// cyclic factor of M (the last abelian factor) into the central core:
/// (a, b) |-> phi(a, b) * alpha(b). The result is again a section.
inline Homomorphism shift_section(const SemidirectProduct& sd, const Homomorphism& phi,
                                  const Homomorphism& alpha) {
  const FiniteGroup& m = *sd.actor;
  if (phi.source != &m || phi.target != sd.product.get())
    fail_spec("shift_section: phi is not a section of this product");
  if (!m.factors) fail_spec("shift_section: M must be built from abelian factors");
  long long last = m.factors->moduli.back();
  if (!alpha.source || alpha.source->order != last)
    fail_spec("shift_section: alpha source must be the last cyclic factor of M");
  if (alpha.target != sd.target)
    fail_spec("shift_section: alpha must land in H");
  Subgroup zh = central_core(sd.action);
  for (auto v : alpha.images)
    if (!zh.members.test(v)) fail_spec("shift_section: alpha image not central");

  const FiniteGroup& p = *sd.product;
  Homomorphism out = phi;
  for (int x = 0; x < m.order; ++x) {
    int c = x % static_cast<int>(last);  // last mixed-radix coordinate
    out.images[x] = static_cast<std::uint16_t>(
        p.mul(phi.images[x], sd.embed_h.images[alpha.images[c]]));
  }
  validate_homomorphism(out);
  for (int x = 0; x < m.order; ++x)
    if (sd.project_m.images[out.images[x]] != x)
      fail_axiom("shift_section: result is not a section (implementation bug)");
  return out;
}

}  // namespace homcount
