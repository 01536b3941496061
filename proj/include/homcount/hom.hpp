#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "homcount/base.hpp"
#include "homcount/group.hpp"
#include "homcount/subgroup.hpp"

namespace homcount {

// A word over generators: entry +k means generator k-1, entry -k its inverse.
using Word = std::vector<int>;

/// Finitely presented group: generator count plus relator words. Used for
/// infinite sources such as M0 x <a>_inf; enumeration stays finite because
/// image candidates are constrained per generator.
struct FpGroup {
  int generator_count = 0;
  std::vector<Word> relators;
  std::string label;
};

inline void validate_word(const FpGroup& f, const Word& w) {
  for (int s : w) {
    int g = s > 0 ? s - 1 : -s - 1;
    if (s == 0 || g >= f.generator_count)
      fail_spec(f.label + ": word references invalid generator " + std::to_string(s));
  }
}

/// Free abelian-by-torsion presentation <g1..gr | gi^ni (ni>0), [gi,gj]>.
/// A modulus of 0 contributes a generator with no power relator.
inline FpGroup fp_abelian(const AbelianFactors& f, std::string label = "") {
  FpGroup out;
  out.generator_count = static_cast<int>(f.moduli.size());
  for (int i = 0; i < out.generator_count; ++i) {
    if (f.moduli[i] < 0) fail_spec("fp_abelian: negative modulus");
    if (f.moduli[i] > 0) out.relators.push_back(Word(f.moduli[i], i + 1));
  }
  for (int i = 0; i < out.generator_count; ++i)
    for (int j = i + 1; j < out.generator_count; ++j)
      out.relators.push_back(Word{-(i + 1), -(j + 1), i + 1, j + 1});
  if (label.empty()) {
    label = "fp-abelian:";
    for (std::size_t i = 0; i < f.moduli.size(); ++i)
      label += (i ? "," : "") + std::to_string(f.moduli[i]);
  }
  out.label = std::move(label);
  return out;
}

/// A homomorphism between groups. For a finite source, images covers every
/// source element; for a presented source it covers the generators.
struct Homomorphism {
  const FiniteGroup* source = nullptr;  // exactly one of source / fp_source set
  const FpGroup* fp_source = nullptr;
  const FiniteGroup* target = nullptr;
  std::vector<std::uint16_t> images;

  int apply(int x) const { return images[x]; }

  // Evaluate a generator word in the target (either source kind: for a
  // finite source the word indexes source generators via `gens`).
  int eval_word(std::span<const int> word) const {
    const FiniteGroup& t = *target;
    int r = t.identity;
    for (int s : word) {
      int g = s > 0 ? s - 1 : -s - 1;
      int img;
      if (fp_source) img = images[g];
      else img = images[source->generators[g]];
      if (s < 0) img = t.inv(img);
      r = t.mul(r, img);
    }
    return r;
  }

  bool operator==(const Homomorphism& o) const {
    return source == o.source && fp_source == o.fp_source && target == o.target &&
           images == o.images;
  }
};

inline void validate_homomorphism(const Homomorphism& h) {
  const FiniteGroup& t = *h.target;
  if (h.source) {
    const FiniteGroup& s = *h.source;
    if (h.images.size() != std::size_t(s.order)) fail_axiom("hom: images size mismatch");
    if (h.images[s.identity] != t.identity) fail_axiom("hom: identity not preserved");
    for (int a = 0; a < s.order; ++a)
      for (int b = 0; b < s.order; ++b)
        if (t.mul(h.images[a], h.images[b]) != h.images[s.mul(a, b)])
          fail_axiom("hom: product not respected at (" + std::to_string(a) + "," +
                     std::to_string(b) + ")");
  } else {
    const FpGroup& s = *h.fp_source;
    if (h.images.size() != std::size_t(s.generator_count))
      fail_axiom("hom: generator images size mismatch");
    for (const auto& r : s.relators)
      if (h.eval_word(r) != t.identity) fail_axiom("hom: relator not satisfied");
  }
}

inline bool is_surjective(const Homomorphism& h) {
  std::vector<int> img(h.images.begin(), h.images.end());
  return subgroup_closure(*h.target, img).count() == h.target->order;
}

inline bool is_injective(const Homomorphism& h) {
  if (!h.source) fail_spec("is_injective: finite source required");
  std::vector<char> seen(h.target->order, 0);
  for (auto v : h.images) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline Subgroup kernel(const Homomorphism& h) {
  if (!h.source) fail_spec("kernel: finite source required");
  Bitset b(h.source->order);
  for (int i = 0; i < h.source->order; ++i)
    if (h.images[i] == h.target->identity) b.set(i);
  return Subgroup{h.source, b};
}

inline Homomorphism identity_hom(const FiniteGroup& g) {
  Homomorphism h;
  h.source = &g;
  h.target = &g;
  h.images.resize(g.order);
  for (int i = 0; i < g.order; ++i) h.images[i] = static_cast<std::uint16_t>(i);
  return h;
}

inline Homomorphism compose(const Homomorphism& first, const Homomorphism& then) {
  if (first.target != then.source) fail_spec("compose: target/source mismatch");
  Homomorphism h;
  h.source = first.source;
  h.fp_source = first.fp_source;
  h.target = then.target;
  h.images.resize(first.images.size());
  for (std::size_t i = 0; i < first.images.size(); ++i) h.images[i] = then.images[first.images[i]];
  return h;
}

/// Conjugated homomorphism f |-> h f(.) h^-1 (finite source: per element;
/// presented source: per generator image).
inline Homomorphism conjugate_hom(const Homomorphism& phi, int h) {
  Homomorphism out = phi;
  const FiniteGroup& t = *phi.target;
  int hi = t.inv(h);
  for (auto& v : out.images) v = static_cast<std::uint16_t>(t.mul(h, t.mul(v, hi)));
  return out;
}

/// Quotient by a normal subgroup. Cosets are labeled by their minimal
/// element, sorted, so the identity coset gets index 0. The coset group is
/// heap-owned so the projection's target pointer stays valid across moves.
struct QuotientResult {
  std::shared_ptr<const FiniteGroup> group;
  Homomorphism projection;
};

inline QuotientResult quotient(const FiniteGroup& g, const Subgroup& n) {
  if (n.parent != &g) fail_spec("quotient: subgroup of a different group");
  if (!is_normal(n)) fail_spec("quotient: subgroup is not normal");
  auto nelems = n.elements();
  std::vector<int> coset_label(g.order, -1);  // element -> min of its coset
  std::vector<int> labels;
  for (int x = 0; x < g.order; ++x) {
    if (coset_label[x] >= 0) continue;
    int mn = x;
    std::vector<int> coset;
    for (int m : nelems) coset.push_back(g.mul(x, m));
    for (int c : coset) mn = std::min(mn, c);
    for (int c : coset) coset_label[c] = mn;
    labels.push_back(mn);
  }
  std::sort(labels.begin(), labels.end());
  std::vector<int> index_of_label(g.order, -1);
  for (std::size_t i = 0; i < labels.size(); ++i) index_of_label[labels[i]] = static_cast<int>(i);

  int q = static_cast<int>(labels.size());
  std::vector<std::uint16_t> t(std::size_t(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      t[std::size_t(i) * q + j] =
          static_cast<std::uint16_t>(index_of_label[coset_label[g.mul(labels[i], labels[j])]]);
  auto qg = std::make_shared<const FiniteGroup>(
      make_group(q, std::move(t), g.label + "/N" + std::to_string(n.size()),
                 std::max(kDefaultOrderBound, g.order)));

  QuotientResult out;
  out.group = qg;
  out.projection.source = &g;
  out.projection.target = qg.get();
  out.projection.images.resize(g.order);
  for (int x = 0; x < g.order; ++x)
    out.projection.images[x] = static_cast<std::uint16_t>(index_of_label[coset_label[x]]);
  return out;
}

}  // namespace homcount
