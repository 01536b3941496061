#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "homcount/base.hpp"
#include "homcount/group.hpp"
#include "homcount/hom.hpp"

namespace homcount {

constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Target-group operations over an element type. Instantiated with group
// indices (IndexOps) and with permutations under composition (PermOps), so
// the same search runs against a Cayley table or against Aut(H) without
// materializing the latter.
template <class T>
concept TargetOps = requires(const T& t, const typename T::Elem& a, const typename T::Elem& b) {
  { t.identity() } -> std::convertible_to<typename T::Elem>;
  { t.mul(a, b) } -> std::convertible_to<typename T::Elem>;
  { t.equal(a, b) } -> std::convertible_to<bool>;
};

struct IndexOps {
  using Elem = int;
  const FiniteGroup* g;
  Elem identity() const { return g->identity; }
  Elem mul(Elem a, Elem b) const { return g->mul(a, b); }
  bool equal(Elem a, Elem b) const { return a == b; }
};

struct PermOps {
  using Elem = Perm;
  int degree = 0;
  Elem identity() const { return perm_identity(degree); }
  Elem mul(const Elem& a, const Elem& b) const { return perm_then(a, b); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
};

namespace detail {

// Backtracking search for homomorphisms from a finite source: generator
// images are assigned one at a time and propagated by closure over the
// source's Cayley graph, rejecting on the first inconsistent product.
template <class Ops>
class HomSearch {
 public:
  using Elem = typename Ops::Elem;

  HomSearch(const FiniteGroup& f, const Ops& target) : f_(f), t_(target) {
    img_.resize(f.order, t_.identity());
    have_.assign(f.order, 0);
    have_[f.identity] = 1;
    known_.push_back(f.identity);
  }

  // Returns false on conflict; the caller must undo_to(mark) either way
  // once done with this branch.
  bool assign(int src, const Elem& value) {
    if (have_[src]) return t_.equal(img_[src], value);
    img_[src] = value;
    have_[src] = 1;
    known_.push_back(src);
    std::size_t qi = known_.size() - 1;
    while (qi < known_.size()) {
      int a = known_[qi++];
      for (std::size_t i = 0; i < known_.size(); ++i) {
        int b = known_[i];
        if (!close_pair(a, b) || !close_pair(b, a)) return false;
      }
    }
    return true;
  }

  std::size_t mark() const { return known_.size(); }

  void undo_to(std::size_t m) {
    while (known_.size() > m) {
      have_[known_.back()] = 0;
      known_.pop_back();
    }
  }

  bool total() const { return known_.size() == std::size_t(f_.order); }
  const std::vector<Elem>& images() const { return img_; }

 private:
  bool close_pair(int a, int b) {
    int ab = f_.mul(a, b);
    Elem v = t_.mul(img_[a], img_[b]);
    if (have_[ab]) return t_.equal(img_[ab], v);
    img_[ab] = std::move(v);
    have_[ab] = 1;
    known_.push_back(ab);
    return true;
  }

  const FiniteGroup& f_;
  const Ops& t_;
  std::vector<Elem> img_;
  std::vector<char> have_;
  std::vector<int> known_;
};

template <class Ops, class Visit>
void search_level(HomSearch<Ops>& search, const FiniteGroup& f,
                  const std::vector<std::vector<typename Ops::Elem>>& cands, std::size_t level,
                  Visit&& visit) {
  if (level == cands.size()) {
    if (!search.total()) fail_axiom("hom search: generators do not generate the source");
    visit(search.images());
    return;
  }
  int gen = f.generators[level];
  for (const auto& c : cands[level]) {
    std::size_t m = search.mark();
    if (search.assign(gen, c)) search_level(search, f, cands, level + 1, visit);
    search.undo_to(m);
  }
}

inline void check_budget(std::uint64_t tuples, std::uint64_t budget, const std::string& what) {
  if (tuples > budget)
    throw budget_error(what + ": " + std::to_string(tuples) +
                       " candidate tuples exceed budget " + std::to_string(budget));
}

inline std::uint64_t tuple_count(std::size_t levels, const auto& cands) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < levels; ++i) {
    n *= cands[i].size();
    if (n > (std::uint64_t(1) << 62)) return n;  // saturate
    if (n == 0) return 0;
  }
  return n;
}

}  // namespace detail

/// Enumerates homomorphisms from a finite source into an arbitrary target,
/// given candidate images per source generator (in f.generators order).
/// transform maps an images array (over all source elements) to an optional
/// result; results arrive in deterministic candidate-tuple order. Parallel
/// over first-generator candidates.
template <class Ops, class Out, class Transform>
std::vector<Out> collect_homs(const FiniteGroup& f, const Ops& target,
                              const std::vector<std::vector<typename Ops::Elem>>& cands,
                              std::uint64_t budget, int workers, Transform&& transform) {
  detail::check_budget(detail::tuple_count(cands.size(), cands), budget, "hom enumeration");
  std::vector<Out> out;
  if (cands.empty()) {
    // Trivial source: the unique map sending identity to identity.
    detail::HomSearch<Ops> s(f, target);
    if (!s.total()) fail_axiom("hom search: trivial candidate list for nontrivial source");
    if (auto r = transform(s.images())) out.push_back(std::move(*r));
    return out;
  }

  int first = static_cast<int>(cands[0].size());
  workers = std::max(1, std::min(workers, first));
  std::vector<std::vector<Out>> chunks(first);

  auto run_range = [&](int lo, int hi) {
    detail::HomSearch<Ops> search(f, target);
    for (int i = lo; i < hi; ++i) {
      std::size_t m = search.mark();
      if (search.assign(f.generators[0], cands[0][i])) {
        detail::search_level(search, f, cands, 1, [&](const auto& images) {
          if (auto r = transform(images)) chunks[i].push_back(std::move(*r));
        });
      }
      search.undo_to(m);
    }
  };

  if (workers <= 1) {
    run_range(0, first);
  } else {
    std::vector<std::thread> threads;
    int per = (first + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      int lo = w * per, hi = std::min(first, lo + per);
      if (lo >= hi) break;
      threads.emplace_back(run_range, lo, hi);
    }
    for (auto& t : threads) t.join();
  }
  std::size_t total = 0;
  for (auto& c : chunks) total += c.size();
  out.reserve(total);
  for (auto& c : chunks)
    for (auto& x : c) out.push_back(std::move(x));
  return out;
}

/// Constrains enumeration to homomorphisms whose composition with
/// `projection` equals `part` (the fixed coset of each image). Both maps
/// must themselves be homomorphisms onto/into the same quotient target.
struct SectionConstraint {
  const Homomorphism* projection = nullptr;  // pi : G -> Q
  const Homomorphism* part = nullptr;        // c : F -> Q, source matches F
};

struct EnumOptions {
  const SectionConstraint* constraint = nullptr;
  std::uint64_t budget = kDefaultBudget;
  int workers = 1;
  bool surjective_only = false;
};

namespace detail {

inline void validate_constraint(const SectionConstraint& c, const FiniteGroup& target) {
  if (!c.projection || !c.part) fail_spec("constraint: missing projection or part");
  if (c.projection->source != &target) fail_spec("constraint: projection source mismatch");
  if (c.projection->target != c.part->target) fail_spec("constraint: quotient mismatch");
  try {
    validate_homomorphism(*c.projection);
    validate_homomorphism(*c.part);
  } catch (const axiom_error& e) {
    fail_spec(std::string("constraint: pi-part is not a homomorphism (") + e.what() + ")");
  }
}

}  // namespace detail

/// All homomorphisms F -> G for finite F, optionally restricted by a
/// section constraint. Complete, duplicate-free, sorted by images array.
inline std::vector<Homomorphism> enumerate_homs(const FiniteGroup& f, const FiniteGroup& g,
                                                const EnumOptions& opt = {}) {
  if (opt.constraint) {
    detail::validate_constraint(*opt.constraint, g);
    if (opt.constraint->part->source != &f) fail_spec("constraint: part source mismatch");
  }
  std::vector<std::vector<int>> cands(f.generators.size());
  for (std::size_t i = 0; i < f.generators.size(); ++i) {
    int gen = f.generators[i];
    for (int x = 0; x < g.order; ++x) {
      if (f.element_orders[gen] % g.element_orders[x] != 0) continue;
      if (opt.constraint &&
          opt.constraint->projection->images[x] != opt.constraint->part->images[gen])
        continue;
      cands[i].push_back(x);
    }
  }
  IndexOps ops{&g};
  auto result = collect_homs<IndexOps, Homomorphism>(
      f, ops, cands, opt.budget, opt.workers,
      [&](const std::vector<int>& images) -> std::optional<Homomorphism> {
        Homomorphism h;
        h.source = &f;
        h.target = &g;
        h.images.assign(images.begin(), images.end());
        if (opt.surjective_only && !is_surjective(h)) return std::nullopt;
        return h;
      });
  std::sort(result.begin(), result.end(),
            [](const Homomorphism& a, const Homomorphism& b) { return a.images < b.images; });
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

/// All homomorphisms from a presented source: generator images are chosen
/// from candidate lists and every relator must evaluate to the identity.
/// Without a constraint the candidate lists are the whole target.
inline std::vector<Homomorphism> enumerate_homs(const FpGroup& f, const FiniteGroup& g,
                                                const EnumOptions& opt = {}) {
  for (const auto& r : f.relators) validate_word(f, r);
  if (opt.constraint) {
    detail::validate_constraint(*opt.constraint, g);
    if (opt.constraint->part->fp_source != &f) fail_spec("constraint: part source mismatch");
  }

  // Net exponent bounds from single-generator relators prune candidates.
  std::vector<long long> power(f.generator_count, 0);
  for (const auto& r : f.relators) {
    bool single = true;
    int gen = -1;
    long long net = 0;
    for (int s : r) {
      int gi = s > 0 ? s - 1 : -s - 1;
      if (gen < 0) gen = gi;
      if (gi != gen) {
        single = false;
        break;
      }
      net += s > 0 ? 1 : -1;
    }
    if (single && gen >= 0 && net != 0)
      power[gen] = power[gen] == 0 ? std::abs(net) : gcd_ll(power[gen], std::abs(net));
  }

  std::vector<std::vector<int>> cands(f.generator_count);
  for (int i = 0; i < f.generator_count; ++i) {
    for (int x = 0; x < g.order; ++x) {
      if (power[i] > 0 && power[i] % g.element_orders[x] != 0) continue;
      if (opt.constraint &&
          opt.constraint->projection->images[x] != opt.constraint->part->images[i])
        continue;
      cands[i].push_back(x);
    }
  }
  detail::check_budget(detail::tuple_count(cands.size(), cands), opt.budget,
                       "presented-source enumeration");

  // Check each relator as soon as its highest-indexed generator is assigned.
  std::vector<std::vector<const Word*>> due(f.generator_count + 1);
  for (const auto& r : f.relators) {
    int mx = 0;
    for (int s : r) mx = std::max(mx, (s > 0 ? s : -s));
    due[mx].push_back(&r);
  }

  std::vector<Homomorphism> out;
  Homomorphism h;
  h.fp_source = &f;
  h.target = &g;
  h.images.assign(f.generator_count, 0);

  auto rec = [&](auto&& self, int level) -> void {
    for (const Word* r : due[level])
      if (h.eval_word(*r) != g.identity) return;
    if (level == f.generator_count) {
      if (!opt.surjective_only || is_surjective(h)) out.push_back(h);
      return;
    }
    for (int c : cands[level]) {
      h.images[level] = static_cast<std::uint16_t>(c);
      self(self, level + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(),
            [](const Homomorphism& a, const Homomorphism& b) { return a.images < b.images; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// |{ x in G : x^n = 1 }|.
inline long long count_nth_roots(const FiniteGroup& g, long long n) {
  if (n <= 0) fail_spec("count_nth_roots: n must be positive");
  long long c = 0;
  for (int x = 0; x < g.order; ++x)
    if (g.pow(x, n) == g.identity) ++c;
  return c;
}

}  // namespace homcount
