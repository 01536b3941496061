// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion states its own bound (exactness or a wall-clock
// ceiling) and is checked at exactly that bound.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "homcount/checkers.hpp"
#include "homcount/cli.hpp"

using namespace homcount;

namespace {

Catalog& acceptance_catalog() {
  static Catalog catalog = [] {
    Catalog c;
    register_default_catalog(c);
    return c;
  }();
  return catalog;
}

long long naive_hom_count(const FiniteGroup& f, const FiniteGroup& g) {
  std::vector<int> img(f.order, 0);
  long long count = 0;
  while (true) {
    bool ok = true;
    for (int a = 0; a < f.order && ok; ++a)
      for (int b = 0; b < f.order; ++b)
        if (img[f.mul(a, b)] != g.mul(img[a], img[b])) {
          ok = false;
          break;
        }
    if (ok) ++count;
    int pos = f.order - 1;
    while (pos >= 0 && img[pos] == g.order - 1) img[pos--] = 0;
    if (pos < 0) break;
    ++img[pos];
  }
  return count;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome criterion_frobenius() {
  auto t0 = std::chrono::steady_clock::now();
  long long checks = 0;
  for (const FiniteGroup* g : acceptance_catalog().groups()) {
    if (g->order > 24) continue;
    for (long long n = 1; n <= g->order; ++n) {
      auto r = check_frobenius(*g, n);
      ++checks;
      if (r.verdict != Verdict::pass)
        return {false, "fail at " + g->label + ", n=" + std::to_string(n)};
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= 10.0) return {false, "took " + std::to_string(secs) + " s (bound 10 s)"};
  return {true, std::to_string(checks) + " cells, " + std::to_string(secs) + " s"};
}

Outcome criterion_yoshida() {
  auto t0 = std::chrono::steady_clock::now();
  auto& c = acceptance_catalog();
  long long checks = 0;
  for (const FiniteGroup* m : c.groups()) {
    if (!m->abelian || m->order > 16) continue;
    for (const FiniteGroup* g : c.groups()) {
      if (g->order > 24) continue;
      auto r = check_yoshida(*m, *g);
      ++checks;
      if (r.verdict != Verdict::pass)
        return {false, "fail at M=" + m->label + ", G=" + g->label};
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= 120.0) return {false, "took " + std::to_string(secs) + " s (bound 120 s)"};
  return {true, std::to_string(checks) + " cells, " + std::to_string(secs) + " s"};
}

Outcome criterion_restricted_ay() {
  auto t0 = std::chrono::steady_clock::now();
  auto& c = acceptance_catalog();

  // Spot values from the worked examples.
  const FiniteGroup& c4 = c.get("cyclic:4");
  if (count_crossed_homs(trivial_action(c4, c4)) != 4)
    return {false, "trivial action Z/4 on Z/4 must give exactly 4 crossed homs"};
  Action swap = make_action(c.get("cyclic:2"), c.get("klein"), {Perm{0, 2, 1, 3}});
  if (count_crossed_homs(swap) != 2)
    return {false, "swap action Z/2 on Klein must give exactly 2 crossed homs"};

  SweepSpec spec;
  spec.kind = SweepKind::restricted_ay;
  spec.m_labels = {"abelian:2,2", "abelian:4,2", "abelian:4,4", "abelian:8,2", "abelian:4,2,2"};
  spec.max_h = 16;
  spec.dedup_actions = true;
  auto result = run_sweep(spec, c);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (result.summary.fails != 0)
    return {false, std::to_string(result.summary.fails) + " failing action classes"};
  if (result.summary.skipped != 0)
    return {false, std::to_string(result.summary.skipped) + " skipped cells"};
  if (result.summary.reports == 0) return {false, "sweep produced no reports"};
  std::uint64_t actions = 0;
  for (const auto& r : result.reports)
    actions += r.inputs.contains("class_size") ? r.inputs["class_size"].get<std::uint64_t>() : 1;
  if (secs >= 600.0) return {false, "took " + std::to_string(secs) + " s (bound 600 s)"};
  return {true, std::to_string(result.summary.reports) + " action classes covering " +
                    std::to_string(actions) + " actions, " + std::to_string(secs) + " s"};
}

Outcome criterion_elem_abelian_center() {
  auto& c = acceptance_catalog();
  AutCache aut_cache;
  SubgroupOrderCache sub_cache;
  long long reports = 0;
  for (const char* hl : {"dihedral:8", "quaternion:8", "dihedral:16", "semidihedral:16"}) {
    const FiniteGroup& h = c.get(hl);
    if (!check_elem_abelian_centers(h))
      return {false, std::string(hl) + " must satisfy the elementary-abelian-center property"};
    for (const FiniteGroup* m : c.groups()) {
      if (!m->abelian || m->order > 16 || m->order < 2) continue;
      long long o = m->order;
      while (o % 2 == 0) o /= 2;
      if (o != 1) continue;
      SweepSpec spec;
      spec.dedup_actions = true;
      auto rs = crossed_cell_reports(*m, h, CrossedMode::gcd, spec, aut_cache, sub_cache);
      for (const auto& r : rs) {
        ++reports;
        if (r.verdict != Verdict::pass)
          return {false, "fail at M=" + m->label + " on H=" + std::string(hl)};
      }
    }
  }
  return {true, std::to_string(reports) + " action classes, zero fails"};
}

// Deterministic (quad, phi) instance stream shared by criteria 5 and 6.
struct InstanceStats {
  long long instances = 0;
  long long lemma_checked = 0;
  long long classes_checked = 0;
  long long divisibility_classes = 0;
  std::string failure;
};

InstanceStats run_instances() {
  InstanceStats stats;
  auto& c = acceptance_catalog();
  const std::vector<std::string> f_labels{
      "cyclic:2",  "cyclic:3",  "cyclic:4",      "klein",       "cyclic:6",
      "symmetric:3", "cyclic:8", "abelian:4,2",  "abelian:2,2,2", "dihedral:8",
      "quaternion:8", "cyclic:12", "dihedral:12", "alternating:4", "abelian:6,2",
      "cyclic:9",  "abelian:3,3", "dihedral:10"};
  const std::vector<std::string> m_labels{
      "cyclic:2", "cyclic:3", "cyclic:4", "klein",       "cyclic:6",
      "cyclic:9", "cyclic:12", "abelian:4,2", "abelian:2,2,2", "abelian:3,3",
      "abelian:6,2"};
  const std::vector<std::string> g_labels{
      "symmetric:3", "cyclic:6",  "dihedral:8",  "abelian:4,2", "cyclic:12",
      "alternating:4", "dihedral:12", "quaternion:8", "symmetric:4", "dihedral:16",
      "abelian:2,2,2"};

  EnumOptions surj;
  surj.surjective_only = true;

  for (const auto& fl : f_labels) {
    const FiniteGroup& f = c.get(fl);
    if (f.order > 12) continue;
    for (const auto& gl : g_labels) {
      const FiniteGroup& g = c.get(gl);
      if (g.order > 24) continue;
      auto family = enumerate_homs(f, g);
      if (family.empty()) continue;
      for (const auto& ml : m_labels) {
        const FiniteGroup& m = c.get(ml);
        if (m.order > f.order || f.order % m.order != 0) continue;
        auto epis = enumerate_homs(f, m, surj);
        if (epis.empty()) continue;
        auto subs = all_subgroups(g);
        for (std::size_t hi = 0; hi < subs.size(); hi += 2) {
          Quadruple quad = make_quadruple(f, epis.front(), g, subs[hi]);

          // Criterion 5: lemma-tail equivalence at sampled phi.
          std::size_t stride = std::max<std::size_t>(1, family.size() / 3);
          for (std::size_t pi = 0; pi < family.size(); pi += stride) {
            auto same = same_tail_set(family[pi], family, quad);
            PhiCore core = phi_core(family[pi], quad);
            long long crossed = count_crossed_homs(core.induced);
            ++stats.instances;
            ++stats.lemma_checked;
            if (static_cast<long long>(same.size()) != crossed) {
              stats.failure = "lemma-tail mismatch: F=" + fl + " M=" + ml + " G=" + gl +
                              " |H|=" + std::to_string(subs[hi].size()) + " phi#" +
                              std::to_string(pi) + " " + std::to_string(same.size()) +
                              " != " + std::to_string(crossed);
              return stats;
            }
          }

          // Criterion 6: structural claim per similarity class.
          auto part = similarity_partition(family, quad);
          bool hyp = quad.M->order % quad.H.size() == 0;  // |H| divides ord M
          for (const auto& cls : part.classes) {
            ++stats.classes_checked;
            if (cls.n_tails * cls.core_order != quad.H.size()) {
              stats.failure = "orbit-stabilizer violation: F=" + fl + " G=" + gl;
              return stats;
            }
            for (int ts : cls.tail_sizes)
              if (ts != cls.tail_sizes[0]) {
                stats.failure = "unequal per-tail sizes: F=" + fl + " G=" + gl;
                return stats;
              }
            if (hyp) {
              ++stats.divisibility_classes;
              if (cls.tail_sizes[0] % cls.core_order != 0 ||
                  cls.members.size() % quad.H.size() != 0) {
                stats.failure = "divisibility violation: F=" + fl + " M=" + ml + " G=" + gl;
                return stats;
              }
            }
          }
        }
        if (stats.instances >= 700) return stats;
      }
    }
  }
  return stats;
}

InstanceStats& instance_stats() {
  static InstanceStats stats = run_instances();
  return stats;
}

Outcome criterion_lemma_tail() {
  auto& stats = instance_stats();
  if (!stats.failure.empty() && stats.failure.find("lemma-tail") != std::string::npos)
    return {false, stats.failure};
  if (!stats.failure.empty()) return {false, stats.failure};
  if (stats.instances < 500)
    return {false, "only " + std::to_string(stats.instances) + " instances (need >= 500)"};
  return {true, std::to_string(stats.instances) + " (quad, phi) instances, exact equality"};
}

Outcome criterion_structural_claim() {
  auto& stats = instance_stats();
  if (!stats.failure.empty()) return {false, stats.failure};
  if (stats.classes_checked == 0) return {false, "no similarity classes checked"};
  return {true, std::to_string(stats.classes_checked) + " classes (" +
                    std::to_string(stats.divisibility_classes) +
                    " under the |H| | ord M hypothesis), exact"};
}

Outcome criterion_brauer() {
  auto& c = acceptance_catalog();
  long long pairs = 0;
  for (const FiniteGroup* g : c.groups()) {
    if (g->order > 16) continue;
    for (const auto& n : all_subgroups(*g)) {
      if (!is_normal(n)) continue;
      auto r = check_brauer(*g, n);
      pairs += r.required_divisor;
      if (r.verdict != Verdict::pass)
        return {false, "fail at G=" + g->label + ", |N|=" + std::to_string(n.size()) +
                           (r.witness ? " (" + *r.witness + ")" : "")};
    }
  }
  return {true, std::to_string(pairs) + " (G, N, a, h) tuples, exact"};
}

Outcome criterion_hom_oracle() {
  auto& c = acceptance_catalog();
  long long pairs = 0;
  for (const FiniteGroup* f : c.groups()) {
    if (f->order > 12) continue;
    for (const FiniteGroup* g : c.groups()) {
      if (g->order > 24) continue;
      double logcost = f->order * std::log(static_cast<double>(g->order));
      if (logcost > std::log(1e6)) continue;
      long long naive = naive_hom_count(*f, *g);
      long long fast = static_cast<long long>(enumerate_homs(*f, *g).size());
      ++pairs;
      if (naive != fast)
        return {false, "mismatch at F=" + f->label + ", G=" + g->label + ": " +
                           std::to_string(fast) + " != " + std::to_string(naive)};
    }
  }
  return {true, std::to_string(pairs) + " (F, G) pairs within the 10^6 filter, exact"};
}

Outcome criterion_gcd_group() {
  auto& c = acceptance_catalog();
  long long cells = 0;
  for (const FiniteGroup* g : c.groups()) {
    if (g->order > 24) continue;
    SubgroupOrderCache cache;
    const auto& orders = cache.get(*g);
    for (long long n = 1; n <= 48; ++n) {
      ++cells;
      if (gcd_group(*g, n, &orders) != gcd_ll(g->order, n))
        return {false, "mismatch at G=" + g->label + ", n=" + std::to_string(n)};
    }
  }
  return {true, std::to_string(cells) + " (G, n) cells, exact"};
}

Outcome criterion_non_example() {
  auto& c = acceptance_catalog();
  const FiniteGroup& s3 = c.get("symmetric:3");
  const FiniteGroup& c6 = c.get("cyclic:6");
  long long count = static_cast<long long>(enumerate_homs(s3, c6).size());
  long long index = s3.order / commutator_subgroup(s3).size();
  if (count != 2) return {false, "|Hom(S3, Z/6)| = " + std::to_string(count) + ", expected 2"};
  if (index != 2) return {false, "|S3 : S3'| = " + std::to_string(index) + ", expected 2"};
  if (!(count < c6.order)) return {false, "count not strictly below |H| = 6"};
  return {true, "|Hom(S3, Z/6)| = 2 = |S3 : S3'| < 6"};
}

Outcome criterion_determinism() {
  auto& c = acceptance_catalog();
  auto serialize = [](const SweepResult& r) {
    std::string s;
    for (const auto& rep : r.reports) s += report_to_json(rep).dump() + "\n";
    return s;
  };

  SweepSpec spec;
  spec.kind = SweepKind::restricted_ay;
  spec.m_labels = {"abelian:4,2"};
  spec.max_h = 8;
  spec.workers = 2;
  if (serialize(run_sweep(spec, c)) != serialize(run_sweep(spec, c)))
    return {false, "restricted-ay logs differ between runs"};

  SweepSpec fr;
  fr.kind = SweepKind::frobenius;
  fr.max_g = 16;
  fr.workers = 2;
  if (serialize(run_sweep(fr, c)) != serialize(run_sweep(fr, c)))
    return {false, "frobenius logs differ between runs"};

  std::ostringstream out1, out2, err;
  if (run_command({"--json", "sweep", "main-theorem", "--p", "2", "--nmk", "1,1,0", "--max-h",
                   "8"},
                  out1, err) != 0)
    return {false, "cli sweep exited nonzero"};
  if (run_command({"--json", "sweep", "main-theorem", "--p", "2", "--nmk", "1,1,0", "--max-h",
                   "8"},
                  out2, err) != 0)
    return {false, "cli sweep exited nonzero"};
  if (out1.str() != out2.str()) return {false, "cli sweep outputs differ between runs"};
  return {true, "byte-identical machine logs across reruns"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {1, "frobenius sweep |G| <= 24, n <= |G| (< 10 s)", criterion_frobenius},
      {2, "yoshida sweep |M| <= 16, |G| <= 24 (< 2 min)", criterion_yoshida},
      {3, "restricted asai-yoshida sweep with spot values (< 10 min)", criterion_restricted_ay},
      {4, "elementary-abelian-center targets with gcd divisors", criterion_elem_abelian_center},
      {5, "lemma-tail oracle equivalence on >= 500 instances", criterion_lemma_tail},
      {6, "hom-family structural claim per similarity class", criterion_structural_claim},
      {7, "brauer lemma exhaustive for |G| <= 16", criterion_brauer},
      {8, "hom enumeration vs naive all-maps filter", criterion_hom_oracle},
      {9, "gcd_group(G, n) = gcd(|G|, n) for |G| <= 24, n <= 48", criterion_gcd_group},
      {10, "non-example guard |Hom(S3, Z/6)| = 2 < 6", criterion_non_example},
      {11, "byte-identical machine logs on rerun", criterion_determinism},
  };

  bool all_pass = true;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all_pass = all_pass && o.pass;
    std::printf("[%s] criterion %2d (%6.1fs): %s%s%s\n", o.pass ? "PASS" : "FAIL", c.id, secs,
                c.name.c_str(), o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
