#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "homcount/action.hpp"
#include "homcount/enumerate.hpp"
#include "homcount/tails.hpp"
#include "test_util.hpp"

using namespace homcount;
using homcount::testing::shared_catalog;

namespace {

Homomorphism first_epi(const FiniteGroup& f, const FiniteGroup& m) {
  EnumOptions opt;
  opt.surjective_only = true;
  auto epis = enumerate_homs(f, m, opt);
  REQUIRE_FALSE(epis.empty());
  return epis.front();
}

// The canonical quadruple (M -->> M ; H < M x| H) of the section family.
struct SectionSetup {
  SemidirectProduct sd;
  Quadruple quad;
  std::vector<Homomorphism> sections;
};

SectionSetup section_setup(const Action& act) {
  SectionSetup s{semidirect_product(act), {}, {}};
  std::vector<int> h_gens;
  for (int x = 0; x < s.sd.target->order; ++x) h_gens.push_back(s.sd.embed_h.images[x]);
  s.quad = make_quadruple(*s.sd.actor, identity_hom(*s.sd.actor), *s.sd.product,
                          make_subgroup(*s.sd.product, h_gens));
  s.sections = enumerate_sections(s.sd);
  return s;
}

bool tails_conjugate_by_some_h(const Homomorphism& a, const Homomorphism& b, const Quadruple& q) {
  for (int h : q.H.elements())
    if (tail_of(conjugate_hom(b, h), q) == tail_of(a, q)) return true;
  return false;
}

}  // namespace

TEST_CASE("trivial H makes tails determine homomorphisms") {
  auto& c = shared_catalog();
  const FiniteGroup& f = c.get("klein");
  const FiniteGroup& g = c.get("symmetric:3");
  Quadruple quad =
      make_quadruple(f, first_epi(f, c.get("cyclic:2")), g, trivial_subgroup(g));
  auto family = enumerate_homs(f, g);
  for (const auto& phi : family) {
    auto same = same_tail_set(phi, family, quad);
    REQUIRE(same.size() == 1);
    REQUIRE(same[0] == phi);
  }
  auto part = similarity_partition(family, quad);
  REQUIRE(part.classes.size() == family.size());
}

TEST_CASE("section tails over the canonical quadruple") {
  auto& c = shared_catalog();
  const FiniteGroup& c4 = c.get("cyclic:4");
  Perm inversion{0, 3, 2, 1};
  auto setup = section_setup(make_action(c4, c4, {inversion}));

  REQUIRE(setup.sections.size() == 4);
  // ker(deg) is trivial, and all sections share the coset map a -> (a,.)H,
  // so the whole section set is one tail class of size 4.
  for (const auto& phi : setup.sections)
    REQUIRE(same_tail_set(phi, setup.sections, setup.quad).size() == 4);

  // phi-core of the canonical section: all of H here.
  PhiCore core = phi_core(setup.sections.front(), setup.quad);
  REQUIRE(core.core.size() == 4);
  REQUIRE(count_crossed_homs(core.induced) == 4);
}

TEST_CASE("lemma-tail rule produces tail-equal homomorphisms") {
  auto& c = shared_catalog();
  const FiniteGroup& f = c.get("klein");
  const FiniteGroup& g = c.get("symmetric:3");
  const FiniteGroup& m = c.get("cyclic:2");
  Quadruple quad = make_quadruple(f, first_epi(f, m), g, sylow_subgroup(g, 2));
  auto family = enumerate_homs(f, g);
  for (const auto& phi : family) {
    PhiCore core = phi_core(phi, quad);
    for (const auto& alpha : enumerate_crossed_homs(core.induced)) {
      Homomorphism psi = phi;
      for (int x = 0; x < f.order; ++x)
        psi.images[x] = static_cast<std::uint16_t>(
            g.mul(phi.images[x], core.core_group->to_parent[alpha.values[quad.deg.images[x]]]));
      validate_homomorphism(psi);
      REQUIRE(same_tail(psi, phi, quad));
    }
  }
}

TEST_CASE("lemma-tail equivalence on finite quadruples") {
  auto& c = shared_catalog();
  struct Case {
    const char* f;
    const char* m;
    const char* g;
  };
  for (auto [fl, ml, gl] : {Case{"klein", "cyclic:2", "symmetric:3"},
                            Case{"cyclic:4", "cyclic:2", "dihedral:8"},
                            Case{"symmetric:3", "cyclic:2", "symmetric:3"},
                            Case{"cyclic:6", "cyclic:6", "dihedral:12"},
                            Case{"abelian:2,2,2", "klein", "dihedral:8"}}) {
    const FiniteGroup& f = c.get(fl);
    const FiniteGroup& g = c.get(gl);
    auto family = enumerate_homs(f, g);
    for (const auto& h : all_subgroups(g)) {
      Quadruple quad = make_quadruple(f, first_epi(f, c.get(ml)), g, h);
      for (std::size_t i = 0; i < family.size(); i += 3) {
        auto same = same_tail_set(family[i], family, quad);
        PhiCore core = phi_core(family[i], quad);
        INFO(fl << " -> " << gl << " with |H| = " << h.size());
        REQUIRE(same.size() == std::size_t(count_crossed_homs(core.induced)));
      }
    }
  }
}

TEST_CASE("phi-core examples") {
  auto& c = shared_catalog();

  SECTION("trivial kernel and normal H give the whole of H") {
    const FiniteGroup& c2 = c.get("cyclic:2");
    const FiniteGroup& c6 = c.get("cyclic:6");
    Subgroup h = make_subgroup(c6, {2});  // order-3 subgroup
    Quadruple quad = make_quadruple(c2, identity_hom(c2), c6, h);
    Homomorphism phi;
    phi.source = &c2;
    phi.target = &c6;
    phi.images = {0, 3};
    validate_homomorphism(phi);
    REQUIRE(phi_core(phi, quad).core.size() == 3);
  }
  SECTION("surjective phi onto symmetric(3) kills a non-normal H") {
    const FiniteGroup& s3 = c.get("symmetric:3");
    Quadruple quad =
        make_quadruple(s3, first_epi(s3, c.get("cyclic:2")), s3, sylow_subgroup(s3, 2));
    REQUIRE(phi_core(identity_hom(s3), quad).core.size() == 1);
  }
}

TEST_CASE("similarity partition statistics") {
  auto& c = shared_catalog();
  const FiniteGroup& f = c.get("klein");
  const FiniteGroup& g = c.get("symmetric:3");
  Quadruple quad = make_quadruple(f, first_epi(f, c.get("cyclic:2")), g, sylow_subgroup(g, 2));
  auto family = enumerate_homs(f, g);
  auto part = similarity_partition(family, quad);

  std::size_t covered = 0;
  std::set<int> seen;
  for (const auto& cls : part.classes) {
    covered += cls.members.size();
    for (int m : cls.members) REQUIRE(seen.insert(m).second);
    // orbit-stabilizer: #tails x |H_phi| = |H| (hypothesis-free)
    REQUIRE(cls.n_tails * cls.core_order == quad.H.size());
    // per-tail sizes are equal within a class
    for (int ts : cls.tail_sizes) REQUIRE(ts == cls.tail_sizes[0]);
    // |H| divides |M| here, and the theorem applies: class size is a
    // multiple of |H|
    REQUIRE(cls.members.size() % quad.H.size() == 0);
    // members really are pairwise similar
    for (std::size_t i = 1; i < cls.members.size(); ++i)
      REQUIRE(tails_conjugate_by_some_h(family[cls.members[0]], family[cls.members[i]], quad));
  }
  REQUIRE(covered == family.size());
  // members of different classes are not similar
  if (part.classes.size() >= 2)
    REQUIRE_FALSE(tails_conjugate_by_some_h(family[part.classes[0].members[0]],
                                            family[part.classes[1].members[0]], quad));
}

TEST_CASE("similarity requires an H-invariant family") {
  auto& c = shared_catalog();
  const FiniteGroup& f = c.get("klein");
  const FiniteGroup& g = c.get("symmetric:3");
  Quadruple quad = make_quadruple(f, first_epi(f, c.get("cyclic:2")), g, sylow_subgroup(g, 2));
  auto family = enumerate_homs(f, g);
  // drop a hom with a nontrivial H-orbit: conjugation invariance breaks
  std::size_t victim = family.size();
  for (std::size_t i = 0; i < family.size() && victim == family.size(); ++i)
    for (int h : quad.H.elements())
      if (conjugate_hom(family[i], h).images != family[i].images) {
        victim = i;
        break;
      }
  REQUIRE(victim != family.size());
  std::vector<Homomorphism> broken;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (i != victim) broken.push_back(family[i]);
  REQUIRE_THROWS_AS(similarity_partition(broken, quad), spec_error);
}

TEST_CASE("central core") {
  auto& c = shared_catalog();

  SECTION("trivial action on an abelian group fixes everything") {
    const FiniteGroup& m = c.get("cyclic:2");
    const FiniteGroup& h = c.get("cyclic:4");
    REQUIRE(central_core(trivial_action(m, h)).size() == 4);
  }
  SECTION("swap action on the Klein group fixes the diagonal") {
    Action a = make_action(c.get("cyclic:2"), c.get("klein"), {Perm{0, 2, 1, 3}});
    auto z = central_core(a);
    REQUIRE(z.size() == 2);
    REQUIRE(z.members.test(0));
    REQUIRE(z.members.test(3));
  }
  SECTION("trivial action on the quaternion group gives its center") {
    const FiniteGroup& q8 = c.get("quaternion:8");
    REQUIRE(central_core(trivial_action(c.get("cyclic:2"), q8)).size() == 2);
  }
  SECTION("matches H intersect Z(M x| H)") {
    const FiniteGroup& m = c.get("cyclic:2");
    for (const char* hl : {"klein", "cyclic:4", "dihedral:8"}) {
      const FiniteGroup& h = c.get(hl);
      for (const auto& act : enumerate_actions(m, h)) {
        auto sd = semidirect_product(act);
        auto zc = center(*sd.product);
        Subgroup direct = central_core(act);
        for (int x = 0; x < h.order; ++x)
          REQUIRE(direct.members.test(x) == zc.members.test(sd.embed_h.images[x]));
      }
    }
  }
}

TEST_CASE("section shifting") {
  auto& c = shared_catalog();
  // M = C2 x C2 with the last factor designated; H = C2, trivial action.
  const FiniteGroup& m = c.get("abelian:2,2");
  const FiniteGroup& h = c.get("cyclic:2");
  const FiniteGroup& c2 = c.get("cyclic:2");
  Action act = trivial_action(m, h);
  auto sd = semidirect_product(act);
  auto sections = enumerate_sections(sd);
  REQUIRE(sections.size() == 4);

  auto alphas = enumerate_homs(c2, h);
  REQUIRE(alphas.size() == 2);

  SECTION("trivial alpha is the identity shift") {
    for (const auto& s : sections) {
      auto shifted = shift_section(sd, s, alphas[0]);
      REQUIRE(shifted.images == s.images);
    }
  }
  SECTION("shifting twice composes") {
    for (const auto& s : sections)
      for (const auto& a1 : alphas)
        for (const auto& a2 : alphas) {
          Homomorphism prod = a1;
          for (std::size_t i = 0; i < prod.images.size(); ++i)
            prod.images[i] = static_cast<std::uint16_t>(h.mul(a1.images[i], a2.images[i]));
          auto twice = shift_section(sd, shift_section(sd, s, a1), a2);
          auto once = shift_section(sd, s, prod);
          REQUIRE(twice.images == once.images);
        }
  }
  SECTION("orbits have size |Hom(C, Z_H)|") {
    std::set<std::vector<std::uint16_t>> seen;
    int orbits = 0;
    for (const auto& s : sections) {
      if (seen.count(s.images)) continue;
      ++orbits;
      for (const auto& a : alphas) seen.insert(shift_section(sd, s, a).images);
    }
    REQUIRE(orbits == 2);  // 4 sections in orbits of size |Hom(C2, Z_H)| = 2
  }
  SECTION("shift commutes with H-conjugation") {
    for (const auto& s : sections)
      for (const auto& a : alphas)
        for (int x = 0; x < h.order; ++x) {
          int he = sd.embed_h.images[x];
          auto lhs = shift_section(sd, conjugate_hom(s, he), a);
          auto rhs = conjugate_hom(shift_section(sd, s, a), he);
          REQUIRE(lhs.images == rhs.images);
        }
  }
  SECTION("alpha outside the central core is rejected") {
    Action swap = make_action(c.get("cyclic:2"), c.get("klein"), {Perm{0, 2, 1, 3}});
    auto sd2 = semidirect_product(swap);
    auto sections2 = enumerate_sections(sd2);
    Homomorphism alpha;  // C2 -> Klein hitting a non-fixed element
    alpha.source = &c2;
    alpha.target = swap.target;
    alpha.images = {0, 1};
    validate_homomorphism(alpha);
    REQUIRE_THROWS_AS(shift_section(sd2, sections2.front(), alpha), spec_error);
  }
}

TEST_CASE("tails over a presented source") {
  auto& c = shared_catalog();
  const FiniteGroup& m = c.get("abelian:2,4");
  const FiniteGroup& h = c.get("cyclic:4");
  auto actions = enumerate_actions(m, h);
  // a nontrivial action keeps the test honest
  const Action& act = actions.size() > 1 ? actions[1] : actions[0];
  auto sd = semidirect_product(act);

  FpGroup mhat;
  mhat.generator_count = 2;
  mhat.relators = {Word{1, 1}, Word{-1, -2, 1, 2}};
  mhat.label = "fp:C2xZ";

  Homomorphism deg;
  deg.fp_source = &mhat;
  deg.target = &m;
  deg.images = {4, 1};  // (1,0) and (0,1) in mixed radix

  std::vector<int> h_gens;
  for (int x = 0; x < h.order; ++x) h_gens.push_back(sd.embed_h.images[x]);
  Quadruple quad = make_quadruple(mhat, deg, *sd.product, make_subgroup(*sd.product, h_gens),
                                  {Word{2, 2, 2, 2}});  // ker(deg) = <ghat^4>

  Homomorphism part = deg;
  SectionConstraint sc{&sd.project_m, &part};
  EnumOptions opt;
  opt.constraint = &sc;
  auto family = enumerate_homs(mhat, *sd.product, opt);
  REQUIRE_FALSE(family.empty());

  // Lemma-tail equivalence along the presented path.
  for (std::size_t i = 0; i < family.size(); i += 2) {
    auto same = same_tail_set(family[i], family, quad);
    PhiCore core = phi_core(family[i], quad);
    REQUIRE(same.size() == std::size_t(count_crossed_homs(core.induced)));
  }

  // Orbit-stabilizer on the presented path.
  auto part2 = similarity_partition(family, quad);
  std::size_t total = 0;
  for (const auto& cls : part2.classes) {
    REQUIRE(cls.n_tails * cls.core_order == quad.H.size());
    total += cls.members.size();
  }
  REQUIRE(total == family.size());
}
