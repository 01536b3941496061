#include <catch2/catch_amalgamated.hpp>

#include "homcount/action.hpp"
#include "homcount/enumerate.hpp"
#include "homcount/hom.hpp"
#include "test_util.hpp"

using namespace homcount;
using homcount::testing::naive_hom_count;
using homcount::testing::shared_catalog;

TEST_CASE("frozen hom counts (verified against the naive oracle)") {
  auto& c = shared_catalog();
  const FiniteGroup& klein = c.get("klein");
  const FiniteGroup& s3 = c.get("symmetric:3");
  const FiniteGroup& c6 = c.get("cyclic:6");

  REQUIRE(naive_hom_count(klein, s3) == 10);
  REQUIRE(enumerate_homs(klein, s3).size() == 10);

  REQUIRE(naive_hom_count(s3, c6) == 2);
  REQUIRE(enumerate_homs(s3, c6).size() == 2);
  // |Hom(S3, C6)| = |S3 : S3'|, strictly less than |C6|
  REQUIRE(s3.order / commutator_subgroup(s3).size() == 2);
}

TEST_CASE("generator-image enumeration matches the naive all-maps filter") {
  auto& c = shared_catalog();
  for (auto [fl, gl] : std::vector<std::pair<const char*, const char*>>{
           {"cyclic:2", "symmetric:3"}, {"cyclic:3", "symmetric:3"}, {"cyclic:4", "cyclic:4"},
           {"klein", "dihedral:8"}, {"symmetric:3", "symmetric:3"}, {"cyclic:6", "dihedral:8"},
           {"quaternion:8", "cyclic:2"}, {"dihedral:8", "cyclic:4"}, {"cyclic:5", "dihedral:12"},
           {"abelian:2,2,2", "cyclic:6"}}) {
    const FiniteGroup& f = c.get(fl);
    const FiniteGroup& g = c.get(gl);
    INFO(fl << " -> " << gl);
    REQUIRE(enumerate_homs(f, g).size() == naive_hom_count(f, g));
  }
}

TEST_CASE("enumerated homomorphisms satisfy their equations and are unique") {
  auto& c = shared_catalog();
  auto homs = enumerate_homs(c.get("dihedral:8"), c.get("symmetric:3"));
  for (const auto& h : homs) validate_homomorphism(h);
  for (std::size_t i = 1; i < homs.size(); ++i) REQUIRE(homs[i - 1].images < homs[i].images);
}

TEST_CASE("homs into the trivial group") {
  auto& c = shared_catalog();
  REQUIRE(enumerate_homs(c.get("symmetric:4"), trivial_group()).size() == 1);
}

TEST_CASE("budget is enforced") {
  auto& c = shared_catalog();
  EnumOptions opt;
  opt.budget = 2;
  REQUIRE_THROWS_AS(enumerate_homs(c.get("klein"), c.get("symmetric:3"), opt), budget_error);
}

TEST_CASE("surjective-only enumeration") {
  auto& c = shared_catalog();
  EnumOptions opt;
  opt.surjective_only = true;
  REQUIRE(enumerate_homs(c.get("cyclic:4"), c.get("cyclic:2"), opt).size() == 1);
  REQUIRE(enumerate_homs(c.get("klein"), c.get("cyclic:2"), opt).size() == 3);
  for (const auto& h : enumerate_homs(c.get("klein"), c.get("cyclic:2"), opt))
    REQUIRE(is_surjective(h));
}

TEST_CASE("section constraints") {
  auto& c = shared_catalog();
  auto acts = enumerate_actions(c.get("cyclic:2"), c.get("cyclic:3"));
  auto sd = semidirect_product(acts[1]);

  SECTION("sections count solutions in the right cosets") {
    auto sections = enumerate_sections(sd);
    REQUIRE(sections.size() == 3);
    for (const auto& s : sections) {
      validate_homomorphism(s);
      for (int x = 0; x < sd.actor->order; ++x)
        REQUIRE(sd.project_m.images[s.images[x]] == x);
    }
  }
  SECTION("a non-homomorphism pi-part is rejected") {
    Homomorphism bad;
    bad.source = sd.actor;
    bad.target = sd.actor;
    bad.images = {1, 0};  // swaps identity and generator: not a homomorphism
    SectionConstraint sc{&sd.project_m, &bad};
    EnumOptions opt;
    opt.constraint = &sc;
    REQUIRE_THROWS_AS(enumerate_homs(*sd.actor, *sd.product, opt), spec_error);
  }
}

TEST_CASE("n-th root counts") {
  auto& c = shared_catalog();
  const FiniteGroup& s3 = c.get("symmetric:3");
  REQUIRE(count_nth_roots(s3, 1) == 1);
  REQUIRE(count_nth_roots(s3, 2) == 4);
  REQUIRE(count_nth_roots(s3, 3) == 3);
  REQUIRE(count_nth_roots(s3, 6) == 6);

  SECTION("equals |Hom(Z/n, G)|") {
    for (const FiniteGroup* g : shared_catalog().groups()) {
      if (g->order > 12) continue;
      for (int n = 1; n <= 8; ++n)
        REQUIRE(count_nth_roots(*g, n) ==
                static_cast<long long>(enumerate_homs(c.get("cyclic:" + std::to_string(n)), *g).size()));
    }
  }
}

TEST_CASE("presented sources") {
  auto& c = shared_catalog();

  SECTION("free rank-1 source realizes the infinite-cyclic crossed homs") {
    // crossed homs <a>_inf -> H biject with H: sections over the single
    // generator with no relators, pinned to the coset of the generator.
    const FiniteGroup& h = c.get("cyclic:3");
    auto acts = enumerate_actions(c.get("cyclic:2"), h);
    auto sd = semidirect_product(acts[1]);
    FpGroup z = fp_abelian(AbelianFactors{{0}}, "fp:Z");
    Homomorphism part;
    part.fp_source = &z;
    part.target = sd.actor;
    part.images = {1};  // a |-> the generator of M
    SectionConstraint sc{&sd.project_m, &part};
    EnumOptions opt;
    opt.constraint = &sc;
    auto homs = enumerate_homs(z, *sd.product, opt);
    REQUIRE(homs.size() == h.order);
  }

  SECTION("relators cut the hom set down") {
    FpGroup f = fp_abelian(AbelianFactors{{4}}, "fp:C4");
    const FiniteGroup& g = c.get("dihedral:8");
    auto homs = enumerate_homs(f, g);
    REQUIRE(homs.size() == count_nth_roots(g, 4));
    for (const auto& h : homs) validate_homomorphism(h);
  }

  SECTION("two-generator abelian presentation matches the finite source") {
    FpGroup f = fp_abelian(AbelianFactors{{2, 2}}, "fp:V4");
    const FiniteGroup& g = c.get("symmetric:3");
    REQUIRE(enumerate_homs(f, g).size() == enumerate_homs(c.get("klein"), g).size());
  }

  SECTION("word validation") {
    FpGroup f = fp_abelian(AbelianFactors{{2}}, "fp:C2");
    REQUIRE_THROWS_AS(validate_word(f, Word{3}), spec_error);
  }
}

TEST_CASE("the section-family embedding of the p^2 induction step") {
  // M = M0 x Z/4 with M0 = Z/2; M_hat = M0 x <a>_inf surjects onto M. The
  // family Phi of homomorphisms M_hat -> M x| H with pinned projection is
  // finite, divisible by |H|, and its subfamily killing a^4 is exactly the
  // section set of M x| H.
  auto& c = shared_catalog();
  const FiniteGroup& m = c.get("abelian:2,4");
  const FiniteGroup& h = c.get("cyclic:4");
  for (const auto& act : enumerate_actions(m, h)) {
    auto sd = semidirect_product(act);

    FpGroup mhat;
    mhat.generator_count = 2;  // g0 of order 2, ghat of infinite order
    mhat.relators = {Word{1, 1}, Word{-1, -2, 1, 2}};
    mhat.label = "fp:C2xZ";

    // pi: M_hat -> M sends g0 to (1,0) = index 4 and ghat to (0,1) = index 1
    // in the mixed-radix encoding of Z/2 x Z/4.
    Homomorphism part;
    part.fp_source = &mhat;
    part.target = &m;
    part.images = {4, 1};
    validate_homomorphism(part);
    REQUIRE(is_surjective(part));

    SectionConstraint sc{&sd.project_m, &part};
    EnumOptions opt;
    opt.constraint = &sc;
    auto phi = enumerate_homs(mhat, *sd.product, opt);
    REQUIRE(phi.size() % h.order == 0);

    long long phi_hat = 0;
    Word a4{2, 2, 2, 2};
    for (const auto& hom : phi)
      if (hom.eval_word(a4) == sd.product->identity) ++phi_hat;
    REQUIRE(phi_hat == static_cast<long long>(enumerate_sections(sd).size()));
  }
}
