// Partitions Hom(F, G) into similarity classes for a sample quadruple and
// prints the per-class tail statistics.
#include <iostream>

#include "homcount/catalog.hpp"
#include "homcount/enumerate.hpp"
#include "homcount/tails.hpp"

int main() {
  using namespace homcount;
  Catalog catalog;
  const FiniteGroup& f = catalog.get("abelian:2,2");
  const FiniteGroup& m = catalog.get("cyclic:2");
  const FiniteGroup& g = catalog.get("symmetric:3");

  EnumOptions surj;
  surj.surjective_only = true;
  Homomorphism deg = enumerate_homs(f, m, surj).front();
  Subgroup h = sylow_subgroup(g, 2);
  Quadruple quad = make_quadruple(f, std::move(deg), g, std::move(h));

  auto family = enumerate_homs(f, g);
  auto part = similarity_partition(family, quad);
  std::cout << "|Hom(" << f.label << ", " << g.label << ")| = " << family.size() << ", "
            << part.classes.size() << " similarity classes\n";
  for (const auto& cls : part.classes)
    std::cout << "class of size " << cls.members.size() << ": " << cls.n_tails
              << " tails, |H_phi| = " << cls.core_order << "\n";
  return 0;
}
