// Counts crossed homomorphisms M -> H for every action of a small abelian
// group on a dihedral group, and shows the divisibility the library checks
// at scale.
#include <iostream>

#include "homcount/action.hpp"
#include "homcount/catalog.hpp"

int main() {
  using namespace homcount;
  Catalog catalog;
  const FiniteGroup& m = catalog.get("abelian:4,2");
  const FiniteGroup& h = catalog.get("dihedral:8");

  auto actions = enumerate_actions(m, h);
  std::cout << actions.size() << " actions of " << m.label << " on " << h.label << "\n";
  for (std::size_t i = 0; i < actions.size(); ++i) {
    long long c = count_crossed_homs(actions[i]);
    std::cout << "action " << i << ": " << c << " crossed homomorphisms, "
              << (c % h.order == 0 ? "divisible" : "NOT divisible") << " by |H| = " << h.order
              << "\n";
  }
  return 0;
}
