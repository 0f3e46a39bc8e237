#pragma once

#include <map>
#include <vector>

#include "mipkit/catalog.hpp"
#include "mipkit/pcgroup.hpp"

namespace testing_support {

using mipkit::Elem;
using mipkit::PcGroup;

inline Elem E(const PcGroup& g, std::initializer_list<int> exps) { return Elem(g.ngens(), exps); }

// Catalog names with |G| <= p^k for the given prime bounds.
inline std::vector<std::string> small_catalog(int max_log2 = 6, int max_log3 = 5, int max_log_other = 3) {
  std::vector<std::string> out;
  for (const auto& e : mipkit::catalog()) {
    auto g = mipkit::catalog_group(e.name);
    int bound = g.prime() == 2 ? max_log2 : g.prime() == 3 ? max_log3 : max_log_other;
    if (g.log_order() <= bound) out.push_back(e.name);
  }
  return out;
}

}  // namespace testing_support
