#pragma once

#include <string>
#include <vector>

#include "octic/braid.hpp"
#include "octic/words.hpp"

namespace octic::corpus {

// Complement of the deltoid and two cusp tangents plus the line at infinity, from braid monodromy.
Presentation gdl();
// The nine relations as printed, for comparison with gdl().
Presentation gdl_printed();
Presentation gsdl();       // gdl + [l1, l2]
Presentation g0();         // two braid relations on c1..c4
Presentation g_orb22();    // gsdl + l1^2, l2^2, linf^2
Presentation g_symp();     // stated presentation on c1p, c2, c3, c4
Presentation g2();         // stated presentation on x, y, z
Presentation cremona24();  // gsdl + l1 = l2 = linf, l1^2

// Map of the orbifold group onto (Z/2)^2: c_i -> 0, l1 -> (1,0), l2 -> (0,1), linf -> (1,1).
struct OrbifoldMap {
  std::vector<long> moduli;
  std::vector<std::vector<long>> images;
};
OrbifoldMap g_orb22_kummer_map();

std::vector<std::string> names();
Presentation by_name(const std::string& name);

// Canonical multiset comparison of relators (cyclic reduction, rotation and inversion).
bool same_relators(const Presentation& a, const Presentation& b);

}  // namespace octic::corpus
