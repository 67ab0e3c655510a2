#include "octic/group_corpus.hpp"

#include <algorithm>

namespace octic::corpus {

Presentation gdl() {
  Presentation p = zvk_presentation(4, {{"l1", deltoid_tau1()}, {"l2", deltoid_tau2()}}, true, "linf");
  p.notes = {"deltoid with two cusp tangents and the line at infinity, braids (s2 s1)^2 and (s2 s3)^2"};
  return p;
}

Presentation gdl_printed() {
  return Presentation::from_text({"c1", "c2", "c3", "c4", "l1", "l2", "linf"},
                                 {
                                     "[l2,c1]",
                                     "l2^-1*c2*l2 = (c2*c3*c4)*c3*(c2*c3*c4)^-1",
                                     "l2^-1*c3*l2 = (c2*c3)*c4*(c2*c3)^-1",
                                     "l2^-1*c4*l2 = c2",
                                     "l1^-1*c1*l1 = (c1*c2)*c3*(c1*c2)^-1",
                                     "l1^-1*c2*l1 = (c1*c2)*c1*(c1*c2)^-1",
                                     "l1^-1*c3*l1 = c1*c2*c1^-1",
                                     "[l1,c4]",
                                     "c1*c2*c3*c4*l1*l2*linf",
                                 },
                                 {"relations as printed"});
}

Presentation gsdl() { return quotient_by_relations(gdl(), std::vector<std::string>{"[l1,l2]"}, "symplectic deltoid: [l1,l2]=1"); }

Presentation g0() {
  return Presentation::from_text({"c1", "c2", "c3", "c4"}, {"c1*c2*c1 = c2*c1*c2", "c3*c4*c3 = c4*c3*c4"},
                                 {"free product of two 3-strand braid groups"});
}

Presentation g_orb22() {
  return quotient_by_relations(gsdl(), std::vector<std::string>{"l1^2", "l2^2", "linf^2"},
                               "orbifold structure of the Kummer cover of order 2");
}

Presentation g_symp() {
  return Presentation::from_text({"c1p", "c2", "c3", "c4"},
                                 {
                                     "[c2,c4]",
                                     "[c1p,c3]",
                                     "c1p*c2*c1p = c2*c1p*c2",
                                     "c3*c2*c3 = c2*c3*c2",
                                     "c3*c4*c3 = c4*c3*c4",
                                     "(c2*c1p*c3*c4)^2",
                                 },
                                 {"stated presentation of the symplectic octic group"});
}

Presentation g2() {
  return Presentation::from_text({"x", "y", "z"}, {"[x,z]", "x*y*x = y*x*y", "y*z*y = z*y*z", "(x*y^2*z)^2"},
                                 {"stated presentation of the involutive octic group"});
}

Presentation cremona24() {
  return quotient_by_relations(gsdl(), std::vector<std::string>{"l1*l2^-1", "l1*linf^-1", "l1^2"},
                               "Cremona quotient: l1 = l2 = linf = l, l^2 = 1");
}

OrbifoldMap g_orb22_kummer_map() {
  return {{2, 2}, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 1}, {1, 1}}};
}

std::vector<std::string> names() { return {"gdl", "gsdl", "g0", "g_orb22", "g_symp", "g2", "cremona24"}; }

Presentation by_name(const std::string& name) {
  if (name == "gdl") return gdl();
  if (name == "gdl_printed") return gdl_printed();
  if (name == "gsdl") return gsdl();
  if (name == "g0") return g0();
  if (name == "g_orb22") return g_orb22();
  if (name == "g_symp") return g_symp();
  if (name == "g2") return g2();
  if (name == "cremona24") return cremona24();
  throw GroupError("unknown group '" + name + "'");
}

bool same_relators(const Presentation& a, const Presentation& b) {
  if (a.generators != b.generators) return false;
  auto canon = [](const Presentation& p) {
    std::vector<Word> out;
    for (const auto& r : p.relators) out.push_back(canonical_relator(r));
    std::sort(out.begin(), out.end());
    return out;
  };
  return canon(a) == canon(b);
}

}  // namespace octic::corpus
