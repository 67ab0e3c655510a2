#pragma once

#include <string>
#include <utility>
#include <vector>

#include "octic/words.hpp"

namespace octic {

// Word in the Artin generators sigma_1..sigma_{n-1}; letter +i is sigma_i, -i its inverse.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  BraidWord() = default;
  BraidWord(int n, std::vector<int> l);  // validates 1 <= |i| <= n-1
  BraidWord inverse() const;
  BraidWord operator*(const BraidWord& o) const;
  BraidWord pow(int e) const;
};

// Right action of a braid on the free group F_n = <x_1..x_n> (generators 0..n-1 of the word).
// sigma_i sends x_i to x_i x_{i+1} x_i^-1 and x_{i+1} to x_i; letters act left to right, so
// (sigma_2 sigma_1)^2 sends x_3 to x_1 x_2 x_1^-1.
Word artin_act(const BraidWord& b, const Word& w, int n);

struct LineBraid {
  std::string name;
  BraidWord braid;
};

// Generators c1..cn followed by one generator per line (and l_inf when requested); relators
// l^-1 c_i l (c_i . tau)^-1, plus c1...cn l_1 ... l_k l_inf when `infinity` is set.
Presentation zvk_presentation(int n, const std::vector<LineBraid>& lines, bool infinity,
                              const std::string& infinity_name = "linf");

// Word problem in G0 = B3 * B3 on generators c1..c4 (braid relations c1c2c1=c2c1c2, c3c4c3=c4c3c4),
// via syllable reduction with the reduced Burau representation on each factor.
bool g0_is_trivial(const Word& w);
bool g0_equal(const Word& a, const Word& b);

struct G0Check {
  int index;  // 1-based i
  Word left, right;
  bool equal;
};
// c_i^{tau1 tau2} = c_i^{tau2 tau1} in G0 for i = 1..4.
std::vector<G0Check> g0_commutation_checks(const BraidWord& tau1, const BraidWord& tau2);
bool verify_g0_relations();
bool verify_g0_relations(const BraidWord& tau1, const BraidWord& tau2);

// (sigma_2 sigma_1)^2 and (sigma_2 sigma_3)^2 on four strands.
BraidWord deltoid_tau1();
BraidWord deltoid_tau2();

}  // namespace octic
