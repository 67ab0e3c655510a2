#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace octic {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Letters are +(i+1) for generator i and -(i+1) for its inverse.
using Letter = int;

inline int generator_of(Letter a) { return (a > 0 ? a : -a) - 1; }
inline Letter letter(int generator, int exponent = 1) { return exponent > 0 ? generator + 1 : -(generator + 1); }

// Freely reduced word in a free group.
class Word {
 public:
  Word() = default;
  Word(std::vector<Letter> letters);  // NOLINT: reduces
  Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}
  static Word generator(int index, int exponent = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  Word inverse() const;
  Word pow(int e) const;
  Word& operator*=(const Word& o);
  friend Word operator*(Word a, const Word& b) { return a *= b; }
  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b) { return a.letters_ < b.letters_; }

  // Exponent sum of each generator, sized to `ngens`.
  std::vector<long> exponent_sums(std::size_t ngens) const;
  int occurrences(int generator) const;
  int max_generator() const;  // -1 for the empty word

 private:
  std::vector<Letter> letters_;
};

Word commutator(const Word& a, const Word& b);  // a^-1 b^-1 a b
Word conjugate(const Word& w, const Word& by);  // by^-1 w by
Word cyclic_reduce(const Word& w);
// Minimum over cyclic permutations of w and w^-1, after cyclic reduction; equal for relators
// that define the same normal-closure generator up to conjugation and inversion.
Word canonical_relator(const Word& w);

// Group word text: products of names with optional ^k (k any integer), e.g. "l2^-1*c4*l2*c2^-1".
// Parentheses and commutators [a,b] are accepted.
Word parse_word(std::string_view text, const std::vector<std::string>& generators);
std::string format_word(const Word& w, const std::vector<std::string>& generators);

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::vector<std::string> notes;

  Presentation() = default;
  Presentation(std::vector<std::string> gens, std::vector<Word> rels = {}, std::vector<std::string> notes_ = {});
  // Relators given as text over the generator names.
  static Presentation from_text(std::vector<std::string> gens, const std::vector<std::string>& rels,
                                std::vector<std::string> notes_ = {});

  std::size_t ngens() const { return generators.size(); }
  int index_of(const std::string& name) const;  // throws on unknown names
  Word parse(std::string_view text) const { return parse_word(text, generators); }
  std::string format(const Word& w) const { return format_word(w, generators); }
  std::vector<std::string> relator_strings() const;
  std::size_t total_length() const;
  void validate() const;
};

Presentation quotient_by_relations(const Presentation& p, const std::vector<Word>& extra, const std::string& note);
Presentation quotient_by_relations(const Presentation& p, const std::vector<std::string>& extra,
                                   const std::string& note);

}  // namespace octic
