#include "octic/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace octic {

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (Letter a : letters) {
    if (a == 0) throw GroupError("zero letter in word");
    if (!letters_.empty() && letters_.back() == -a) {
      letters_.pop_back();
    } else {
      letters_.push_back(a);
    }
  }
}

Word Word::generator(int index, int exponent) {
  std::vector<Letter> l(static_cast<std::size_t>(std::abs(exponent)), letter(index, exponent > 0 ? 1 : -1));
  return Word(std::move(l));
}

Word Word::inverse() const {
  Word r;
  r.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(-*it);
  return r;
}

Word Word::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Word r;
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

Word& Word::operator*=(const Word& o) {
  std::size_t k = 0;
  while (k < o.letters_.size() && !letters_.empty() && letters_.back() == -o.letters_[k]) {
    letters_.pop_back();
    ++k;
  }
  letters_.insert(letters_.end(), o.letters_.begin() + static_cast<std::ptrdiff_t>(k), o.letters_.end());
  return *this;
}

std::vector<long> Word::exponent_sums(std::size_t ngens) const {
  std::vector<long> s(ngens, 0);
  for (Letter a : letters_) {
    const auto g = static_cast<std::size_t>(generator_of(a));
    if (g >= ngens) throw GroupError("generator index out of range");
    s[g] += a > 0 ? 1 : -1;
  }
  return s;
}

int Word::occurrences(int generator) const {
  return static_cast<int>(
      std::count_if(letters_.begin(), letters_.end(), [&](Letter a) { return generator_of(a) == generator; }));
}

int Word::max_generator() const {
  int m = -1;
  for (Letter a : letters_) m = std::max(m, generator_of(a));
  return m;
}

Word commutator(const Word& a, const Word& b) { return a.inverse() * b.inverse() * a * b; }

Word conjugate(const Word& w, const Word& by) { return by.inverse() * w * by; }

Word cyclic_reduce(const Word& w) {
  const auto& l = w.letters();
  std::size_t i = 0, j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  return Word(std::vector<Letter>(l.begin() + static_cast<std::ptrdiff_t>(i), l.begin() + static_cast<std::ptrdiff_t>(j)));
}

Word canonical_relator(const Word& w) {
  Word r = cyclic_reduce(w);
  if (r.empty()) return r;
  std::vector<Letter> best;
  for (const Word& v : {r, r.inverse()}) {
    const auto& l = v.letters();
    const std::size_t n = l.size();
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<Letter> rot(n);
      for (std::size_t k = 0; k < n; ++k) rot[k] = l[(s + k) % n];
      if (best.empty() || rot < best) best = std::move(rot);
    }
  }
  return Word(std::move(best));
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const std::vector<std::string>& gens) : text_(text), gens_(gens) {}

  Word parse_all() {
    Word w = parse_product();
    skip();
    if (pos_ < text_.size() && text_[pos_] == '=') {
      ++pos_;
      Word rhs = parse_product();
      w = w * rhs.inverse();
    }
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw GroupError(what + " at position " + std::to_string(pos_) + " in word '" + std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_factor_start() {
    skip();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == '[' || c == '_' || std::isalnum(static_cast<unsigned char>(c));
  }

  Word parse_product() {
    Word w = parse_power();
    for (;;) {
      skip();
      if (pos_ < text_.size() && (text_[pos_] == '*' || text_[pos_] == '.')) {
        ++pos_;
        w *= parse_power();
      } else if (at_factor_start()) {
        w *= parse_power();  // juxtaposition
      } else {
        return w;
      }
    }
  }

  Word parse_power() {
    Word base = parse_atom();
    skip();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip();
      int sign = 1;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
      }
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("missing exponent");
      return base.pow(sign * std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  Word parse_atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = parse_product();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word a = parse_product();
      expect(',');
      Word b = parse_product();
      expect(']');
      return commutator(a, b);
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
      ++pos_;
    if (start == pos_) fail("expected generator");
    std::string name(text_.substr(start, pos_ - start));
    if (name == "1") return Word();
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i] == name) return Word::generator(static_cast<int>(i));
    fail("unknown generator '" + name + "'");
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view text_;
  const std::vector<std::string>& gens_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& generators) {
  return WordParser(text, generators).parse_all();
}

std::string format_word(const Word& w, const std::vector<std::string>& generators) {
  if (w.empty()) return "1";
  std::ostringstream out;
  const auto& l = w.letters();
  for (std::size_t i = 0; i < l.size();) {
    std::size_t j = i;
    while (j < l.size() && l[j] == l[i]) ++j;
    const int g = generator_of(l[i]);
    if (g >= static_cast<int>(generators.size())) throw GroupError("generator index out of range");
    if (i > 0) out << "*";
    out << generators[static_cast<std::size_t>(g)];
    const long e = static_cast<long>(j - i) * (l[i] > 0 ? 1 : -1);
    if (e != 1) out << "^" << e;
    i = j;
  }
  return out.str();
}

Presentation::Presentation(std::vector<std::string> gens, std::vector<Word> rels, std::vector<std::string> notes_)
    : generators(std::move(gens)), relators(std::move(rels)), notes(std::move(notes_)) {
  validate();
}

Presentation Presentation::from_text(std::vector<std::string> gens, const std::vector<std::string>& rels,
                                     std::vector<std::string> notes_) {
  std::vector<Word> words;
  for (const auto& r : rels) words.push_back(parse_word(r, gens));
  return Presentation(std::move(gens), std::move(words), std::move(notes_));
}

int Presentation::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return static_cast<int>(i);
  throw GroupError("unknown generator '" + name + "'");
}

std::vector<std::string> Presentation::relator_strings() const {
  std::vector<std::string> out;
  for (const auto& r : relators) out.push_back(format(r));
  return out;
}

std::size_t Presentation::total_length() const {
  std::size_t n = 0;
  for (const auto& r : relators) n += r.length();
  return n;
}

void Presentation::validate() const {
  std::set<std::string> seen;
  for (const auto& g : generators)
    if (!seen.insert(g).second) throw GroupError("duplicate generator '" + g + "'");
  for (const auto& r : relators)
    if (r.max_generator() >= static_cast<int>(generators.size()))
      throw GroupError("relator uses a generator outside the presentation");
}

Presentation quotient_by_relations(const Presentation& p, const std::vector<Word>& extra, const std::string& note) {
  Presentation q = p;
  for (const auto& w : extra) {
    if (w.max_generator() >= static_cast<int>(p.ngens())) throw GroupError("unknown generator in extra relator");
    if (!w.empty()) q.relators.push_back(w);
  }
  if (!note.empty()) q.notes.push_back(note);
  return q;
}

Presentation quotient_by_relations(const Presentation& p, const std::vector<std::string>& extra,
                                   const std::string& note) {
  std::vector<Word> words;
  for (const auto& s : extra) words.push_back(p.parse(s));
  return quotient_by_relations(p, words, note);
}

}  // namespace octic
