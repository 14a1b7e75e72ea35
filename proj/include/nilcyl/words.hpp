#pragma once

#include "nilcyl/integer.hpp"

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilcyl {

// Surface of genus g with n boundary components; the free group has rank
// r = 2g + n - 1 on x_1..x_{n-1}, m_1..m_g, l_1..l_g, in that order.
struct Signature {
  int g = 0;
  int n = 1;

  Signature() = default;
  Signature(int g_, int n_);

  int rank() const { return 2 * g + n - 1; }
  int num_x() const { return n - 1; }

  int x(int i) const { return i - 1; }
  int m(int j) const { return n - 1 + j - 1; }
  int l(int j) const { return n - 1 + g + j - 1; }

  bool operator==(const Signature &) const = default;
};

enum class GenKind { X, M, L };

struct Generator {
  GenKind kind;
  int index; // 1-based

  // Position in the fixed generator order.
  int letter(const Signature &sig) const;
  static Generator from_letter(const Signature &sig, int letter);

  std::string name() const;       // x1, m2, ...
  std::string upper_name() const; // X1, M2, ...
};

struct Syllable {
  int letter;
  Integer exp;

  bool operator==(const Syllable &o) const {
    return letter == o.letter && exp == o.exp;
  }
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &msg, std::size_t pos)
      : std::runtime_error(msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

// Reduced word in the free group. Adjacent syllables have distinct letters
// and no syllable has exponent zero.
class Word {
public:
  Word() = default;
  explicit Word(Signature sig) : sig_(sig) {}

  static Word letter(const Signature &sig, int letter, Integer exp = 1);
  static Word gen(const Signature &sig, Generator g, Integer exp = 1);

  const Signature &sig() const { return sig_; }
  const std::vector<Syllable> &syllables() const { return syl_; }
  bool is_identity() const { return syl_.empty(); }
  std::size_t size() const { return syl_.size(); }

  // Appends letter^exp, cancelling against the tail.
  void push(int letter, const Integer &exp);
  void append(const Word &w);

  Word inverse() const;
  Word pow(const Integer &e) const;

  // Sum of exponents of the given letter.
  Integer exponent_sum(int letter) const;

  bool operator==(const Word &o) const {
    return sig_ == o.sig_ && syl_ == o.syl_;
  }

private:
  Signature sig_;
  std::vector<Syllable> syl_;
};

Word operator*(const Word &a, const Word &b);
// [a,b] = a^-1 b^-1 a b
Word commutator(const Word &a, const Word &b);

// x1 ... x_{n-1} [m1,l1] ... [mg,lg]
Word boundary_word(const Signature &sig);

Word parse_word(const Signature &sig, std::string_view text);
std::string print_word(const Word &w);

} // namespace nilcyl
