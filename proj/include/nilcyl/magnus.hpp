#pragma once

#include "nilcyl/words.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nilcyl {

// Noncommutative monomial packed into 64 bits: degree in the top byte,
// then one nibble per letter, first letter most significant. Comparing
// keys as integers gives degree-then-lexicographic order.
class Monomial {
public:
  static constexpr int kMaxDegree = 14;
  static constexpr int kMaxLetters = 16;

  constexpr Monomial() = default;
  static Monomial from_letters(const std::vector<int> &letters);
  static constexpr Monomial raw(std::uint64_t key) {
    Monomial m;
    m.key_ = key;
    return m;
  }

  int degree() const { return static_cast<int>(key_ >> 56); }
  int letter(int pos) const {
    return static_cast<int>((key_ >> (4 * (13 - pos))) & 0xF);
  }
  std::vector<int> letters() const;
  std::uint64_t key() const { return key_; }

  Monomial operator*(const Monomial &o) const;

  auto operator<=>(const Monomial &) const = default;

private:
  std::uint64_t key_ = 0;
};

class DepthTooSmall : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Element of Z<<X>> truncated above degree `bound`.
class TruncatedSeries {
public:
  using Terms = std::map<Monomial, Integer>;

  TruncatedSeries() = default;
  TruncatedSeries(Signature sig, int bound);

  static TruncatedSeries one(Signature sig, int bound);
  static TruncatedSeries variable(Signature sig, int bound, int letter);

  const Signature &sig() const { return sig_; }
  int bound() const { return bound_; }
  const Terms &terms() const { return terms_; }

  Integer coeff(Monomial m) const;
  void add_term(Monomial m, const Integer &c);

  TruncatedSeries operator+(const TruncatedSeries &o) const;
  TruncatedSeries operator-(const TruncatedSeries &o) const;
  TruncatedSeries operator*(const TruncatedSeries &o) const;
  TruncatedSeries operator-() const;
  TruncatedSeries scaled(const Integer &c) const;

  // Only defined when the constant term is 1.
  TruncatedSeries inverse() const;
  TruncatedSeries pow(const Integer &e) const;

  // Component of the given degree.
  TruncatedSeries homogeneous(int degree) const;
  // Lowest degree carrying a nonzero term of (this - 1); bound+1 if none.
  int unit_depth() const;
  bool is_one() const;
  bool is_zero() const { return terms_.empty(); }

  TruncatedSeries truncated(int bound) const;

  bool operator==(const TruncatedSeries &o) const {
    return sig_ == o.sig_ && bound_ == o.bound_ && terms_ == o.terms_;
  }

private:
  friend TruncatedSeries expand(const Word &w, int D);
  void check_compatible(const TruncatedSeries &o) const;

  Signature sig_;
  int bound_ = 0;
  Terms terms_;
};

std::string print_series(const TruncatedSeries &s);
std::string print_monomial(const Signature &sig, Monomial m);

// Magnus image of w truncated above degree D.
TruncatedSeries expand(const Word &w, int D);

struct Depth {
  int value;
  bool at_least; // true when value = D+1 means "at least D+1"
};

Depth depth(const Word &w, int D);

// Whether a and b agree modulo the k-th lower central term.
bool equal_mod(const Word &a, const Word &b, int k);

// Degree-k component of expand(w) - 1; requires w to have depth >= k.
TruncatedSeries leading_part(const Word &w, int k);

} // namespace nilcyl
