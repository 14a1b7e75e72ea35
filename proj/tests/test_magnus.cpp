#include "doctest.h"

#include "nilcyl/magnus.hpp"

#include <map>
#include <random>

using namespace nilcyl;

namespace {

// Independent reference: noncommutative polynomials keyed by letter strings.
using Ref = std::map<std::string, long>;

Ref ref_mul(const Ref &a, const Ref &b, int D) {
  Ref r;
  for (const auto &[ma, ca] : a)
    for (const auto &[mb, cb] : b)
      if (static_cast<int>(ma.size() + mb.size()) <= D)
        r[ma + mb] += ca * cb;
  std::erase_if(r, [](const auto &kv) { return kv.second == 0; });
  return r;
}

Ref ref_letter(int letter, int e, int D) {
  // (1+X)^e via repeated multiplication by 1+X or 1-X+X^2-...
  std::string x(1, static_cast<char>('a' + letter));
  Ref one{{"", 1}};
  Ref step = one;
  if (e > 0)
    step[x] = 1;
  else {
    std::string p;
    for (int j = 1; j <= D; ++j) {
      p += x;
      step[p] = (j % 2) ? -1 : 1;
    }
  }
  Ref r = one;
  for (int i = 0; i < std::abs(e); ++i)
    r = ref_mul(r, step, D);
  return r;
}

Ref ref_expand(const Word &w, int D) {
  Ref r{{"", 1}};
  for (const auto &s : w.syllables())
    r = ref_mul(r, ref_letter(s.letter, static_cast<int>(s.exp.get_si()), D), D);
  return r;
}

Ref to_ref(const TruncatedSeries &s) {
  Ref r;
  for (const auto &[m, c] : s.terms()) {
    std::string k;
    for (int l : m.letters())
      k += static_cast<char>('a' + l);
    r[k] = c.get_si();
  }
  return r;
}

} // namespace

TEST_CASE("monomial ordering is degree then lexicographic") {
  auto a = Monomial::from_letters({1});
  auto b = Monomial::from_letters({0, 1});
  auto c = Monomial::from_letters({1, 0});
  CHECK(Monomial() < a);
  CHECK(a < b);
  CHECK(b < c);
  CHECK((a * b).letters() == std::vector<int>{1, 0, 1});
}

TEST_CASE("expansions of commutators") {
  Signature sig(0, 3);
  CHECK(print_series(expand(parse_word(sig, "x1^-1 x2^-1 x1 x2"), 2)) ==
        "1 + X1X2 - X2X1");
  CHECK(print_series(expand(parse_word(sig, "x1^-1"), 2)) == "1 - X1 + X1X1");
  CHECK(print_series(expand(parse_word(sig, ""), 3)) == "1");
  CHECK(print_series(expand(parse_word(sig, "x1^3"), 2)) ==
        "1 + 3*X1 + 3*X1X1");
}

TEST_CASE("depth and leading part") {
  Signature sig(0, 3);
  Word c = parse_word(sig, "x1^-1 x2^-1 x1 x2");
  auto d = depth(c, 4);
  CHECK(d.value == 2);
  CHECK_FALSE(d.at_least);
  auto d1 = depth(Word(sig), 3);
  CHECK(d1.value == 4);
  CHECK(d1.at_least);
  CHECK(print_series(leading_part(c, 2)) == "X1X2 - X2X1");
  CHECK_THROWS_AS(leading_part(c, 3), DepthTooSmall);
  CHECK(equal_mod(c, Word(sig), 2));
  CHECK_FALSE(equal_mod(c, Word(sig), 3));
}

TEST_CASE("mixed bounds are rejected") {
  Signature sig(0, 3);
  auto a = expand(parse_word(sig, "x1"), 2);
  auto b = expand(parse_word(sig, "x1"), 3);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("expand agrees with reference and is a homomorphism") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Signature sig(static_cast<int>(rng() % 2), 2 + static_cast<int>(rng() % 2));
    const int D = 1 + static_cast<int>(rng() % 4);
    auto rand_word = [&] {
      Word w(sig);
      for (int i = 0, len = static_cast<int>(rng() % 6); i < len; ++i)
        w.push(static_cast<int>(rng() % sig.rank()),
               static_cast<long>(rng() % 5) - 2);
      return w;
    };
    Word u = rand_word(), v = rand_word();
    CHECK(to_ref(expand(u, D)) == ref_expand(u, D));
    CHECK(expand(u * v, D) == expand(u, D) * expand(v, D));
    CHECK((expand(u, D) * expand(u.inverse(), D)).is_one());
    CHECK(expand(u, D).inverse() == expand(u.inverse(), D));
    CHECK(expand(u, D).pow(-3) == expand(u.pow(-3), D));
  }
}
