#include "doctest.h"

#include "nilcyl/words.hpp"

#include <random>

using namespace nilcyl;

TEST_CASE("generator order and letters") {
  Signature sig(1, 3);
  CHECK(sig.rank() == 4);
  CHECK(Generator{GenKind::X, 2}.letter(sig) == 1);
  CHECK(Generator{GenKind::M, 1}.letter(sig) == 2);
  CHECK(Generator{GenKind::L, 1}.letter(sig) == 3);
  CHECK(Generator::from_letter(sig, 3).name() == "l1");
}

TEST_CASE("parse and print") {
  Signature sig(1, 3);
  CHECK(print_word(parse_word(sig, "")) == "");
  CHECK(parse_word(sig, "   ").is_identity());
  CHECK(print_word(parse_word(sig, "x1 x2^-3 m1^2 l1")) == "x1 x2^-3 m1^2 l1");
  CHECK(print_word(parse_word(sig, "x1 x1^-1")) == "");
  CHECK(print_word(parse_word(sig, "x1^2 x1^3")) == "x1^5");
  CHECK(print_word(parse_word(sig, "x1^+2")) == "x1^2");
  Word big = parse_word(sig, "m1^123456789012345678901234567890");
  CHECK(big.syllables()[0].exp == Integer("123456789012345678901234567890"));
  CHECK(print_word(big) == "m1^123456789012345678901234567890");
}

TEST_CASE("parse errors carry positions") {
  Signature sig(0, 3);
  auto pos_of = [&](const char *s) -> long {
    try {
      parse_word(sig, s);
    } catch (const ParseError &e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(pos_of("x3") == 0);
  CHECK(pos_of("x1 m1") == 3);
  CHECK(pos_of("x1 y2") == 3);
  CHECK(pos_of("x1^") == 3);
  CHECK(pos_of("x1^a") == 3);
  CHECK(pos_of("x1x2") == 2);
  CHECK(pos_of("x") == 1);
  CHECK(pos_of("x0") == 0);
}

TEST_CASE("commutator and boundary words") {
  Signature sig(1, 2);
  Word m = Word::letter(sig, sig.m(1));
  Word l = Word::letter(sig, sig.l(1));
  CHECK(print_word(commutator(m, l)) == "m1^-1 l1^-1 m1 l1");
  CHECK(print_word(boundary_word(sig)) == "x1 m1^-1 l1^-1 m1 l1");
  CHECK(print_word(boundary_word(Signature(0, 1))) == "");
}

TEST_CASE("inverse, powers and exponent sums") {
  Signature sig(0, 4);
  Word w = parse_word(sig, "x1 x2^-2 x3");
  CHECK((w * w.inverse()).is_identity());
  CHECK(print_word(w.pow(-2)) == "x3^-1 x2^2 x1^-1 x3^-1 x2^2 x1^-1");
  CHECK(w.pow(0).is_identity());
  CHECK(w.exponent_sum(1) == -2);
}

TEST_CASE("random round trip") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Signature sig(static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 4));
    if (sig.rank() == 0)
      continue;
    Word w(sig);
    const int len = static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i)
      w.push(static_cast<int>(rng() % sig.rank()),
             static_cast<long>(rng() % 7) - 3);
    CHECK(parse_word(sig, print_word(w)) == w);
    for (std::size_t i = 1; i < w.size(); ++i)
      CHECK(w.syllables()[i].letter != w.syllables()[i - 1].letter);
  }
}
