#include "nilcyl/words.hpp"

#include <cctype>

namespace nilcyl {

Integer binomial(const Integer &n, unsigned k) {
  Integer num = 1;
  Integer den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

Signature::Signature(int g_, int n_) : g(g_), n(n_) {
  if (g < 0 || n < 1)
    throw std::invalid_argument("signature needs g >= 0 and n >= 1");
}

int Generator::letter(const Signature &sig) const {
  switch (kind) {
  case GenKind::X:
    return sig.x(index);
  case GenKind::M:
    return sig.m(index);
  case GenKind::L:
    return sig.l(index);
  }
  return -1;
}

Generator Generator::from_letter(const Signature &sig, int letter) {
  if (letter < 0 || letter >= sig.rank())
    throw std::out_of_range("letter out of range");
  if (letter < sig.n - 1)
    return {GenKind::X, letter + 1};
  letter -= sig.n - 1;
  if (letter < sig.g)
    return {GenKind::M, letter + 1};
  return {GenKind::L, letter - sig.g + 1};
}

std::string Generator::name() const {
  const char c = kind == GenKind::X ? 'x' : kind == GenKind::M ? 'm' : 'l';
  return c + std::to_string(index);
}

std::string Generator::upper_name() const {
  const char c = kind == GenKind::X ? 'X' : kind == GenKind::M ? 'M' : 'L';
  return c + std::to_string(index);
}

Word Word::letter(const Signature &sig, int letter, Integer exp) {
  if (letter < 0 || letter >= sig.rank())
    throw std::out_of_range("letter out of range");
  Word w(sig);
  w.push(letter, exp);
  return w;
}

Word Word::gen(const Signature &sig, Generator g, Integer exp) {
  return letter(sig, g.letter(sig), std::move(exp));
}

void Word::push(int letter, const Integer &exp) {
  if (exp == 0)
    return;
  if (!syl_.empty() && syl_.back().letter == letter) {
    syl_.back().exp += exp;
    if (syl_.back().exp == 0)
      syl_.pop_back();
    return;
  }
  syl_.push_back({letter, exp});
}

void Word::append(const Word &w) {
  if (!(w.sig_ == sig_))
    throw std::invalid_argument("word signatures differ");
  for (const auto &s : w.syl_)
    push(s.letter, s.exp);
}

Word Word::inverse() const {
  Word w(sig_);
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it)
    w.syl_.push_back({it->letter, -it->exp});
  return w;
}

Word Word::pow(const Integer &e) const {
  Word base = e < 0 ? inverse() : *this;
  Integer k = abs(e);
  Word out(sig_);
  if (base.syl_.size() == 1) {
    out.push(base.syl_[0].letter, base.syl_[0].exp * k);
    return out;
  }
  for (Integer i = 0; i < k; ++i)
    out.append(base);
  return out;
}

Integer Word::exponent_sum(int letter) const {
  Integer s = 0;
  for (const auto &x : syl_)
    if (x.letter == letter)
      s += x.exp;
  return s;
}

Word operator*(const Word &a, const Word &b) {
  Word w = a;
  w.append(b);
  return w;
}

Word commutator(const Word &a, const Word &b) {
  Word w = a.inverse();
  w.append(b.inverse());
  w.append(a);
  w.append(b);
  return w;
}

Word boundary_word(const Signature &sig) {
  Word w(sig);
  for (int i = 1; i < sig.n; ++i)
    w.push(sig.x(i), 1);
  for (int j = 1; j <= sig.g; ++j)
    w.append(commutator(Word::letter(sig, sig.m(j)),
                        Word::letter(sig, sig.l(j))));
  return w;
}

Word parse_word(const Signature &sig, std::string_view text) {
  Word w(sig);
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  auto read_digits = [&](std::size_t start) {
    std::size_t j = start;
    while (j < n && std::isdigit(static_cast<unsigned char>(text[j])))
      ++j;
    return j;
  };
  skip_ws();
  while (i < n) {
    const std::size_t tok = i;
    GenKind kind;
    switch (text[i]) {
    case 'x':
      kind = GenKind::X;
      break;
    case 'm':
      kind = GenKind::M;
      break;
    case 'l':
      kind = GenKind::L;
      break;
    default:
      throw ParseError("expected generator x<i>, m<j> or l<j>", i);
    }
    ++i;
    std::size_t end = read_digits(i);
    if (end == i)
      throw ParseError("expected generator index", i);
    if (end - i > 9)
      throw ParseError("generator index too large", i);
    const int idx = std::stoi(std::string(text.substr(i, end - i)));
    const int limit = kind == GenKind::X ? sig.n - 1 : sig.g;
    if (idx < 1 || idx > limit)
      throw ParseError("generator index out of range for signature (g=" +
                           std::to_string(sig.g) +
                           ", n=" + std::to_string(sig.n) + ")",
                       tok);
    i = end;
    Integer exp = 1;
    if (i < n && text[i] == '^') {
      ++i;
      std::size_t start = i;
      if (i < n && (text[i] == '-' || text[i] == '+'))
        ++i;
      end = read_digits(i);
      if (end == i)
        throw ParseError("expected integer exponent", i);
      std::string digits(text.substr(start, end - start));
      if (digits[0] == '+')
        digits.erase(0, 1);
      exp = Integer(digits);
      i = end;
    }
    if (i < n && !std::isspace(static_cast<unsigned char>(text[i])))
      throw ParseError("unexpected character", i);
    w.push(Generator{kind, idx}.letter(sig), exp);
    skip_ws();
  }
  return w;
}

std::string print_word(const Word &w) {
  std::string out;
  for (const auto &s : w.syllables()) {
    if (!out.empty())
      out += ' ';
    out += Generator::from_letter(w.sig(), s.letter).name();
    if (s.exp != 1)
      out += '^' + s.exp.get_str();
  }
  return out;
}

} // namespace nilcyl
