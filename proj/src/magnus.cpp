#include "nilcyl/magnus.hpp"

#include <algorithm>

namespace nilcyl {

namespace {

void check_sig(const Signature &sig, int bound) {
  if (sig.rank() > Monomial::kMaxLetters)
    throw std::invalid_argument("Magnus ring supports at most 16 generators");
  if (bound < 0 || bound > Monomial::kMaxDegree)
    throw std::invalid_argument("truncation bound must lie in [0, 14]");
}

} // namespace

Monomial Monomial::from_letters(const std::vector<int> &letters) {
  if (static_cast<int>(letters.size()) > kMaxDegree)
    throw std::invalid_argument("monomial degree too large");
  std::uint64_t key = static_cast<std::uint64_t>(letters.size()) << 56;
  for (std::size_t i = 0; i < letters.size(); ++i)
    key |= static_cast<std::uint64_t>(letters[i]) << (4 * (13 - i));
  return raw(key);
}

std::vector<int> Monomial::letters() const {
  std::vector<int> out(degree());
  for (int i = 0; i < degree(); ++i)
    out[i] = letter(i);
  return out;
}

Monomial Monomial::operator*(const Monomial &o) const {
  const int d = degree();
  const int e = o.degree();
  constexpr std::uint64_t body = (std::uint64_t{1} << 56) - 1;
  std::uint64_t letters = (key_ & body) | ((o.key_ & body) >> (4 * d));
  return raw((static_cast<std::uint64_t>(d + e) << 56) | letters);
}

TruncatedSeries::TruncatedSeries(Signature sig, int bound)
    : sig_(sig), bound_(bound) {
  check_sig(sig, bound);
}

TruncatedSeries TruncatedSeries::one(Signature sig, int bound) {
  TruncatedSeries s(sig, bound);
  s.terms_.emplace(Monomial(), 1);
  return s;
}

TruncatedSeries TruncatedSeries::variable(Signature sig, int bound,
                                          int letter) {
  TruncatedSeries s(sig, bound);
  if (bound >= 1)
    s.terms_.emplace(Monomial::from_letters({letter}), 1);
  return s;
}

Integer TruncatedSeries::coeff(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void TruncatedSeries::add_term(Monomial m, const Integer &c) {
  if (m.degree() > bound_ || c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

void TruncatedSeries::check_compatible(const TruncatedSeries &o) const {
  if (!(sig_ == o.sig_))
    throw std::invalid_argument("series over different signatures");
  if (bound_ != o.bound_)
    throw std::invalid_argument("series truncated at different bounds");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries &o) const {
  check_compatible(o);
  TruncatedSeries r = *this;
  for (const auto &[m, c] : o.terms_)
    r.add_term(m, c);
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries &o) const {
  check_compatible(o);
  TruncatedSeries r = *this;
  for (const auto &[m, c] : o.terms_)
    r.add_term(m, -c);
  return r;
}

TruncatedSeries TruncatedSeries::operator-() const { return scaled(-1); }

TruncatedSeries TruncatedSeries::scaled(const Integer &c) const {
  TruncatedSeries r(sig_, bound_);
  if (c == 0)
    return r;
  for (const auto &[m, v] : terms_)
    r.terms_.emplace_hint(r.terms_.end(), m, v * c);
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries &o) const {
  check_compatible(o);
  TruncatedSeries r(sig_, bound_);
  Integer prod;
  for (const auto &[ma, ca] : terms_) {
    const int room = bound_ - ma.degree();
    for (const auto &[mb, cb] : o.terms_) {
      if (mb.degree() > room)
        break;
      mpz_mul(prod.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      auto [it, inserted] = r.terms_.try_emplace(ma * mb, prod);
      if (!inserted)
        it->second += prod;
    }
  }
  std::erase_if(r.terms_, [](const auto &kv) { return kv.second == 0; });
  return r;
}

TruncatedSeries TruncatedSeries::inverse() const { return pow(-1); }

TruncatedSeries TruncatedSeries::pow(const Integer &e) const {
  if (coeff(Monomial()) != 1)
    throw std::invalid_argument("power of a series needs constant term 1");
  // (1+N)^e = sum_j binom(e,j) N^j, and N^j vanishes past the bound.
  TruncatedSeries nil = *this - one(sig_, bound_);
  TruncatedSeries result = one(sig_, bound_);
  TruncatedSeries power = one(sig_, bound_);
  for (int j = 1; j <= bound_; ++j) {
    power = power * nil;
    if (power.is_zero())
      break;
    const Integer b = binomial(e, j);
    if (b != 0)
      result = result + power.scaled(b);
  }
  return result;
}

TruncatedSeries TruncatedSeries::homogeneous(int degree) const {
  TruncatedSeries r(sig_, bound_);
  for (const auto &[m, c] : terms_)
    if (m.degree() == degree)
      r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

int TruncatedSeries::unit_depth() const {
  for (const auto &[m, c] : terms_) {
    if (m.degree() == 0) {
      if (c != 1)
        return 0;
      continue;
    }
    return m.degree();
  }
  if (coeff(Monomial()) != 1)
    return 0;
  return bound_ + 1;
}

bool TruncatedSeries::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.degree() == 0 &&
         terms_.begin()->second == 1;
}

TruncatedSeries TruncatedSeries::truncated(int bound) const {
  TruncatedSeries r(sig_, bound);
  for (const auto &[m, c] : terms_)
    if (m.degree() <= bound)
      r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

std::string print_monomial(const Signature &sig, Monomial m) {
  if (m.degree() == 0)
    return "1";
  std::string out;
  for (int l : m.letters())
    out += Generator::from_letter(sig, l).upper_name();
  return out;
}

std::string print_series(const TruncatedSeries &s) {
  if (s.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const auto &[m, c] : s.terms()) {
    const bool neg = c < 0;
    const Integer a = abs(c);
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (m.degree() == 0)
      out += a.get_str();
    else {
      if (a != 1)
        out += a.get_str() + "*";
      out += print_monomial(s.sig(), m);
    }
  }
  return out;
}

namespace {

std::vector<Integer> syllable_binomials(const Integer &e, int D) {
  std::vector<Integer> b;
  for (int j = 0; j <= D; ++j)
    b.push_back(binomial(e, j));
  return b;
}

TruncatedSeries expand_sparse(const Word &w, int D) {
  TruncatedSeries s = TruncatedSeries::one(w.sig(), D);
  for (const auto &syl : w.syllables()) {
    // multiply on the right by (1+X)^e = sum_j binom(e,j) X^j
    const std::vector<Integer> binoms = syllable_binomials(syl.exp, D);
    std::vector<Monomial> powers{Monomial()};
    for (int j = 1; j <= D; ++j)
      powers.push_back(powers.back() * Monomial::from_letters({syl.letter}));
    TruncatedSeries next(w.sig(), D);
    for (const auto &[m, c] : s.terms())
      for (int j = 0; j + m.degree() <= D; ++j)
        next.add_term(m * powers[j], c * binoms[j]);
    s = std::move(next);
  }
  return s;
}

constexpr std::size_t kDenseLimit = std::size_t{1} << 18;

} // namespace

TruncatedSeries expand(const Word &w, int D) {
  const Signature &sig = w.sig();
  check_sig(sig, D);
  const std::size_t r = static_cast<std::size_t>(sig.rank());
  // offset[d] = first index of degree d; within a degree, letters are
  // base-r digits with the first letter most significant
  std::vector<std::size_t> offset{0}, width{1};
  for (int d = 0; d <= D && offset.back() <= kDenseLimit; ++d) {
    offset.push_back(offset.back() + width.back());
    width.push_back(width.back() * std::max<std::size_t>(r, 1));
  }
  if (r == 0 || offset.back() > kDenseLimit)
    return expand_sparse(w, D);

  std::vector<Integer> c(offset[D + 1]);
  c[0] = 1;
  Integer prod;
  for (const auto &syl : w.syllables()) {
    const std::vector<Integer> b = syllable_binomials(syl.exp, D);
    const std::size_t a = static_cast<std::size_t>(syl.letter);
    for (int d = D; d >= 1; --d)
      for (std::size_t q = 0; q < width[d - 1]; ++q) {
        std::size_t idx = q * r + a; // monomial ending in a
        Integer &target = c[offset[d] + idx];
        for (int j = 1; j <= d; ++j) {
          idx /= r;
          const Integer &src = c[offset[d - j] + idx];
          if (sgn(src) != 0 && sgn(b[j]) != 0) {
            mpz_mul(prod.get_mpz_t(), src.get_mpz_t(), b[j].get_mpz_t());
            target += prod;
          }
          if (j < d && idx % r != a)
            break;
        }
      }
  }

  TruncatedSeries s(sig, D);
  std::vector<int> letters;
  for (int d = 0; d <= D; ++d)
    for (std::size_t idx = 0; idx < width[d]; ++idx) {
      const Integer &v = c[offset[d] + idx];
      if (sgn(v) == 0)
        continue;
      letters.assign(d, 0);
      std::size_t t = idx;
      for (int p = d - 1; p >= 0; --p) {
        letters[p] = static_cast<int>(t % r);
        t /= r;
      }
      s.terms_.emplace_hint(s.terms_.end(), Monomial::from_letters(letters), v);
    }
  return s;
}

Depth depth(const Word &w, int D) {
  const int d = expand(w, D).unit_depth();
  return {d, d == D + 1};
}

bool equal_mod(const Word &a, const Word &b, int k) {
  if (k <= 1)
    return true;
  return expand(a, k - 1) == expand(b, k - 1);
}

TruncatedSeries leading_part(const Word &w, int k) {
  const TruncatedSeries s = expand(w, k);
  if (s.unit_depth() < k)
    throw DepthTooSmall("word has depth below " + std::to_string(k));
  return s.homogeneous(k);
}

} // namespace nilcyl
