#include "nilcyl/nilaut.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace nilcyl {

NilAut NilAut::identity(const Signature &sig, int level) {
  std::vector<Word> images;
  for (int g = 0; g < sig.rank(); ++g)
    images.push_back(Word::letter(sig, g));
  return from_images(sig, level, std::move(images));
}

NilAut NilAut::from_images(const Signature &sig, int level,
                           std::vector<Word> images) {
  if (level < 2)
    throw std::invalid_argument("nilpotent level must be at least 2");
  if (static_cast<int>(images.size()) != sig.rank())
    throw std::invalid_argument("need one image per generator");
  for (const auto &w : images)
    if (!(w.sig() == sig))
      throw std::invalid_argument("image word over another signature");
  return NilAut{sig, level, std::move(images)};
}

bool NilAut::same_as(const NilAut &o) const {
  if (!(sig == o.sig) || level != o.level)
    return false;
  for (int g = 0; g < sig.rank(); ++g)
    if (!equal_mod(images[g], o.images[g], level))
      return false;
  return true;
}

bool NilAut::is_identity() const {
  return same_as(identity(sig, level));
}

Substitution::Substitution(const NilAut &phi, int bound)
    : sig_(phi.sig), bound_(bound) {
  for (int g = 0; g < sig_.rank(); ++g)
    nil_.push_back(expand(phi.images[g], bound) -
                   TruncatedSeries::one(sig_, bound));
}

TruncatedSeries Substitution::apply(const Word &w) const {
  return apply(expand(w, bound_));
}

TruncatedSeries Substitution::apply(const TruncatedSeries &s) const {
  // Walk the monomials in letter order so that shared prefixes are
  // multiplied out once.
  std::vector<std::pair<std::vector<int>, Integer>> terms;
  for (const auto &[m, c] : s.terms())
    if (m.degree() <= bound_)
      terms.emplace_back(m.letters(), c);
  std::sort(terms.begin(), terms.end());
  std::vector<int> path;
  std::vector<TruncatedSeries> stack{TruncatedSeries::one(sig_, bound_)};
  TruncatedSeries out(sig_, bound_);
  for (const auto &[letters, c] : terms) {
    std::size_t common = 0;
    while (common < path.size() && common < letters.size() &&
           path[common] == letters[common])
      ++common;
    path.resize(common);
    stack.resize(common + 1);
    for (std::size_t p = common; p < letters.size(); ++p) {
      path.push_back(letters[p]);
      stack.push_back(stack.back() * nil_[letters[p]]);
    }
    out = out + stack.back().scaled(c);
  }
  return out;
}

Word collect(const TruncatedSeries &s) {
  const int D = s.bound();
  Word out(s.sig());
  TruncatedSeries cur = s;
  for (int d = 1; d <= D; ++d) {
    const int depth_now = cur.unit_depth();
    if (depth_now < d)
      throw std::invalid_argument("series is not group-like");
    if (depth_now > d)
      continue;
    const LieVector v = series_to_lie(cur.homogeneous(d), d);
    const Word c = lie_to_word(v);
    out.append(c);
    cur = expand(c.inverse(), D) * cur;
  }
  if (!cur.is_one())
    throw std::invalid_argument("series is not group-like");
  return out;
}

Word normalize(const Word &w, int level) {
  if (level <= 1)
    return Word(w.sig());
  return collect(expand(w, level - 1));
}

Word apply(const NilAut &phi, const Word &w) {
  return collect(Substitution(phi, phi.level - 1).apply(w));
}

NilAut compose(const NilAut &phi, const NilAut &psi) {
  if (!(phi.sig == psi.sig) || phi.level != psi.level)
    throw std::invalid_argument("composing automorphisms of different groups");
  Substitution sub(phi, phi.level - 1);
  std::vector<Word> images;
  for (const auto &w : psi.images)
    images.push_back(collect(sub.apply(w)));
  return NilAut::from_images(phi.sig, phi.level, std::move(images));
}

NilAut truncate(const NilAut &phi, int level) {
  if (level < 2 || level > phi.level)
    throw std::invalid_argument("truncation level out of range");
  std::vector<Word> images;
  for (const auto &w : phi.images)
    images.push_back(normalize(w, level));
  return NilAut::from_images(phi.sig, level, std::move(images));
}

IntMatrix abelianization(const NilAut &phi) {
  const int r = phi.sig.rank();
  IntMatrix A(r, r);
  for (int g = 0; g < r; ++g)
    for (int a = 0; a < r; ++a)
      A(a, g) = phi.images[g].exponent_sum(a);
  return A;
}

bool is_automorphism(const NilAut &phi) {
  return abs(determinant(abelianization(phi))) == 1;
}

namespace {

Word abelian_word(const Signature &sig, const IntVector &v) {
  Word w(sig);
  for (int a = 0; a < sig.rank(); ++a)
    w.push(a, v[a]);
  return w;
}

} // namespace

NilAut invert(const NilAut &phi) {
  if (!is_automorphism(phi))
    throw NotAutomorphism("abelianization is not unimodular");
  const Signature &sig = phi.sig;
  const int r = sig.rank();
  const int D = phi.level - 1;
  const IntMatrix A = abelianization(phi);
  std::vector<Word> base;
  for (int g = 0; g < r; ++g) {
    IntVector e(r);
    e[g] = 1;
    auto col = solve(A, e);
    if (!col)
      throw NotAutomorphism("abelianization is not invertible over Z");
    base.push_back(abelian_word(sig, *col));
  }
  const NilAut psi0 = NilAut::from_images(sig, phi.level, base);
  // chi = phi o psi0 is the identity on H; invert it by fixed-point
  // iteration rho <- rho * chi(rho)^-1 * g, gaining a degree per round.
  const NilAut chi = compose(phi, psi0);
  const Substitution sub(chi, D);
  NilAut rho = NilAut::identity(sig, phi.level);
  for (int round = 0; round < D; ++round) {
    std::vector<Word> next;
    for (int g = 0; g < r; ++g) {
      const TruncatedSeries err = sub.apply(rho.images[g]);
      next.push_back(collect(expand(rho.images[g], D) * err.inverse() *
                             expand(Word::letter(sig, g), D)));
    }
    rho.images = std::move(next);
  }
  NilAut inv = compose(psi0, rho);
  if (!compose(phi, inv).is_identity())
    throw std::logic_error("inverse failed verification");
  return inv;
}

TruncatedSeries boundary_defect(const Signature &sig,
                                const std::vector<Word> &images, int bound) {
  Word w(sig);
  for (int i = 1; i < sig.n; ++i)
    w.append(images[sig.x(i)]);
  for (int j = 1; j <= sig.g; ++j)
    w.append(commutator(images[sig.m(j)], images[sig.l(j)]));
  return expand(w, bound) * expand(boundary_word(sig).inverse(), bound);
}

namespace {

std::vector<Word> conjugation_images(const NilAut &phi,
                                     const std::vector<Word> &conj) {
  std::vector<Word> images = phi.images;
  for (int i = 1; i < phi.sig.n; ++i) {
    const int x = phi.sig.x(i);
    images[x] = conj[i - 1].inverse() * Word::letter(phi.sig, x) * conj[i - 1];
  }
  return images;
}

} // namespace

AutStarResult aut_star_membership(const NilAut &phi) {
  if (!is_automorphism(phi))
    throw NotAutomorphism("membership test needs an automorphism");
  const Signature &sig = phi.sig;
  const int l = phi.level;
  const int D = l - 1;
  std::vector<Word> conj;
  for (int i = 1; i < sig.n; ++i) {
    const int x = sig.x(i);
    const Word xw = Word::letter(sig, x);
    const TruncatedSeries target = expand(xw.inverse() * phi.images[x], D);
    if (target.unit_depth() < 2)
      return NotMember{NotMemberReason::XImageNotConjugate, x, 1};
    Word alpha(sig);
    for (int d = 1; d <= l - 2; ++d) {
      const TruncatedSeries err =
          target * expand(commutator(xw, alpha), D).inverse();
      if (err.unit_depth() < d + 1)
        throw std::logic_error("conjugator search lost a degree");
      if (err.unit_depth() > d + 1)
        continue;
      const LieVector v = series_to_lie(err.homogeneous(d + 1), d + 1);
      auto sol = ad_solver(sig, x, d).solve(v.coords);
      if (!sol)
        return NotMember{NotMemberReason::XImageNotConjugate, x, d + 1};
      alpha.append(lie_to_word(LieVector{sig, d, *sol}));
    }
    conj.push_back(alpha);
  }
  const TruncatedSeries xi =
      boundary_defect(sig, conjugation_images(phi, conj), l);
  const int dxi = xi.unit_depth();
  if (dxi < l)
    return NotMember{NotMemberReason::BoundaryObstruction, -1, dxi};
  AutStarCertificate cert;
  const int N = hall_set(sig.rank()).count(l - 1);
  IntVector sol(static_cast<std::size_t>((sig.n - 1) * N));
  if (dxi == l) {
    const LieVector v = series_to_lie(xi.homogeneous(l), l);
    auto s = alpha_pk_solver(sig, l - 1).solve((-v).coords);
    if (!s)
      return NotMember{NotMemberReason::BoundaryObstruction, -1, l};
    sol = *s;
  }
  for (int i = 1; i < sig.n; ++i) {
    LieVector a{sig, l - 1,
                IntVector(sol.begin() + (i - 1) * N, sol.begin() + i * N)};
    conj[i - 1].append(lie_to_word(a));
    cert.a.push_back(std::move(a));
  }
  for (int j = 1; j <= sig.g; ++j) {
    cert.b.push_back(LieVector::zero(sig, l));
    cert.c.push_back(LieVector::zero(sig, l));
  }
  cert.conjugators = conj;
  if (!boundary_defect(sig, conjugation_images(phi, conj), l).is_one())
    throw std::logic_error("certificate failed to fix the boundary");
  return cert;
}

NilAut certificate_lift(const NilAut &phi, const AutStarCertificate &cert) {
  return NilAut::from_images(phi.sig, phi.level + 1,
                             conjugation_images(phi, cert.conjugators));
}

bool is_aut_star(const NilAut &phi) {
  return std::holds_alternative<AutStarCertificate>(aut_star_membership(phi));
}

namespace {

void require_member(const NilAut &phi, int k) {
  if (k < 1 || k >= phi.level)
    throw std::invalid_argument("filter index must satisfy 1 <= k < level");
  if (!is_aut_star(phi))
    throw std::invalid_argument("automorphism does not fix the boundary class");
}

} // namespace

bool kfilter_member(const NilAut &phi, int k) {
  require_member(phi, k);
  for (int g = 0; g < phi.sig.rank(); ++g)
    if (!equal_mod(phi.images[g], Word::letter(phi.sig, g), k))
      return false;
  return true;
}

bool afilter_member(const NilAut &phi, int k) {
  if (!kfilter_member(phi, k))
    return false;
  for (int i = 1; i < phi.sig.n; ++i) {
    const int x = phi.sig.x(i);
    if (!equal_mod(phi.images[x], Word::letter(phi.sig, x), k + 1))
      return false;
  }
  return true;
}

GradedTuple theta(const NilAut &phi, int k) {
  if (k < 2 || phi.level != k + 2)
    throw std::invalid_argument("theta needs k >= 2 and level k+2");
  if (!afilter_member(phi, k))
    throw std::invalid_argument("automorphism is outside the filter term");
  const Signature &sig = phi.sig;
  GradedTuple t = GradedTuple::zero(sig, k);
  for (int j = 1; j <= sig.g; ++j) {
    const Word m = Word::letter(sig, sig.m(j));
    const Word l = Word::letter(sig, sig.l(j));
    t.beta(j) = series_to_lie(leading_part(m.inverse() * phi.image(sig.m(j)), k), k);
    t.gamma(j) = series_to_lie(leading_part(l.inverse() * phi.image(sig.l(j)), k), k);
  }
  for (int i = 1; i <= sig.n - 1; ++i) {
    const int x = sig.x(i);
    const Word xw = Word::letter(sig, x);
    const LieVector v =
        series_to_lie(leading_part(xw.inverse() * phi.image(x), k + 1), k + 1);
    auto sol = ad_solver(sig, x, k).solve(v.coords);
    if (!sol)
      throw AdSolveFailed("x-image is not a commutator with x");
    t.alpha(i) = LieVector{sig, k, *sol};
  }
  if (!pk_apply(t).is_zero())
    throw std::logic_error("theta left the kernel");
  return t;
}

NilAut realize(const GradedTuple &t) {
  const int k = t.degree;
  const Signature &sig = t.sig;
  if (k < 2)
    throw std::invalid_argument("realize needs degree >= 2");
  if (!pk_apply(t).is_zero())
    throw NotInKernel("tuple is not in the kernel");
  const int L = k + 2;
  auto build = [&](const GradedTuple *corr) {
    std::vector<Word> images(sig.rank());
    for (int i = 1; i < sig.n; ++i) {
      Word c = lie_to_word(t.alpha(i));
      if (corr)
        c.append(lie_to_word(corr->alpha(i)));
      const int x = sig.x(i);
      images[x] = c.inverse() * Word::letter(sig, x) * c;
    }
    for (int j = 1; j <= sig.g; ++j) {
      Word m = Word::letter(sig, sig.m(j)) * lie_to_word(t.beta(j));
      Word l = Word::letter(sig, sig.l(j)) * lie_to_word(t.gamma(j));
      if (corr) {
        m.append(lie_to_word(corr->beta(j)));
        l.append(lie_to_word(corr->gamma(j)));
      }
      images[sig.m(j)] = m;
      images[sig.l(j)] = l;
    }
    return images;
  };
  const TruncatedSeries xi = boundary_defect(sig, build(nullptr), L);
  GradedTuple corr = GradedTuple::zero(sig, k + 1);
  const int dxi = xi.unit_depth();
  if (dxi < L)
    throw std::logic_error("kernel tuple left a low-degree obstruction");
  if (dxi == L) {
    const LieVector v = series_to_lie(xi.homogeneous(L), L);
    auto sol = pk_solver(sig, k + 1).solve((-v).coords);
    if (!sol)
      throw std::logic_error("boundary correction has no solution");
    corr = GradedTuple::from_flat(sig, k + 1, *sol);
  }
  std::vector<Word> images = build(&corr);
  if (!boundary_defect(sig, images, L).is_one())
    throw std::logic_error("realized automorphism moves the boundary");
  return NilAut::from_images(sig, L, std::move(images));
}

IntMatrix symplectic_form(int g) {
  IntMatrix J(2 * g, 2 * g);
  for (int j = 0; j < g; ++j) {
    J(j, g + j) = 1;
    J(g + j, j) = -1;
  }
  return J;
}

bool aut_star_H_member(const Signature &sig, const IntMatrix &M) {
  const int r = sig.rank();
  if (M.rows() != r || M.cols() != r)
    throw std::invalid_argument("matrix size differs from the rank");
  const int nx = sig.n - 1;
  for (int c = 0; c < nx; ++c)
    for (int a = 0; a < r; ++a)
      if (M(a, c) != (a == c ? 1 : 0))
        return false;
  IntMatrix P(2 * sig.g, 2 * sig.g);
  for (int a = 0; a < 2 * sig.g; ++a)
    for (int c = 0; c < 2 * sig.g; ++c)
      P(a, c) = M(nx + a, nx + c);
  const IntMatrix J = symplectic_form(sig.g);
  return P.transpose() * J * P == J;
}

} // namespace nilcyl
