#include "nilcyl/cylmodel.hpp"

namespace nilcyl {

namespace {

void check_tuple(const Signature &sig, int level, const MilnorTuple &mu) {
  if (level < 2)
    throw std::invalid_argument("model level must be at least 2");
  if (static_cast<int>(mu.size()) != sig.rank())
    throw std::invalid_argument("Milnor tuple has the wrong length");
  for (const auto &w : mu)
    if (!(w.sig() == sig))
      throw std::invalid_argument("Milnor entry over another signature");
}

std::string reason_text(const NotMember &nm) {
  if (nm.reason == NotMemberReason::XImageNotConjugate)
    return "x-image is not a conjugate of its generator (degree " +
           std::to_string(nm.degree) + ")";
  return "boundary obstruction in degree " + std::to_string(nm.degree);
}

} // namespace

NilAut derive_eta(const Signature &sig, int level, const MilnorTuple &mu) {
  check_tuple(sig, level, mu);
  std::vector<Word> images(sig.rank());
  for (int i = 1; i < sig.n; ++i) {
    const int x = sig.x(i);
    images[x] = mu[x].inverse() * Word::letter(sig, x) * mu[x];
  }
  for (int j = 1; j <= sig.g; ++j) {
    images[sig.m(j)] = Word::letter(sig, sig.m(j)) * mu[sig.m(j)];
    images[sig.l(j)] = Word::letter(sig, sig.l(j)) * mu[sig.l(j)];
  }
  return NilAut::from_images(sig, level, std::move(images));
}

NilAut derive_eta(const CylModel &M) {
  return derive_eta(M.sig(), M.level(), M.mu());
}

CylModel CylModel::make(const Signature &sig, int level, MilnorTuple mu) {
  check_tuple(sig, level, mu);
  const NilAut eta = derive_eta(sig, level, mu);
  if (!is_automorphism(eta))
    throw NotAdmissible("derived map is not an automorphism");
  const AutStarResult res = aut_star_membership(eta);
  if (const auto *nm = std::get_if<NotMember>(&res))
    throw NotAdmissible("derived automorphism is not realizable: " +
                        reason_text(*nm));
  for (auto &w : mu)
    w = normalize(w, level);
  return CylModel(sig, level, std::move(mu));
}

CylModel CylModel::identity(const Signature &sig, int level) {
  return make(sig, level, MilnorTuple(sig.rank(), Word(sig)));
}

bool CylModel::same_as(const CylModel &o) const {
  if (!(sig_ == o.sig_) || level_ != o.level_)
    return false;
  for (std::size_t b = 0; b < mu_.size(); ++b)
    if (!equal_mod(mu_[b], o.mu_[b], level_))
      return false;
  return true;
}

CylModel compose(const CylModel &M, const CylModel &N) {
  if (!(M.sig() == N.sig()) || M.level() != N.level())
    throw std::invalid_argument("composing models of different shape");
  const int D = M.level() - 1;
  const Substitution eta(derive_eta(M), D);
  MilnorTuple mu;
  for (std::size_t b = 0; b < M.mu().size(); ++b)
    mu.push_back(collect(expand(M.mu()[b], D) * eta.apply(N.mu()[b])));
  // eta(MN) = eta(M) o eta(N), so the result stays admissible.
  return CylModel(M.sig(), M.level(), std::move(mu));
}

CylModel truncate(const CylModel &M, int level) {
  if (level < 2 || level > M.level())
    throw std::invalid_argument("truncation level out of range");
  MilnorTuple mu;
  for (const auto &w : M.mu())
    mu.push_back(normalize(w, level));
  return CylModel(M.sig(), level, std::move(mu));
}

FramingVector framing(const CylModel &M) {
  FramingVector t;
  for (int i = 1; i < M.sig().n; ++i)
    t.push_back(M.x_entry(i).exponent_sum(M.sig().x(i)));
  return t;
}

bool zero_framed(const CylModel &M) {
  for (const auto &t : framing(M))
    if (t != 0)
      return false;
  return true;
}

CylModel dehn_twist_model(const Signature &sig, int i, const Integer &t,
                          int level) {
  if (i < 1 || i >= sig.n)
    throw std::invalid_argument("twist index out of range");
  MilnorTuple mu(sig.rank(), Word(sig));
  mu[sig.x(i)] = Word::letter(sig, sig.x(i), t);
  return CylModel::make(sig, level, std::move(mu));
}

FrameNormalized frame_normalize(const CylModel &M) {
  const FramingVector t = framing(M);
  CylModel out = M;
  for (int i = 1; i < M.sig().n; ++i)
    if (t[i - 1] != 0)
      out = compose(out, dehn_twist_model(M.sig(), i, -t[i - 1], M.level()));
  return {out, t};
}

bool filtration_member(const CylModel &M, FiltrationKind kind, int k) {
  if (k < 1)
    throw std::invalid_argument("filtration index must be positive");
  if (k > M.level())
    throw QueryAboveLevel("query degree exceeds the model level");
  if (!zero_framed(M))
    return false;
  const Signature &sig = M.sig();
  const Word one(sig);
  const int kx = kind == FiltrationKind::Milnor ? k : k - 1;
  for (int i = 1; i < sig.n; ++i)
    if (!equal_mod(M.x_entry(i), one, kx))
      return false;
  for (int j = 1; j <= sig.g; ++j)
    if (!equal_mod(M.m_entry(j), one, k) || !equal_mod(M.l_entry(j), one, k))
      return false;
  return true;
}

bool h15_member(const CylModel &M) {
  if (!zero_framed(M))
    throw std::invalid_argument("h15 test needs a zero-framed model");
  const Signature &sig = M.sig();
  for (int j = 1; j <= sig.g; ++j)
    for (int i = 1; i < sig.n; ++i)
      if (M.m_entry(j).exponent_sum(sig.x(i)) != 0 ||
          M.l_entry(j).exponent_sum(sig.x(i)) != 0)
        return false;
  return true;
}

CylModel split_projection_f(const CylModel &M) {
  if (!zero_framed(M) || !h15_member(M))
    throw NotInH15("model is outside H0[1.5]");
  const Signature &sig = M.sig();
  const int r = sig.rank();
  const int nx = sig.n - 1;
  // u_i keeps the x_1..x_i coordinates of mu_i; its remaining coordinates
  // are fixed by sum [x_i, u_i] = 0 in degree two.
  std::vector<IntVector> fixed(nx, IntVector(r));
  std::vector<std::pair<int, int>> unknowns; // (i, letter)
  for (int i = 1; i <= nx; ++i) {
    for (int s = 1; s <= i; ++s)
      fixed[i - 1][sig.x(s)] = M.x_entry(i).exponent_sum(sig.x(s));
    for (int z = sig.x(i) + 1; z < r; ++z)
      unknowns.emplace_back(i, z);
  }
  LieVector rhs = LieVector::zero(sig, 2);
  for (int i = 1; i <= nx; ++i) {
    LieVector f{sig, 1, fixed[i - 1]};
    rhs = rhs - bracket(letter_vector(sig, sig.x(i)), f);
  }
  IntMatrix A(static_cast<int>(rhs.coords.size()),
              static_cast<int>(unknowns.size()));
  for (std::size_t c = 0; c < unknowns.size(); ++c) {
    const auto [i, z] = unknowns[c];
    const LieVector v =
        bracket(letter_vector(sig, sig.x(i)), letter_vector(sig, z));
    for (std::size_t row = 0; row < v.coords.size(); ++row)
      A(static_cast<int>(row), static_cast<int>(c)) = v.coords[row];
  }
  auto sol = solve(A, rhs.coords);
  if (!sol)
    throw std::logic_error("degree-two condition has no solution");
  for (std::size_t c = 0; c < unknowns.size(); ++c)
    fixed[unknowns[c].first - 1][unknowns[c].second] += (*sol)[c];
  MilnorTuple mu(r, Word(sig));
  for (int i = 1; i <= nx; ++i) {
    Word w(sig);
    for (int a = 0; a < r; ++a)
      w.push(a, fixed[i - 1][a]);
    mu[sig.x(i)] = w;
  }
  return CylModel::make(sig, 2, std::move(mu));
}

} // namespace nilcyl
