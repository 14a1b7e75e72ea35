#include "nilcyl/filtration.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace nilcyl {

GradedTuple GradedTuple::zero(const Signature &sig, int degree) {
  GradedTuple t{sig, degree, {}};
  for (int b = 0; b < sig.rank(); ++b)
    t.blocks.push_back(LieVector::zero(sig, degree));
  return t;
}

GradedTuple GradedTuple::from_flat(const Signature &sig, int degree,
                                   const IntVector &flat) {
  GradedTuple t = zero(sig, degree);
  const std::size_t N = t.blocks.empty() ? 0 : t.blocks[0].coords.size();
  if (flat.size() != N * t.blocks.size())
    throw std::invalid_argument("flat tuple has the wrong length");
  for (std::size_t b = 0; b < t.blocks.size(); ++b)
    for (std::size_t i = 0; i < N; ++i)
      t.blocks[b].coords[i] = flat[b * N + i];
  return t;
}

IntVector GradedTuple::flat() const {
  IntVector v;
  for (const auto &b : blocks)
    v.insert(v.end(), b.coords.begin(), b.coords.end());
  return v;
}

bool GradedTuple::is_zero() const {
  for (const auto &b : blocks)
    if (!b.is_zero())
      return false;
  return true;
}

GradedTuple GradedTuple::operator+(const GradedTuple &o) const {
  if (!(sig == o.sig) || degree != o.degree)
    throw std::invalid_argument("adding tuples of different shape");
  GradedTuple r = *this;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    r.blocks[b] = blocks[b] + o.blocks[b];
  return r;
}

GradedTuple GradedTuple::operator-(const GradedTuple &o) const {
  return *this + o.scaled(-1);
}

GradedTuple GradedTuple::scaled(const Integer &c) const {
  GradedTuple r = *this;
  for (auto &b : r.blocks)
    b = b.scaled(c);
  return r;
}

TensorElement identify_tensor(const GradedTuple &t) {
  const Signature &s = t.sig;
  TensorElement e{s, t.degree, std::vector<LieVector>(s.rank())};
  for (int i = 1; i < s.n; ++i)
    e.rows[s.x(i)] = t.alpha(i);
  for (int j = 1; j <= s.g; ++j) {
    e.rows[s.m(j)] = t.gamma(j);
    e.rows[s.l(j)] = -t.beta(j);
  }
  return e;
}

GradedTuple tuple_from_tensor(const TensorElement &e) {
  const Signature &s = e.sig;
  GradedTuple t = GradedTuple::zero(s, e.degree);
  for (int i = 1; i < s.n; ++i)
    t.alpha(i) = e.rows[s.x(i)];
  for (int j = 1; j <= s.g; ++j) {
    t.gamma(j) = e.rows[s.m(j)];
    t.beta(j) = -e.rows[s.l(j)];
  }
  return t;
}

LieVector pk_apply(const GradedTuple &t) {
  const Signature &s = t.sig;
  LieVector out = LieVector::zero(s, t.degree + 1);
  for (int i = 1; i < s.n; ++i)
    out = out + bracket(letter_vector(s, s.x(i)), t.alpha(i));
  for (int j = 1; j <= s.g; ++j) {
    out = out + bracket(letter_vector(s, s.m(j)), t.gamma(j));
    out = out + bracket(t.beta(j), letter_vector(s, s.l(j)));
  }
  return out;
}

IntMatrix pk_matrix(const Signature &sig, int k) {
  HallSet &hs = hall_set(sig.rank());
  const int N = hs.count(k), M = hs.count(k + 1);
  const int start = hs.begin(k), out_start = hs.begin(k + 1);
  const int r = sig.rank();
  IntMatrix P(M, r * N);
  for (int b = 0; b < r; ++b) {
    const bool is_beta = b >= sig.m(1) && b < sig.l(1);
    // alpha_i pairs with x_i, gamma_j with m_j, beta_j with l_j on the right
    const int partner = is_beta ? b + sig.g : (b >= sig.l(1) ? b - sig.g : b);
    for (int h = 0; h < N; ++h) {
      const SparseLie v = is_beta ? hs.bracket(start + h, partner)
                                  : hs.bracket(partner, start + h);
      for (const auto &[id, c] : v)
        P(id - out_start, b * N + h) += c;
    }
  }
  return P;
}

namespace {

template <class Key> class SolverCache {
public:
  template <class Make> const LinearSolver &get(const Key &key, Make make) {
    std::lock_guard lock(mu_);
    auto &slot = cache_[key];
    if (!slot)
      slot = std::make_unique<LinearSolver>(make());
    return *slot;
  }

private:
  std::mutex mu_;
  std::map<Key, std::unique_ptr<LinearSolver>> cache_;
};

} // namespace

const LinearSolver &pk_solver(const Signature &sig, int k) {
  static SolverCache<std::tuple<int, int, int>> cache;
  return cache.get({sig.g, sig.n, k},
                   [&] { return LinearSolver(pk_matrix(sig, k)); });
}

const LinearSolver &alpha_pk_solver(const Signature &sig, int k) {
  static SolverCache<std::tuple<int, int, int>> cache;
  return cache.get({sig.g, sig.n, k}, [&] {
    const IntMatrix P = pk_matrix(sig, k);
    const int cols = (sig.n - 1) * hall_set(sig.rank()).count(k);
    IntMatrix Q(P.rows(), cols);
    for (int i = 0; i < P.rows(); ++i)
      for (int j = 0; j < cols; ++j)
        Q(i, j) = P(i, j);
    return LinearSolver(Q);
  });
}

std::vector<GradedTuple> dk_basis(const Signature &sig, int k) {
  std::vector<GradedTuple> out;
  for (const auto &v : kernel_basis(pk_matrix(sig, k)))
    out.push_back(GradedTuple::from_flat(sig, k, v));
  return out;
}

std::vector<GradedTuple> dk_prime_basis(const Signature &sig, int k) {
  return dk_basis(Signature(0, sig.n), k);
}

GradedTuple embed_prime_tuple(const Signature &sig, const GradedTuple &t) {
  if (t.sig.g != 0 || t.sig.n != sig.n)
    throw std::invalid_argument("tuple is not over the x-letters");
  const auto pos = embed_basis(sig.n - 1, sig.rank(), t.degree);
  GradedTuple out = GradedTuple::zero(sig, t.degree);
  for (int i = 1; i < sig.n; ++i)
    for (std::size_t h = 0; h < pos.size(); ++h)
      out.alpha(i).coords[pos[h]] = t.alpha(i).coords[h];
  return out;
}

bool dprime_lattice_matches(const Signature &sig, int k) {
  const IntMatrix P = pk_matrix(sig, k);
  const int N = hall_set(sig.rank()).count(k);
  const int cols = (sig.n - 1) * N;
  IntMatrix Q(P.rows(), cols);
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < cols; ++j)
      Q(i, j) = P(i, j);
  const auto pos = embed_basis(sig.n - 1, sig.rank(), k);
  std::vector<bool> on_x(static_cast<std::size_t>(N), false);
  for (int p : pos)
    on_x[static_cast<std::size_t>(p)] = true;
  const std::vector<IntVector> full = kernel_basis(Q);
  for (const auto &v : full)
    for (int j = 0; j < cols; ++j)
      if (!on_x[static_cast<std::size_t>(j % N)] && sgn(v[j]) != 0)
        return false;
  std::vector<IntVector> prime;
  for (const auto &t : dk_prime_basis(sig, k)) {
    const IntVector f = embed_prime_tuple(sig, t).flat();
    prime.emplace_back(f.begin(), f.begin() + cols);
  }
  return same_lattice(full, prime, cols);
}

IntMatrix ad_matrix(const Signature &sig, int letter, int k) {
  HallSet &hs = hall_set(sig.rank());
  const int N = hs.count(k), M = hs.count(k + 1);
  const int start = hs.begin(k), out_start = hs.begin(k + 1);
  IntMatrix A(M, N);
  for (int h = 0; h < N; ++h)
    for (const auto &[id, c] : hs.bracket(letter, start + h))
      A(id - out_start, h) += c;
  return A;
}

const LinearSolver &ad_solver(const Signature &sig, int letter, int k) {
  static SolverCache<std::tuple<int, int, int, int>> cache;
  return cache.get({sig.g, sig.n, letter, k},
                   [&] { return LinearSolver(ad_matrix(sig, letter, k)); });
}

bool ad_injective_as_expected(const Signature &sig, int letter, int k) {
  const std::vector<IntVector> ker = kernel_basis(ad_matrix(sig, letter, k));
  if (k >= 2)
    return ker.empty();
  IntVector e(static_cast<std::size_t>(sig.rank()));
  e[static_cast<std::size_t>(letter)] = 1;
  return ker.size() == 1 && same_lattice(ker, {e}, sig.rank());
}

Integer h3_rank(const Signature &sig, int k) {
  const int r = sig.rank();
  Integer sum = 0;
  for (int i = k; i <= 2 * k - 2; ++i)
    sum += r * witt_rank(r, i) - witt_rank(r, i + 1);
  return sum;
}

RankTable rank_table(const Signature &sig, int kmax) {
  if (kmax < 2)
    throw std::invalid_argument("rank table needs kmax >= 2");
  const int r = sig.rank();
  const int rp = sig.n - 1;
  const Signature prime(0, sig.n);
  const Integer pairs = Integer(rp) * (rp - 1) / 2;
  RankTable table{sig, {}};
  for (int k = 1; k <= kmax; ++k) {
    RankRow row;
    row.k = k;
    row.witt = witt_rank(r, k);
    const IntMatrix P = pk_matrix(sig, k);
    row.dkH = P.cols() - rank(P);
    const IntMatrix Pp = pk_matrix(prime, k);
    row.dkHprime = Pp.cols() - rank(Pp);
    row.h3 = h3_rank(sig, k);
    if (row.dkH != r * row.witt - witt_rank(r, k + 1) ||
        row.dkHprime != rp * witt_rank(rp, k) - witt_rank(rp, k + 1))
      throw std::logic_error("kernel rank disagrees with the Witt formula");
    if (k == 1) {
      row.q_johnson0 = pairs;
      if (sig.g == 0) {
        row.q_milnor = pairs;
        row.q_mid_a = 0;
        row.q_mid_k = 0;
      }
    } else {
      row.q_milnor = row.dkH;
      row.q_johnson0 = row.dkHprime;
      row.q_mid_a = row.dkH - row.dkHprime;
      row.q_mid_k = *table.rows.back().q_johnson0 + *row.q_mid_a;
    }
    table.rows.push_back(row);
  }
  return table;
}

} // namespace nilcyl
