#include "nilcyl/sampling.hpp"

#include <algorithm>

namespace nilcyl::sampling {

Rng case_rng(std::uint64_t seed, std::uint64_t case_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(case_index),
                    static_cast<std::uint32_t>(case_index >> 32)};
  return Rng(seq);
}

long uniform(Rng &rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Word random_word(const Signature &sig, Rng &rng, int max_len, int max_exp) {
  Word w(sig);
  if (sig.rank() == 0)
    return w;
  const int len = static_cast<int>(uniform(rng, 0, max_len));
  for (int i = 0; i < len; ++i)
    w.push(static_cast<int>(uniform(rng, 0, sig.rank() - 1)),
           uniform(rng, -max_exp, max_exp));
  return w;
}

LieVector random_lie(const Signature &sig, int degree, Rng &rng, int range,
                     int terms) {
  LieVector v = LieVector::zero(sig, degree);
  if (v.coords.empty())
    return v;
  for (int t = 0; t < terms; ++t) {
    const auto idx = static_cast<std::size_t>(
        uniform(rng, 0, static_cast<long>(v.coords.size()) - 1));
    v.coords[idx] = uniform(rng, -range, range);
  }
  return v;
}

Word random_deep_word(const Signature &sig, int depth, int level, Rng &rng) {
  Word w(sig);
  for (int d = std::max(depth, 1); d < level; ++d)
    w.append(lie_to_word(random_lie(sig, d, rng, 2, 2)));
  return w;
}

GradedTuple random_kernel_tuple(const Signature &sig, int k, Rng &rng,
                                int range) {
  GradedTuple t = GradedTuple::zero(sig, k);
  for (const auto &b : dk_basis(sig, k))
    t = t + b.scaled(uniform(rng, -range, range));
  return t;
}

IntMatrix random_unimodular(int n, Rng &rng, int steps) {
  IntMatrix U = IntMatrix::identity(n);
  if (n < 2)
    return U;
  for (int s = 0; s < steps; ++s) {
    const int i = static_cast<int>(uniform(rng, 0, n - 1));
    int j = static_cast<int>(uniform(rng, 0, n - 2));
    if (j >= i)
      ++j;
    const long c = uniform(rng, -2, 2);
    for (int col = 0; col < n; ++col)
      U(i, col) += c * U(j, col);
  }
  return U;
}

IntMatrix random_symplectic(int g, Rng &rng, int steps) {
  IntMatrix P = IntMatrix::identity(2 * g);
  if (g == 0)
    return P;
  for (int s = 0; s < steps; ++s) {
    IntMatrix E = IntMatrix::identity(2 * g);
    const int i = static_cast<int>(uniform(rng, 0, g - 1));
    const int j = static_cast<int>(uniform(rng, 0, g - 1));
    const long c = uniform(rng, -2, 2);
    switch (uniform(rng, 0, 2)) {
    case 0: // [[I, S], [0, I]] with S symmetric
      E(i, g + j) += c;
      if (i != j)
        E(j, g + i) += c;
      break;
    case 1: // [[I, 0], [S, I]]
      E(g + i, j) += c;
      if (i != j)
        E(g + j, i) += c;
      break;
    default: // U + U^-T
      if (i == j)
        continue;
      E(i, j) += c;
      E(g + j, g + i) -= c;
      break;
    }
    P = P * E;
  }
  return P;
}

namespace {

Word abelian_word(const Signature &sig, const IntVector &v) {
  Word w(sig);
  for (int a = 0; a < sig.rank(); ++a)
    w.push(a, v[a]);
  return w;
}

// Degree-(k+1) effect of degree-k entry changes: [x_i, a] on x entries and
// [b, l'_j], [m'_j, c] on m and l entries, where m'_j, l'_j are the
// abelianized images of m_j, l_j.
IntMatrix entry_change_matrix(const Signature &sig, const NilAut &eta, int k) {
  const IntMatrix ab = abelianization(eta);
  auto image = [&](int letter) {
    LieVector v = LieVector::zero(sig, 1);
    for (int a = 0; a < sig.rank(); ++a)
      v.coords[a] = ab(a, letter);
    return v;
  };
  const int N = static_cast<int>(hall_set(sig.rank()).count(k));
  const int M = static_cast<int>(hall_set(sig.rank()).count(k + 1));
  IntMatrix A(M, sig.rank() * N);
  for (int b = 0; b < sig.rank(); ++b) {
    const bool is_m = b >= sig.m(1) && b < sig.l(1);
    const bool is_l = b >= sig.l(1);
    const LieVector partner =
        is_m ? image(b + sig.g) : (is_l ? image(b - sig.g) : image(b));
    for (int h = 0; h < N; ++h) {
      LieVector e = LieVector::zero(sig, k);
      e.coords[h] = 1;
      const LieVector v = is_m ? bracket(e, partner) : bracket(partner, e);
      for (int row = 0; row < M; ++row)
        A(row, b * N + h) = v.coords[row];
    }
  }
  return A;
}

} // namespace

NilAut random_automorphism(const Signature &sig, int level, Rng &rng) {
  const IntMatrix U = random_unimodular(sig.rank(), rng);
  std::vector<Word> images;
  for (int g = 0; g < sig.rank(); ++g)
    images.push_back(abelian_word(sig, U.col(g)) *
                     random_deep_word(sig, 2, level, rng));
  return NilAut::from_images(sig, level, std::move(images));
}

NilAut random_lift(const NilAut &phi, int level, Rng &rng) {
  std::vector<Word> images;
  for (const auto &w : phi.images)
    images.push_back(w * random_deep_word(phi.sig, phi.level, level, rng));
  return NilAut::from_images(phi.sig, level, std::move(images));
}

CylModel random_model(const Signature &sig, int level, Rng &rng,
                      const ModelOptions &opt) {
  const int r = sig.rank();
  const int nx = sig.n - 1;
  const int g = sig.g;
  const int s = std::max(opt.start_degree, 1);
  MilnorTuple mu(r, Word(sig));
  if (s == 1) {
    const IntMatrix P = random_symplectic(g, rng);
    for (int c = 0; c < 2 * g; ++c) {
      IntVector v(r);
      for (int a = 0; a < 2 * g; ++a)
        v[nx + a] = P(a, c) - (a == c ? 1 : 0);
      if (!opt.h15)
        for (int i = 0; i < nx; ++i)
          v[i] = uniform(rng, -1, 1);
      mu[nx + c] = abelian_word(sig, v);
    }
    for (int i = 0; i < nx; ++i) {
      IntVector v(r);
      for (int a = 0; a < r; ++a)
        v[a] = uniform(rng, -1, 1);
      v[i] = opt.zero_framed ? 0 : uniform(rng, -2, 2);
      mu[i] = abelian_word(sig, v);
    }
  }
  for (int d = 2; d <= level; ++d) {
    if (d - 1 >= std::max(s, 2))
      for (int b = 0; b < r; ++b)
        mu[b].append(lie_to_word(random_lie(sig, d - 1, rng, 1, 2)));
    const NilAut eta = derive_eta(sig, level, mu);
    const TruncatedSeries xi = boundary_defect(sig, eta.images, d);
    const int dxi = xi.unit_depth();
    if (dxi < d)
      throw std::logic_error("random model lost a degree");
    if (dxi > d)
      continue;
    const LieVector v = series_to_lie(xi.homogeneous(d), d);
    if (d == 2) {
      auto sol = alpha_pk_solver(sig, 1).solve((-v).coords);
      if (!sol)
        throw std::logic_error("degree-one data is not symplectic");
      for (int i = 0; i < nx; ++i) {
        IntVector a(sol->begin() + i * r, sol->begin() + (i + 1) * r);
        a[i] = 0; // [x_i, x_i] = 0; keep the framing
        mu[i].append(abelian_word(sig, a));
      }
    } else {
      auto sol = solve(entry_change_matrix(sig, eta, d - 1), (-v).coords);
      if (!sol)
        throw std::logic_error("boundary correction has no solution");
      const GradedTuple c = GradedTuple::from_flat(sig, d - 1, *sol);
      for (int b = 0; b < r; ++b)
        mu[b].append(lie_to_word(c.blocks[b]));
    }
  }
  return CylModel::make(sig, level, std::move(mu));
}

} // namespace nilcyl::sampling
