#include "nilcyl/lie.hpp"

#include <algorithm>

namespace nilcyl {

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p)
      continue;
    n /= p;
    if (n % p == 0)
      return 0;
    result = -result;
  }
  if (n > 1)
    result = -result;
  return result;
}

Integer witt_rank(int r, int k) {
  if (k < 1)
    throw std::invalid_argument("Witt rank needs k >= 1");
  Integer sum = 0;
  for (int d = 1; d <= k; ++d) {
    if (k % d)
      continue;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(r),
                  static_cast<unsigned long>(k / d));
    sum += mobius(d) * p;
  }
  return sum / k;
}

namespace {

std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

void accumulate(std::map<int, Integer> &acc, const SparseLie &v,
                const Integer &c) {
  for (const auto &[id, x] : v) {
    Integer &slot = acc[id];
    mpz_addmul(slot.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
    if (slot == 0)
      acc.erase(id);
  }
}

SparseLie to_sparse(const std::map<int, Integer> &acc) {
  return SparseLie(acc.begin(), acc.end());
}

SparseLie negated(SparseLie v) {
  for (auto &e : v)
    e.second = -e.second;
  return v;
}

using Poly = std::map<Monomial, Integer>;

Poly poly_mul(const Poly &a, const Poly &b) {
  Poly r;
  for (const auto &[ma, ca] : a)
    for (const auto &[mb, cb] : b) {
      Integer &slot = r[ma * mb];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  std::erase_if(r, [](const auto &kv) { return kv.second == 0; });
  return r;
}

} // namespace

HallSet::HallSet(int r) : r_(r) {
  if (r < 0)
    throw std::invalid_argument("negative rank");
  begin_ = {0, 0};
}

void HallSet::ensure_degree(int d) {
  std::lock_guard lock(mu_);
  while (built_ < d) {
    const int e = built_ + 1;
    if (e == 1) {
      for (int i = 0; i < r_; ++i)
        nodes_.push_back({-1, -1, i, 1});
    } else {
      std::vector<std::pair<int, int>> cands;
      for (int a = 1; 2 * a <= e; ++a) {
        const int b = e - a;
        for (int u = begin_[a]; u < begin_[a + 1]; ++u)
          for (int v = std::max(u + 1, begin_[b]); v < begin_[b + 1]; ++v) {
            const HallNode &nv = nodes_[v];
            if (nv.degree == 1 || nv.left <= u)
              cands.emplace_back(u, v);
          }
      }
      std::sort(cands.begin(), cands.end());
      for (const auto &[u, v] : cands) {
        pairs_[{u, v}] = static_cast<int>(nodes_.size());
        nodes_.push_back({u, v, -1, e});
      }
    }
    begin_.push_back(static_cast<int>(nodes_.size()));
    built_ = e;
  }
}

int HallSet::begin(int degree) {
  ensure_degree(degree);
  std::lock_guard lock(mu_);
  return begin_[degree];
}

int HallSet::count(int degree) {
  ensure_degree(degree);
  std::lock_guard lock(mu_);
  return begin_[degree + 1] - begin_[degree];
}

HallNode HallSet::node(int id) {
  std::lock_guard lock(mu_);
  return nodes_.at(id);
}

std::optional<int> HallSet::pair_id(int u, int v) {
  std::lock_guard lock(mu_);
  ensure_degree(nodes_.at(u).degree + nodes_.at(v).degree);
  auto it = pairs_.find({u, v});
  if (it == pairs_.end())
    return std::nullopt;
  return it->second;
}

SparseLie HallSet::bracket(int a, int b) {
  std::lock_guard lock(mu_);
  return bracket_locked(a, b);
}

SparseLie HallSet::bracket_locked(int a, int b) {
  if (a == b)
    return {};
  if (a > b)
    return negated(bracket_locked(b, a));
  const std::uint64_t key = pair_key(a, b);
  if (auto it = memo_.find(key); it != memo_.end())
    return it->second;
  if (!in_progress_.insert(key).second)
    throw std::logic_error("Hall rewriting did not terminate");
  SparseLie result;
  if (auto id = pair_id(a, b)) {
    result = {{*id, Integer(1)}};
  } else {
    // [a,[p,q]] = [p,[a,q]] - [q,[a,p]]
    const HallNode nb = nodes_[b];
    const int p = nb.left, q = nb.right;
    std::map<int, Integer> acc;
    for (const auto &[h, c] : bracket_locked(a, q))
      accumulate(acc, bracket_locked(p, h), c);
    for (const auto &[h, c] : bracket_locked(a, p))
      accumulate(acc, bracket_locked(q, h), -c);
    result = to_sparse(acc);
  }
  in_progress_.erase(key);
  memo_.emplace(key, result);
  return result;
}

const std::map<Monomial, Integer> &HallSet::polynomial(int id) {
  std::lock_guard lock(mu_);
  return polynomial_locked(id);
}

const std::map<Monomial, Integer> &HallSet::polynomial_locked(int id) {
  if (auto it = polys_.find(id); it != polys_.end())
    return it->second;
  const HallNode nd = nodes_.at(id);
  if (nd.degree > Monomial::kMaxDegree || r_ > Monomial::kMaxLetters)
    throw std::invalid_argument("Hall polynomial beyond Magnus range");
  Poly p;
  if (nd.degree == 1) {
    p[Monomial::from_letters({nd.letter})] = 1;
  } else {
    const Poly &pu = polynomial_locked(nd.left);
    const Poly &pv = polynomial_locked(nd.right);
    p = poly_mul(pu, pv);
    for (const auto &[m, c] : poly_mul(pv, pu)) {
      Integer &slot = p[m];
      slot -= c;
    }
    std::erase_if(p, [](const auto &kv) { return kv.second == 0; });
  }
  return polys_.emplace(id, std::move(p)).first->second;
}

const Word &HallSet::tree_word(const Signature &sig, int id) {
  std::lock_guard lock(mu_);
  if (sig.rank() != r_)
    throw std::invalid_argument("signature rank mismatch");
  auto key = std::make_pair(sig.n, id);
  if (auto it = words_.find(key); it != words_.end())
    return it->second;
  const HallNode nd = nodes_.at(id);
  Word w = nd.degree == 1
               ? Word::letter(sig, nd.letter)
               : commutator(tree_word(sig, nd.left), tree_word(sig, nd.right));
  return words_.emplace(key, std::move(w)).first->second;
}

const HallSet::Reducer &HallSet::reducer(int degree) {
  std::lock_guard lock(mu_);
  if (auto it = reducers_.find(degree); it != reducers_.end())
    return *it->second;
  ensure_degree(degree);
  auto red = std::make_unique<Reducer>();
  const int b = begin_[degree], e = begin_[degree + 1];
  for (int id = b; id < e; ++id)
    for (const auto &[m, c] : polynomial_locked(id))
      red->column.emplace(m, 0);
  int col = 0;
  for (auto &[m, idx] : red->column)
    idx = col++;
  IntMatrix A(e - b, col);
  for (int id = b; id < e; ++id)
    for (const auto &[m, c] : polynomial_locked(id))
      A(id - b, red->column.at(m)) = c;
  red->hf = hermite(A, true);
  if (static_cast<int>(red->hf.pivots.size()) != e - b)
    throw std::logic_error("Hall polynomials are not independent");
  return *reducers_.emplace(degree, std::move(red)).first->second;
}

IntVector HallSet::coordinates(const std::map<Monomial, Integer> &h,
                               int degree) {
  const Reducer &red = reducer(degree);
  const int N = static_cast<int>(red.hf.pivots.size());
  IntVector res(red.column.size());
  for (const auto &[m, c] : h) {
    if (c == 0)
      continue;
    if (m.degree() != degree)
      throw NotLie("series is not homogeneous of degree " +
                   std::to_string(degree));
    auto it = red.column.find(m);
    if (it == red.column.end())
      throw NotLie("monomial outside every Lie polynomial");
    res[it->second] = c;
  }
  const IntMatrix &H = red.hf.H;
  IntVector y(N);
  for (int i = 0; i < N; ++i) {
    const int p = red.hf.pivots[i];
    if (sgn(res[p]) == 0)
      continue;
    if (!mpz_divisible_p(res[p].get_mpz_t(), H(i, p).get_mpz_t()))
      throw NotLie("series is not an integral Lie element");
    mpz_divexact(y[i].get_mpz_t(), res[p].get_mpz_t(), H(i, p).get_mpz_t());
    for (int j = p; j < H.cols(); ++j)
      if (sgn(H(i, j)) != 0)
        mpz_submul(res[j].get_mpz_t(), y[i].get_mpz_t(), H(i, j).get_mpz_t());
  }
  for (const auto &x : res)
    if (sgn(x) != 0)
      throw NotLie("series is not a Lie element");
  IntVector coords(N);
  for (int i = 0; i < N; ++i) {
    if (sgn(y[i]) == 0)
      continue;
    for (int j = 0; j < N; ++j)
      mpz_addmul(coords[j].get_mpz_t(), y[i].get_mpz_t(),
                 red.hf.U(i, j).get_mpz_t());
  }
  return coords;
}

HallSet &hall_set(int r) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<HallSet>> sets;
  std::lock_guard lock(mu);
  auto &slot = sets[r];
  if (!slot)
    slot = std::make_unique<HallSet>(r);
  return *slot;
}

HallBasis hall_basis(const Signature &sig, int k) {
  HallSet &hs = hall_set(sig.rank());
  HallBasis b{sig, k, {}};
  const int start = hs.begin(k), n = hs.count(k);
  for (int i = 0; i < n; ++i)
    b.ids.push_back(start + i);
  return b;
}

std::string print_tree(const Signature &sig, int id) {
  const HallNode nd = hall_set(sig.rank()).node(id);
  if (nd.degree == 1)
    return Generator::from_letter(sig, nd.letter).name();
  return "[" + print_tree(sig, nd.left) + "," + print_tree(sig, nd.right) +
         "]";
}

LieVector LieVector::zero(const Signature &sig, int degree) {
  return {sig, degree, IntVector(hall_set(sig.rank()).count(degree))};
}

LieVector LieVector::basis(const Signature &sig, int degree, int index) {
  LieVector v = zero(sig, degree);
  v.coords.at(index) = 1;
  return v;
}

bool LieVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](const Integer &c) { return sgn(c) == 0; });
}

LieVector LieVector::operator+(const LieVector &o) const {
  if (!(sig == o.sig) || degree != o.degree)
    throw std::invalid_argument("adding Lie vectors of different shape");
  LieVector r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i)
    r.coords[i] += o.coords[i];
  return r;
}

LieVector LieVector::operator-(const LieVector &o) const {
  return *this + o.scaled(-1);
}

LieVector LieVector::operator-() const { return scaled(-1); }

LieVector LieVector::scaled(const Integer &c) const {
  LieVector r = *this;
  for (auto &x : r.coords)
    x *= c;
  return r;
}

std::string print_lie(const LieVector &v) {
  HallSet &hs = hall_set(v.sig.rank());
  const int start = hs.begin(v.degree);
  std::string out;
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    const Integer &c = v.coords[i];
    if (c == 0)
      continue;
    const bool neg = c < 0;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (abs(c) != 1)
      out += Integer(abs(c)).get_str() + "*";
    out += print_tree(v.sig, start + static_cast<int>(i));
  }
  return out.empty() ? "0" : out;
}

LieVector bracket(const LieVector &a, const LieVector &b) {
  if (!(a.sig == b.sig))
    throw std::invalid_argument("bracket of Lie vectors over different signatures");
  HallSet &hs = hall_set(a.sig.rank());
  const int ba = hs.begin(a.degree), bb = hs.begin(b.degree);
  LieVector out = LieVector::zero(a.sig, a.degree + b.degree);
  const int bo = hs.begin(out.degree);
  Integer cc;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (sgn(a.coords[i]) == 0)
      continue;
    for (std::size_t j = 0; j < b.coords.size(); ++j) {
      if (sgn(b.coords[j]) == 0)
        continue;
      cc = a.coords[i] * b.coords[j];
      for (const auto &[id, c] :
           hs.bracket(ba + static_cast<int>(i), bb + static_cast<int>(j)))
        mpz_addmul(out.coords[id - bo].get_mpz_t(), cc.get_mpz_t(),
                   c.get_mpz_t());
    }
  }
  return out;
}

LieVector letter_vector(const Signature &sig, int letter) {
  return LieVector::basis(sig, 1, letter);
}

TruncatedSeries lie_to_series(const LieVector &v, int bound) {
  if (bound < v.degree)
    throw std::invalid_argument("bound below the degree of the Lie element");
  HallSet &hs = hall_set(v.sig.rank());
  const int start = hs.begin(v.degree);
  TruncatedSeries s(v.sig, bound);
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (sgn(v.coords[i]) == 0)
      continue;
    for (const auto &[m, c] : hs.polynomial(start + static_cast<int>(i)))
      s.add_term(m, c * v.coords[i]);
  }
  return s;
}

TruncatedSeries lie_to_series(const LieVector &v) {
  return lie_to_series(v, v.degree);
}

LieVector series_to_lie(const TruncatedSeries &h, int k) {
  if (k < 1)
    throw std::invalid_argument("Lie degree must be positive");
  LieVector v{h.sig(), k, hall_set(h.sig().rank()).coordinates(h.terms(), k)};
  return v;
}

namespace {

// Commutator word of a Hall tree with the leftmost leaf raised to c; its
// leading part is c times the tree.
Word scaled_tree_word(HallSet &hs, const Signature &sig, int id,
                      const Integer &c) {
  const HallNode nd = hs.node(id);
  if (nd.degree == 1)
    return Word::letter(sig, nd.letter, c);
  return commutator(scaled_tree_word(hs, sig, nd.left, c),
                    hs.tree_word(sig, nd.right));
}

} // namespace

Word lie_to_word(const LieVector &v) {
  HallSet &hs = hall_set(v.sig.rank());
  const int start = hs.begin(v.degree);
  Word w(v.sig);
  for (std::size_t i = 0; i < v.coords.size(); ++i)
    if (sgn(v.coords[i]) != 0)
      w.append(scaled_tree_word(hs, v.sig, start + static_cast<int>(i),
                                v.coords[i]));
  return w;
}

std::vector<int> embed_basis(int small, int big, int degree) {
  if (small > big)
    throw std::invalid_argument("embedding into a smaller alphabet");
  HallSet &hs = hall_set(small);
  HallSet &hb = hall_set(big);
  std::map<int, int> image; // small id -> big id
  std::function<int(int)> map_id = [&](int id) -> int {
    if (auto it = image.find(id); it != image.end())
      return it->second;
    const HallNode nd = hs.node(id);
    int out;
    if (nd.degree == 1) {
      out = hb.begin(1) + nd.letter;
    } else {
      auto p = hb.pair_id(map_id(nd.left), map_id(nd.right));
      if (!p)
        throw std::logic_error("Hall basis does not restrict to sub-alphabet");
      out = *p;
    }
    image[id] = out;
    return out;
  };
  std::vector<int> pos;
  const int sb = hs.begin(degree), n = hs.count(degree);
  const int bb = hb.begin(degree);
  for (int i = 0; i < n; ++i)
    pos.push_back(map_id(sb + i) - bb);
  return pos;
}

} // namespace nilcyl
