#pragma once

#include "nilcyl/magnus.hpp"
#include "nilcyl/zlinalg.hpp"

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace nilcyl {

// Rank of the degree-k part of the free Lie ring on r generators.
Integer witt_rank(int r, int k);
int mobius(int n);

struct HallNode {
  int left = -1;  // -1 for letters
  int right = -1;
  int letter = -1;
  int degree = 1;
};

using SparseLie = std::vector<std::pair<int, Integer>>; // sorted by id

class NotLie : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Hall set on r ordered letters, ordered by degree and then by the pair of
// factor ids. [u,v] is a Hall tree iff u < v and v is a letter or its left
// factor is <= u. Ids are positions in this order.
class HallSet {
public:
  explicit HallSet(int r);

  int rank() const { return r_; }

  int begin(int degree);
  int count(int degree);
  HallNode node(int id);

  // Bracket of two Hall trees expanded on the Hall basis.
  SparseLie bracket(int a, int b);

  // Homogeneous noncommutative polynomial of a Hall tree.
  const std::map<Monomial, Integer> &polynomial(int id);
  const Word &tree_word(const Signature &sig, int id);

  // Hall coordinates of a homogeneous degree-d Lie polynomial.
  IntVector coordinates(const std::map<Monomial, Integer> &h, int degree);

  std::optional<int> pair_id(int u, int v);

private:
  struct Reducer {
    std::map<Monomial, int> column;
    HermiteForm hf;
  };

  void ensure_degree(int d);
  SparseLie bracket_locked(int a, int b);
  const std::map<Monomial, Integer> &polynomial_locked(int id);
  const Reducer &reducer(int degree);

  int r_;
  std::recursive_mutex mu_;
  std::deque<HallNode> nodes_;
  std::vector<int> begin_; // begin_[d] for d = 1..built+1
  int built_ = 0;
  std::map<std::pair<int, int>, int> pairs_;
  std::unordered_map<std::uint64_t, SparseLie> memo_;
  std::set<std::uint64_t> in_progress_;
  std::unordered_map<int, std::map<Monomial, Integer>> polys_;
  std::map<std::pair<int, int>, Word> words_; // (n, id) -> word, per rank
  std::map<int, std::unique_ptr<Reducer>> reducers_;
};

// Shared Hall set for rank r; safe to use from several threads.
HallSet &hall_set(int r);

struct HallBasis {
  Signature sig;
  int degree = 1;
  std::vector<int> ids;
};

HallBasis hall_basis(const Signature &sig, int k);
std::string print_tree(const Signature &sig, int id);

struct LieVector {
  Signature sig;
  int degree = 1;
  IntVector coords;

  static LieVector zero(const Signature &sig, int degree);
  static LieVector basis(const Signature &sig, int degree, int index);

  bool is_zero() const;
  LieVector operator+(const LieVector &o) const;
  LieVector operator-(const LieVector &o) const;
  LieVector operator-() const;
  LieVector scaled(const Integer &c) const;
  bool operator==(const LieVector &o) const = default;
};

std::string print_lie(const LieVector &v);

LieVector bracket(const LieVector &a, const LieVector &b);
LieVector letter_vector(const Signature &sig, int letter);

// Homogeneous series of a Lie element, truncated at `bound` (>= degree).
TruncatedSeries lie_to_series(const LieVector &v, int bound);
TruncatedSeries lie_to_series(const LieVector &v);

// Inverse of lie_to_series on its image; throws NotLie otherwise. The input
// must be homogeneous of degree k.
LieVector series_to_lie(const TruncatedSeries &h, int k);

// Product of Hall-tree commutator words, one per nonzero coordinate, with
// leading part v. Exact only in degree one.
Word lie_to_word(const LieVector &v);

// Positions of the Hall basis on the first `small` letters inside the Hall
// basis on `big` letters, in the given degree.
std::vector<int> embed_basis(int small, int big, int degree);

} // namespace nilcyl
