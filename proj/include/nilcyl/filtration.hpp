#pragma once

#include "nilcyl/lie.hpp"
#include "nilcyl/zlinalg.hpp"

#include <optional>
#include <vector>

namespace nilcyl {

// (alpha_1..alpha_{n-1}, beta_1..beta_g, gamma_1..gamma_g), all of one
// degree. Block b sits at the position of generator letter b.
struct GradedTuple {
  Signature sig;
  int degree = 1;
  std::vector<LieVector> blocks;

  static GradedTuple zero(const Signature &sig, int degree);
  static GradedTuple from_flat(const Signature &sig, int degree,
                               const IntVector &flat);

  LieVector &alpha(int i) { return blocks.at(sig.x(i)); }
  LieVector &beta(int j) { return blocks.at(sig.m(j)); }
  LieVector &gamma(int j) { return blocks.at(sig.l(j)); }
  const LieVector &alpha(int i) const { return blocks.at(sig.x(i)); }
  const LieVector &beta(int j) const { return blocks.at(sig.m(j)); }
  const LieVector &gamma(int j) const { return blocks.at(sig.l(j)); }

  IntVector flat() const;
  bool is_zero() const;
  GradedTuple operator+(const GradedTuple &o) const;
  GradedTuple operator-(const GradedTuple &o) const;
  GradedTuple scaled(const Integer &c) const;
  bool operator==(const GradedTuple &o) const = default;
};

// Element of H (x) L_k: one Lie vector per generator row.
struct TensorElement {
  Signature sig;
  int degree = 1;
  std::vector<LieVector> rows;
};

TensorElement identify_tensor(const GradedTuple &t);
GradedTuple tuple_from_tensor(const TensorElement &e);

// sum [x_i, alpha_i] + sum ([m_j, gamma_j] + [beta_j, l_j]) in degree k+1.
LieVector pk_apply(const GradedTuple &t);
IntMatrix pk_matrix(const Signature &sig, int k);
const LinearSolver &pk_solver(const Signature &sig, int k);
// pk restricted to the alpha blocks.
const LinearSolver &alpha_pk_solver(const Signature &sig, int k);

std::vector<GradedTuple> dk_basis(const Signature &sig, int k);
// Kernel on the x-letters alone, as tuples over the genus-zero signature
// with the same n.
std::vector<GradedTuple> dk_prime_basis(const Signature &sig, int k);
// Move a tuple over the x-letters into the full signature.
GradedTuple embed_prime_tuple(const Signature &sig, const GradedTuple &t);

// Kernel of pk restricted to the alpha blocks, in full coordinates, lies
// in x-letter coordinates and equals the embedded prime kernel lattice.
bool dprime_lattice_matches(const Signature &sig, int k);

// Matrix of v |-> [letter, v] from degree k to k+1.
IntMatrix ad_matrix(const Signature &sig, int letter, int k);
const LinearSolver &ad_solver(const Signature &sig, int letter, int k);

// Full column rank for k >= 2; kernel exactly the span of the letter at k = 1.
bool ad_injective_as_expected(const Signature &sig, int letter, int k);

Integer h3_rank(const Signature &sig, int k);

struct RankRow {
  int k = 1;
  Integer witt, dkH, dkHprime, h3;
  std::optional<Integer> q_milnor, q_johnson0, q_mid_a, q_mid_k;
};

struct RankTable {
  Signature sig;
  std::vector<RankRow> rows;
};

RankTable rank_table(const Signature &sig, int kmax);

} // namespace nilcyl
