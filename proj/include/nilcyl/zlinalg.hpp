#pragma once

#include "nilcyl/integer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilcyl {

using IntVector = std::vector<Integer>;

// Dense row-major integer matrix.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);

  static IntMatrix identity(int n);
  static IntMatrix from_columns(const std::vector<IntVector> &cols, int rows);
  static IntMatrix from_rows(const std::vector<IntVector> &rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Integer &operator()(int i, int j) { return a_[i * cols_ + j]; }
  const Integer &operator()(int i, int j) const { return a_[i * cols_ + j]; }

  IntVector row(int i) const;
  IntVector col(int j) const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix &o) const;
  IntVector operator*(const IntVector &v) const;
  bool operator==(const IntMatrix &o) const = default;

  std::string to_string() const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> a_;
};

struct SmithDecomposition {
  IntMatrix U, D, V; // U * A * V = D
  int rank = 0;
  std::vector<Integer> diagonal; // nonzero invariant factors
};

SmithDecomposition smith(const IntMatrix &A);

// Saturated basis of the integer kernel, as columns.
std::vector<IntVector> kernel_basis(const IntMatrix &A);

// Integer solution of A x = b, or nullopt.
std::optional<IntVector> solve(const IntMatrix &A, const IntVector &b);

int rank(const IntMatrix &A);

// Nontrivial invariant factors (> 1) of the cokernel followed by its free
// rank.
struct CokernelInvariants {
  std::vector<Integer> torsion;
  int free_rank = 0;
};
CokernelInvariants cokernel_invariants(const IntMatrix &A);

Integer determinant(const IntMatrix &A);

// Row Hermite form H = U * A with positive pivots and reduced entries
// above each pivot; zero rows are kept at the bottom.
struct HermiteForm {
  IntMatrix H, U;
  std::vector<int> pivots; // pivot column of each nonzero row
};
HermiteForm hermite(const IntMatrix &A, bool with_transform = true);

// Whether two lists of vectors span the same sublattice.
bool same_lattice(const std::vector<IntVector> &a,
                  const std::vector<IntVector> &b, int dim);

// Reusable solver for A x = b with fixed A.
class LinearSolver {
public:
  LinearSolver() = default;
  explicit LinearSolver(const IntMatrix &A);

  std::optional<IntVector> solve(const IntVector &b) const;
  int rank() const { return snf_.rank; }
  const SmithDecomposition &decomposition() const { return snf_; }

private:
  SmithDecomposition snf_;
  int rows_ = 0, cols_ = 0;
};

} // namespace nilcyl
