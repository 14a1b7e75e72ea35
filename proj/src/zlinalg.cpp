#include "nilcyl/zlinalg.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace nilcyl {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = static_cast<int>(init.size());
  cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
  a_.reserve(rows_ * cols_);
  for (const auto &r : init) {
    if (static_cast<int>(r.size()) != cols_)
      throw std::invalid_argument("ragged matrix literal");
    for (long v : r)
      a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix I(n, n);
  for (int i = 0; i < n; ++i)
    I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector> &cols,
                                  int rows) {
  IntMatrix M(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < M.cols(); ++j) {
    if (static_cast<int>(cols[j].size()) != rows)
      throw std::invalid_argument("column length mismatch");
    for (int i = 0; i < rows; ++i)
      M(i, j) = cols[j][i];
  }
  return M;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector> &rows, int cols) {
  IntMatrix M(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < M.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols)
      throw std::invalid_argument("row length mismatch");
    for (int j = 0; j < cols; ++j)
      M(i, j) = rows[i][j];
  }
  return M;
}

IntVector IntMatrix::row(int i) const {
  return IntVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

IntVector IntMatrix::col(int j) const {
  IntVector v(rows_);
  for (int i = 0; i < rows_; ++i)
    v[i] = (*this)(i, j);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      T(j, i) = (*this)(i, j);
  return T;
}

IntMatrix IntMatrix::operator*(const IntMatrix &o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument("matrix shape mismatch");
  IntMatrix R(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Integer &a = (*this)(i, k);
      if (sgn(a) == 0)
        continue;
      for (int j = 0; j < o.cols_; ++j)
        mpz_addmul(R(i, j).get_mpz_t(), a.get_mpz_t(), o(k, j).get_mpz_t());
    }
  return R;
}

IntVector IntMatrix::operator*(const IntVector &v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("vector length mismatch");
  IntVector r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      mpz_addmul(r[i].get_mpz_t(), (*this)(i, j).get_mpz_t(),
                 v[j].get_mpz_t());
  return r;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j)
      os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

// In-place Smith reduction with optional transforms.
class SmithWorker {
public:
  SmithWorker(const IntMatrix &A, bool want_u, bool want_v)
      : A_(A), m_(A.rows()), n_(A.cols()), want_u_(want_u), want_v_(want_v) {
    if (want_u_)
      U_ = IntMatrix::identity(m_);
    if (want_v_)
      V_ = IntMatrix::identity(n_);
  }

  void run() {
    const int lim = std::min(m_, n_);
    for (t_ = 0; t_ < lim; ++t_) {
      if (!choose_pivot())
        break;
      reduce_at_pivot();
      rank_ = t_ + 1;
    }
    for (int i = 0; i < rank_; ++i)
      if (sgn(A_(i, i)) < 0) {
        negate_row(A_, i);
        if (want_u_)
          negate_row(U_, i);
      }
  }

  IntMatrix A_, U_, V_;
  int rank_ = 0;

private:
  int m_, n_;
  bool want_u_, want_v_;
  int t_ = 0;

  static void negate_row(IntMatrix &M, int i) {
    for (int j = 0; j < M.cols(); ++j)
      mpz_neg(M(i, j).get_mpz_t(), M(i, j).get_mpz_t());
  }

  static void swap_rows(IntMatrix &M, int a, int b) {
    if (a == b)
      return;
    for (int j = 0; j < M.cols(); ++j)
      mpz_swap(M(a, j).get_mpz_t(), M(b, j).get_mpz_t());
  }

  static void swap_cols(IntMatrix &M, int a, int b) {
    if (a == b)
      return;
    for (int i = 0; i < M.rows(); ++i)
      mpz_swap(M(i, a).get_mpz_t(), M(i, b).get_mpz_t());
  }

  // row_dst -= q * row_src, touching only nonzero entries of row_src.
  static void row_submul(IntMatrix &M, int dst, int src, const Integer &q) {
    for (int j = 0; j < M.cols(); ++j) {
      const Integer &s = M(src, j);
      if (sgn(s) != 0)
        mpz_submul(M(dst, j).get_mpz_t(), q.get_mpz_t(), s.get_mpz_t());
    }
  }

  static void col_submul(IntMatrix &M, int dst, int src, const Integer &q) {
    for (int i = 0; i < M.rows(); ++i) {
      const Integer &s = M(i, src);
      if (sgn(s) != 0)
        mpz_submul(M(i, dst).get_mpz_t(), q.get_mpz_t(), s.get_mpz_t());
    }
  }

  void move_to_pivot(int pi, int pj) {
    swap_rows(A_, t_, pi);
    if (want_u_)
      swap_rows(U_, t_, pi);
    swap_cols(A_, t_, pj);
    if (want_v_)
      swap_cols(V_, t_, pj);
  }

  // Smallest nonzero |entry| in the active block, ties row-major.
  bool choose_pivot() {
    int bi = -1, bj = -1;
    for (int i = t_; i < m_; ++i)
      for (int j = t_; j < n_; ++j) {
        const Integer &v = A_(i, j);
        if (sgn(v) == 0)
          continue;
        if (bi < 0 || mpz_cmpabs(v.get_mpz_t(), A_(bi, bj).get_mpz_t()) < 0) {
          bi = i;
          bj = j;
          if (mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0)
            goto found;
        }
      }
    if (bi < 0)
      return false;
  found:
    move_to_pivot(bi, bj);
    return true;
  }

  // Re-pick the pivot among row t and column t after a failed clearance.
  void repivot_cross() {
    int bi = t_, bj = t_;
    auto consider = [&](int i, int j) {
      const Integer &v = A_(i, j);
      if (sgn(v) == 0)
        return;
      if (sgn(A_(bi, bj)) == 0 ||
          mpz_cmpabs(v.get_mpz_t(), A_(bi, bj).get_mpz_t()) < 0) {
        bi = i;
        bj = j;
      }
    };
    for (int j = t_ + 1; j < n_; ++j)
      consider(t_, j);
    for (int i = t_ + 1; i < m_; ++i)
      consider(i, t_);
    move_to_pivot(bi, bj);
  }

  void reduce_at_pivot() {
    Integer q;
    for (;;) {
      bool clean = true;
      for (int i = t_ + 1; i < m_; ++i) {
        if (sgn(A_(i, t_)) == 0)
          continue;
        mpz_tdiv_q(q.get_mpz_t(), A_(i, t_).get_mpz_t(), A_(t_, t_).get_mpz_t());
        if (sgn(q) != 0) {
          row_submul(A_, i, t_, q);
          if (want_u_)
            row_submul(U_, i, t_, q);
        }
        if (sgn(A_(i, t_)) != 0)
          clean = false;
      }
      for (int j = t_ + 1; j < n_; ++j) {
        if (sgn(A_(t_, j)) == 0)
          continue;
        mpz_tdiv_q(q.get_mpz_t(), A_(t_, j).get_mpz_t(), A_(t_, t_).get_mpz_t());
        if (sgn(q) != 0) {
          col_submul(A_, j, t_, q);
          if (want_v_)
            col_submul(V_, j, t_, q);
        }
        if (sgn(A_(t_, j)) != 0)
          clean = false;
      }
      if (!clean) {
        repivot_cross();
        continue;
      }
      if (mpz_cmpabs_ui(A_(t_, t_).get_mpz_t(), 1) == 0)
        return;
      int bad = -1;
      for (int i = t_ + 1; i < m_ && bad < 0; ++i)
        for (int j = t_ + 1; j < n_; ++j)
          if (sgn(A_(i, j)) != 0 &&
              !mpz_divisible_p(A_(i, j).get_mpz_t(), A_(t_, t_).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0)
        return;
      // row_t += row_bad
      Integer minus_one = -1;
      row_submul(A_, t_, bad, minus_one);
      if (want_u_)
        row_submul(U_, t_, bad, minus_one);
    }
  }
};

} // namespace

SmithDecomposition smith(const IntMatrix &A) {
  SmithWorker w(A, true, true);
  w.run();
  SmithDecomposition d{std::move(w.U_), std::move(w.A_), std::move(w.V_),
                       w.rank_, {}};
  for (int i = 0; i < d.rank; ++i)
    d.diagonal.push_back(d.D(i, i));
  if (d.U * A * d.V != d.D)
    throw std::logic_error("Smith decomposition failed verification");
  return d;
}

std::vector<IntVector> kernel_basis(const IntMatrix &A) {
  SmithWorker w(A, false, true);
  w.run();
  std::vector<IntVector> out;
  for (int j = w.rank_; j < A.cols(); ++j)
    out.push_back(w.V_.col(j));
  for (const auto &v : out)
    for (const auto &x : A * v)
      if (x != 0)
        throw std::logic_error("kernel vector failed verification");
  return out;
}

int rank(const IntMatrix &A) {
  SmithWorker w(A, false, false);
  w.run();
  return w.rank_;
}

CokernelInvariants cokernel_invariants(const IntMatrix &A) {
  SmithWorker w(A, false, false);
  w.run();
  CokernelInvariants c;
  for (int i = 0; i < w.rank_; ++i)
    if (w.A_(i, i) != 1)
      c.torsion.push_back(w.A_(i, i));
  c.free_rank = A.rows() - w.rank_;
  return c;
}

LinearSolver::LinearSolver(const IntMatrix &A)
    : snf_(smith(A)), rows_(A.rows()), cols_(A.cols()) {}

std::optional<IntVector> LinearSolver::solve(const IntVector &b) const {
  if (static_cast<int>(b.size()) != rows_)
    throw std::invalid_argument("right-hand side length mismatch");
  const IntVector c = snf_.U * b;
  IntVector y(cols_);
  for (int i = 0; i < rows_; ++i) {
    if (i < snf_.rank) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), snf_.diagonal[i].get_mpz_t()))
        return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(),
                   snf_.diagonal[i].get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf_.V * y;
}

std::optional<IntVector> solve(const IntMatrix &A, const IntVector &b) {
  return LinearSolver(A).solve(b);
}

Integer determinant(const IntMatrix &A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("determinant of a non-square matrix");
  const int n = A.rows();
  if (n == 0)
    return 1;
  IntMatrix M = A;
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (sgn(M(k, k)) == 0) {
      int p = k + 1;
      while (p < n && sgn(M(p, k)) == 0)
        ++p;
      if (p == n)
        return 0;
      for (int j = 0; j < n; ++j)
        mpz_swap(M(k, j).get_mpz_t(), M(p, j).get_mpz_t());
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Integer v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

HermiteForm hermite(const IntMatrix &A, bool with_transform) {
  const int m = A.rows(), n = A.cols();
  HermiteForm hf{A, with_transform ? IntMatrix::identity(m) : IntMatrix(), {}};
  IntMatrix &H = hf.H;
  auto row_op = [&](int dst, int src, const Integer &q) {
    for (int j = 0; j < n; ++j)
      if (sgn(H(src, j)) != 0)
        mpz_submul(H(dst, j).get_mpz_t(), q.get_mpz_t(), H(src, j).get_mpz_t());
    if (with_transform)
      for (int j = 0; j < m; ++j)
        if (sgn(hf.U(src, j)) != 0)
          mpz_submul(hf.U(dst, j).get_mpz_t(), q.get_mpz_t(),
                     hf.U(src, j).get_mpz_t());
  };
  auto swap_row = [&](int a, int b) {
    if (a == b)
      return;
    for (int j = 0; j < n; ++j)
      mpz_swap(H(a, j).get_mpz_t(), H(b, j).get_mpz_t());
    if (with_transform)
      for (int j = 0; j < m; ++j)
        mpz_swap(hf.U(a, j).get_mpz_t(), hf.U(b, j).get_mpz_t());
  };
  int r = 0;
  Integer q;
  for (int c = 0; c < n && r < m; ++c) {
    for (;;) {
      int best = -1;
      for (int i = r; i < m; ++i)
        if (sgn(H(i, c)) != 0 &&
            (best < 0 ||
             mpz_cmpabs(H(i, c).get_mpz_t(), H(best, c).get_mpz_t()) < 0))
          best = i;
      if (best < 0)
        break;
      swap_row(r, best);
      bool clean = true;
      for (int i = r + 1; i < m; ++i) {
        if (sgn(H(i, c)) == 0)
          continue;
        mpz_tdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
        row_op(i, r, q);
        if (sgn(H(i, c)) != 0)
          clean = false;
      }
      if (clean)
        break;
    }
    if (sgn(H(r, c)) == 0)
      continue;
    if (sgn(H(r, c)) < 0)
      row_op(r, r, Integer(2)); // negate: row -= 2*row
    for (int i = 0; i < r; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
      if (sgn(q) != 0)
        row_op(i, r, q);
    }
    hf.pivots.push_back(c);
    ++r;
  }
  return hf;
}

bool same_lattice(const std::vector<IntVector> &a,
                  const std::vector<IntVector> &b, int dim) {
  auto canon = [dim](const std::vector<IntVector> &v) {
    HermiteForm hf = hermite(IntMatrix::from_rows(v, dim), false);
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < hf.pivots.size(); ++i)
      rows.push_back(hf.H.row(static_cast<int>(i)));
    return rows;
  };
  return canon(a) == canon(b);
}

} // namespace nilcyl
