#include "khc/exactmath/lattice.hpp"

#include <algorithm>

namespace khc {

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  const std::size_t n = std::min(S.rows(), S.cols());
  for (std::size_t i = 0; i < n; ++i) d.push_back(S(i, i));
  return d;
}

namespace {

// Position of the smallest nonzero |entry| in the trailing block starting at (t, t).
bool find_min_pivot(const IntMatrix& S, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < S.rows(); ++i)
    for (std::size_t j = t; j < S.cols(); ++j) {
      if (S(i, j) == 0) continue;
      Integer a = abs(S(i, j));
      if (!found || a < best) {
        best = a;
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  SmithForm f{A, IntMatrix::identity(A.rows()), IntMatrix::identity(A.cols()), 0};
  IntMatrix& S = f.S;
  const std::size_t m = S.rows();
  const std::size_t n = S.cols();
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_min_pivot(S, t, pi, pj)) break;
    while (true) {
      S.swap_rows(t, pi);
      f.U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      f.V.swap_cols(t, pj);
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Integer q = S(i, t) / S(t, t);
        S.add_row_multiple(i, t, -q);
        f.U.add_row_multiple(i, t, -q);
        if (S(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Integer q = S(t, j) / S(t, t);
        S.add_col_multiple(j, t, -q);
        f.V.add_col_multiple(j, t, -q);
        if (S(t, j) != 0) dirty = true;
      }
      if (!dirty) {
        // Divisibility: fold an offending row into row t and continue.
        for (std::size_t i = t + 1; i < m && !dirty; ++i)
          for (std::size_t j = t + 1; j < n; ++j) {
            if (S(i, j) % S(t, t) != 0) {
              S.add_row_multiple(t, i, Integer(1));
              f.U.add_row_multiple(t, i, Integer(1));
              dirty = true;
              break;
            }
          }
      }
      if (!dirty) break;
      find_min_pivot(S, t, pi, pj);
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      f.U.negate_row(t);
    }
  }
  f.rank = t;
  return f;
}

IntMatrix hermite_normal_form(const IntMatrix& A) {
  IntMatrix H = A;
  const std::size_t m = H.rows();
  const std::size_t n = H.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    // Euclid on column `col` among rows >= row.
    while (true) {
      std::size_t best = m;
      for (std::size_t i = row; i < m; ++i) {
        if (H(i, col) == 0) continue;
        if (best == m || abs(H(i, col)) < abs(H(best, col))) best = i;
      }
      if (best == m) break;
      H.swap_rows(row, best);
      bool done = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (H(i, col) == 0) continue;
        Integer q = H(i, col) / H(row, col);
        H.add_row_multiple(i, row, -q);
        if (H(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (row < m && H(row, col) != 0) {
      if (H(row, col) < 0) H.negate_row(row);
      for (std::size_t i = 0; i < row; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, col).get_mpz_t(), H(row, col).get_mpz_t());
        if (q != 0) H.add_row_multiple(i, row, -q);
      }
      ++row;
    }
  }
  IntMatrix out(row, n);
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = H(i, j);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& A) {
  const SmithForm f = smith_normal_form(A);
  const std::size_t n = A.cols();
  IntMatrix K(n, n - f.rank);
  for (std::size_t j = f.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) K(i, j - f.rank) = f.V(i, j);
  return K;
}

CokernelInvariants cokernel_invariants(const IntMatrix& A) {
  const SmithForm f = smith_normal_form(A);
  CokernelInvariants out;
  for (std::size_t i = 0; i < f.rank; ++i)
    if (f.S(i, i) > 1) out.torsion.push_back(f.S(i, i));
  out.free_rank = A.rows() - f.rank;
  return out;
}

std::string InfeasibilityCertificate::describe() const {
  if (divisor == 0) return "row " + std::to_string(index) + ": 0 = " + to_string(value);
  return "row " + std::to_string(index) + ": " + to_string(divisor) + " does not divide " + to_string(value);
}

void integerize_rows(const RatMatrix& A, std::span<const Rational> b, IntMatrix& A_out, IntVector& b_out) {
  A_out = IntMatrix(A.rows(), A.cols());
  b_out.assign(A.rows(), Integer(0));
  for (std::size_t i = 0; i < A.rows(); ++i) {
    Integer d = b[i].get_den();
    for (std::size_t j = 0; j < A.cols(); ++j) d = lcm(d, A(i, j).get_den());
    for (std::size_t j = 0; j < A.cols(); ++j) {
      Rational scaled = A(i, j) * d;
      A_out(i, j) = scaled.get_num();
    }
    Rational sb = b[i] * d;
    b_out[i] = sb.get_num();
  }
}

LatticeSolution lattice_point_in_affine(const RatMatrix& A, std::span<const Rational> b) {
  IntMatrix M;
  IntVector rhs;
  integerize_rows(A, b, M, rhs);
  const SmithForm f = smith_normal_form(M);
  const IntVector ub = f.U.apply(std::span<const Integer>(rhs));
  IntVector y(A.cols(), Integer(0));
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < f.rank) {
      const Integer& s = f.S(i, i);
      if (ub[i] % s != 0) return {std::nullopt, InfeasibilityCertificate{i, Rational(ub[i]), s}};
      y[i] = ub[i] / s;
    } else if (ub[i] != 0) {
      return {std::nullopt, InfeasibilityCertificate{i, Rational(ub[i]), Integer(0)}};
    }
  }
  return {f.V.apply(std::span<const Integer>(y)), std::nullopt};
}

}  // namespace khc
