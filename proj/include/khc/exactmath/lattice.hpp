#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "khc/exactmath/matrix.hpp"

namespace khc {

/// U * A * V = S with U, V unimodular and S diagonal, d_1 | d_2 | ... (d_i >= 0).
struct SmithForm {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& A);

/// Row Hermite normal form of the lattice spanned by the rows of A; zero rows dropped.
/// Pivots are positive and entries above each pivot lie in [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& A);

/// Z-basis (as columns in a matrix with A.cols() rows) of {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& A);

/// Nontrivial invariant factors (> 1) of the cokernel Z^m / A Z^n, plus a count of free rank.
struct CokernelInvariants {
  std::vector<Integer> torsion;
  std::size_t free_rank = 0;
};
CokernelInvariants cokernel_invariants(const IntMatrix& A);

/// Why A x = b has no integer solution: in the Smith-transformed system
/// s_index * y_index = value must hold and does not (divisor 0 means value must vanish).
struct InfeasibilityCertificate {
  std::size_t index = 0;
  Rational value;
  Integer divisor;
  std::string describe() const;
};

struct LatticeSolution {
  std::optional<IntVector> solution;
  std::optional<InfeasibilityCertificate> certificate;
  bool feasible() const { return solution.has_value(); }
};

/// Decides whether the rational system A x = b has an integer solution x.
LatticeSolution lattice_point_in_affine(const RatMatrix& A, std::span<const Rational> b);

/// Scales each row of [A | b] by the lcm of its denominators.
void integerize_rows(const RatMatrix& A, std::span<const Rational> b, IntMatrix& A_out, IntVector& b_out);

}  // namespace khc
