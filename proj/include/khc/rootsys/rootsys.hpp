#pragma once

#include <optional>
#include <string>
#include <vector>

#include "khc/exactmath/lattice.hpp"

namespace khc {

/// Finite Cartan type, e.g. {'E', 7}. Valid: A1+, B2+, C2+, D4+, E6-8, F4, G2.
struct CartanType {
  char family = 'A';
  int rank = 1;

  /// Parses "A3", "e7", "D 5". Throws InvalidType.
  static CartanType parse(const std::string& label);
  std::string label() const { return std::string(1, family) + std::to_string(rank); }
  bool simply_laced() const { return family == 'A' || family == 'D' || family == 'E'; }
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

/// Point of h^* in fundamental-weight coordinates lambda_i = <lambda, alpha_i^vee>, i = 1..r.
using ParamPoint = RatVector;

/// Root system with Bourbaki numbering. Simple roots are 1-based in words and
/// node labels; vectors are 0-based (entry i-1 is node i). Index 0 in reflection
/// words is the affine reflection.
class RootSystem {
 public:
  explicit RootSystem(CartanType type);

  const CartanType& type() const noexcept { return type_; }
  int rank() const noexcept { return type_.rank; }

  /// a_ij = <alpha_j, alpha_i^vee>.
  const IntMatrix& cartan() const noexcept { return cartan_; }
  long cartan(int i, int j) const { return cartan_(i - 1, j - 1).get_si(); }
  /// Symmetric form on simple roots, (alpha_i, alpha_i) in {1, 2, 4, 6}.
  const IntMatrix& form() const noexcept { return form_; }

  /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
  const std::vector<std::vector<long>>& positive_roots() const noexcept { return positive_; }
  const std::vector<long>& highest_root() const noexcept { return theta_; }
  const std::vector<long>& highest_short_root() const noexcept { return theta_short_; }
  /// Coefficients of theta (marks) and theta^vee (comarks).
  const std::vector<long>& marks() const noexcept { return marks_; }
  const std::vector<long>& comarks() const noexcept { return comarks_; }
  /// Coefficients of the coroot defining the affine wall <lambda, theta_s^vee> = 1.
  /// Equal to the comarks for simply-laced types.
  const std::vector<long>& wall_coefficients() const noexcept { return wall_; }
  /// Root theta_s in fundamental-weight coordinates.
  const std::vector<long>& wall_root_fw() const noexcept { return wall_root_fw_; }

  /// Fundamental-weight coordinates of a root given in simple-root coordinates.
  std::vector<long> to_fw(const std::vector<long>& root) const;
  /// Coroot of a root, in simple-coroot coordinates.
  std::vector<long> coroot(const std::vector<long>& root) const;
  long norm(const std::vector<long>& root) const;

  /// (r+1)x(r+1) Cartan matrix of the affine diagram, node 0 first.
  const IntMatrix& affine_cartan() const noexcept { return affine_cartan_; }
  /// Coxeter exponent m_ij for 1 <= i, j <= r.
  int coxeter_m(int i, int j) const;

  /// s_i for i = 1..r, s_0 for the affine wall.
  ParamPoint reflect(int i, const ParamPoint& lambda) const;
  void reflect_in_place(int i, ParamPoint& lambda) const;
  /// Applies the word left to right (first letter first).
  ParamPoint apply_word(const std::vector<int>& word, ParamPoint lambda) const;
  /// lambda_0 = 1 - <lambda, theta_s^vee>.
  Rational affine_coordinate(const ParamPoint& lambda) const;
  /// Translation by an element of the root lattice given in simple-root coordinates.
  ParamPoint translate_by_root(const ParamPoint& lambda, const std::vector<long>& mu) const;

  /// Invariant factors of Lambda / Lambda_r (the nontrivial ones; empty = trivial group).
  std::vector<Integer> fundamental_group() const;
  Integer weyl_group_order() const;

 private:
  CartanType type_;
  IntMatrix cartan_;
  IntMatrix form_;
  IntMatrix affine_cartan_;
  std::vector<std::vector<long>> positive_;
  std::vector<long> theta_, theta_short_, marks_, comarks_, wall_, wall_root_fw_;
};

/// rho' = half sum of positive roots not supported on the levi subset, fw coordinates.
ParamPoint rho_prime(const RootSystem& rs, const std::vector<int>& levi);

/// Folding of a root system by a group of diagram automorphisms.
struct FoldedData {
  std::vector<std::vector<int>> orbits;               // node orbits, 1-based, sorted
  std::vector<std::vector<long>> orbit_sums;          // simple-root coordinates
  std::vector<RatVector> invariant_basis;             // fw coordinates, one per orbit
  std::vector<std::vector<int>> generator_words;      // longest element of each orbit parabolic
  IntMatrix root_lattice;                             // HNF rows, simple-root coordinates
  IntMatrix folded_cartan;                            // s_O(beta_P) = beta_P - a_OP beta_O
};

/// automorphisms: permutations of 1..r in one-line notation (entry i-1 is the image of node i).
/// Throws NotAutomorphism when a permutation does not preserve the Cartan matrix.
FoldedData fold(const RootSystem& rs, const std::vector<std::vector<int>>& automorphisms);

/// Size of the orbit of an invariant point under the folded generators, or nullopt past the budget.
std::optional<std::size_t> folded_orbit_size(const RootSystem& rs, const FoldedData& fd, const ParamPoint& point,
                                             std::size_t budget = 1000000);

/// Longest element of the parabolic subgroup generated by the given simple reflections.
std::vector<int> parabolic_longest_word(const RootSystem& rs, const std::vector<int>& nodes);

}  // namespace khc
