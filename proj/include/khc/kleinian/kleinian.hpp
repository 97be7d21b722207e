#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "khc/affweyl/affweyl.hpp"
#include "khc/fingroup/character_table.hpp"

namespace khc {

/// Finite subgroup of SL_2 with its McKay labeling.
///
/// Standard generators (z_k a primitive k-th root of unity, quaternion q = a + bi + cj + dk
/// realized as [[a + bi, c + di], [-c + di, a - bi]]):
///   A_n: diag(z_{n+1}, z_{n+1}^-1)
///   D_n: diag(z_{2m}, z_{2m}^-1), [[0, 1], [-1, 0]]       with m = n - 2
///   E6:  i, (1 + i + j + k)/2
///   E7:  i, (1 + i + j + k)/2, (1 + i)/sqrt2              sqrt2 = z8 + z8^-1
///   E8:  (1 + i + j + k)/2, (phi + phi^-1 i + j)/2        phi^-1 = z5 + z5^4
struct KleinianGroup {
  CartanType type;
  std::shared_ptr<const RootSystem> root_system;
  GroupPtr group;
  std::vector<Mat2> matrices;               // element -> matrix
  std::vector<std::vector<int>> words;      // element -> word in the standard generators (top level only)
  std::vector<Mat2> generators;             // standard generators (top level only)
  CharacterTable table;
  std::vector<CycNum> natural;              // natural character on classes
  std::vector<int> node_of_char;            // irreducible -> affine node 0..r
  std::vector<int> char_of_node;            // affine node -> irreducible
  std::vector<long> node_dims;              // dim N_i for nodes 0..r (= marks, with 1 at node 0)
  std::vector<OmegaElement> omega;

  const RootSystem& rs() const { return *root_system; }
  int rank() const { return type.rank; }
  std::size_t order() const { return group->order(); }
};

/// McKay multiplicities m_ij = <chi_nat chi_i, chi_j> in character-table order.
std::vector<std::vector<long>> mckay_matrix(const CharacterTable& t, const std::vector<CycNum>& natural);

/// Standard generator matrices for an ADE type. Throws InvalidType for non-ADE types.
std::vector<Mat2> standard_generators(const CartanType& type);

/// Builds the group from the standard generators and labels it. Throws McKayMismatch.
KleinianGroup build_kleinian(const CartanType& type);

/// ADE type of a finite subgroup of SL_2 from order, commutativity and class count.
/// Returns nullopt for the trivial group; throws TypeIdFailure when nothing matches.
std::optional<CartanType> identify_ade_type(const FinGroup& g);

/// Kleinian structure on a group whose elements are realized by the given SL_2 matrices.
KleinianGroup kleinian_from_matrices(GroupPtr group, std::vector<Mat2> matrices, const CartanType& type);

/// c-parameter: value of c on each conjugacy class (table order); class 0 is the identity with c = 1.
struct KleinianParam {
  std::vector<CycNum> c;
};

/// Level-one coordinates lambda_i = T_i / |G|, T_i = sum_K c_K |K| chi_i(K), nodes 1..r.
/// Throws NonRationalParameter when a trace is not rational.
ParamPoint c_to_lambda(const KleinianGroup& k, const KleinianParam& c);
/// Trace coordinates T_0..T_r (level |G|), exact cyclotomic values.
std::vector<CycNum> trace_coordinates(const KleinianGroup& k, const KleinianParam& c);
KleinianParam lambda_to_c(const KleinianGroup& k, const ParamPoint& lambda);

/// Parameter lambda(c = 1): lambda_i = dim N_i / |G|.
ParamPoint unit_parameter(const KleinianGroup& k);

/// Rational points of lambda({c : c = 0 off N, c_1 = 1}).
AffineSubspace support_subspace(const KleinianGroup& k, const Subgroup& n);

/// Omega element index -> irreducible (a linear character). Throws BijectionFailure.
std::vector<std::size_t> special_vertex_bijection(const KleinianGroup& k);

/// Elements g with c_g != 0.
std::vector<int> support_elements(const KleinianGroup& k, const KleinianParam& c);

}  // namespace khc
