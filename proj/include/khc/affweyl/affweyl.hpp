#pragma once

#include <optional>
#include <string>
#include <vector>

#include "khc/rootsys/rootsys.hpp"

namespace khc {

/// Result of reducing a point into the closed fundamental alcove.
struct AlcoveForm {
  ParamPoint canonical;
  std::vector<int> word;   // reflections applied to the input, first letter first; 0 is affine
  std::vector<int> facet;  // nodes 0..r whose affine coordinate vanishes at the canonical point
};

/// Deterministic: always reflects at the smallest index 0..r with a negative coordinate.
AlcoveForm alcove_reduce(const RootSystem& rs, const ParamPoint& lambda);
ParamPoint canonical(const RootSystem& rs, const ParamPoint& lambda);
/// All r+1 affine coordinates (lambda_0, lambda_1, ..., lambda_r).
RatVector affine_coordinates(const RootSystem& rs, const ParamPoint& lambda);

/// Element of the extended affine Weyl group preserving the fundamental alcove.
/// Acts by lambda -> linear * lambda + translation.
struct OmegaElement {
  std::vector<int> linear_word;  // in s_1..s_r, first letter applied first
  std::vector<int> affine_word;  // W^a part as produced by alcove reduction (may contain 0)
  int minuscule = 0;             // j with translation part omega_j before the W^a correction; 0 = identity
  IntMatrix linear;
  IntVector translation;         // in Lambda, fw coordinates
  std::vector<int> node_permutation;  // node i -> node_permutation[i], i = 0..r

  ParamPoint apply(const ParamPoint& lambda) const;
};

/// Omega, identity first, then by minuscule index.
std::vector<OmegaElement> omega_group(const RootSystem& rs);

/// Indices into omega_group(rs) of the elements fixing canonical(lambda).
std::vector<std::size_t> extended_stabilizer(const RootSystem& rs, const std::vector<OmegaElement>& omega,
                                             const ParamPoint& lambda);

/// Index into omega of the composite a after b (apply b first).
std::size_t omega_compose(const std::vector<OmegaElement>& omega, std::size_t a, std::size_t b);

/// Word in s_1..s_r for the reflection in a positive root.
std::vector<int> root_reflection_word(const RootSystem& rs, const std::vector<long>& root);

/// Affine subspace x0 + span(directions) in fw coordinates.
struct AffineSubspace {
  ParamPoint base;
  std::vector<RatVector> directions;
};

struct OrbitSearchOptions {
  std::size_t weyl_budget = 3000000;
  /// Maximal length of W-elements explored in bounded mode; 0 = exhaustive.
  /// Always used for E8 (with kDefaultE8Depth when 0).
  int depth_limit = 0;
};

inline constexpr int kDefaultE8Depth = 12;

struct OrbitSearchResult {
  enum class Status { Found, Infeasible, Unknown };
  Status status = Status::Infeasible;
  std::optional<ParamPoint> witness;
  std::size_t orbit_points = 0;  // W-orbit points examined
  std::string note;
};

/// Decides whether W^a . lambda meets the affine subspace, returning a verified witness.
/// Throws WeylBudgetExceeded when the W-orbit is larger than the budget (except in bounded mode).
OrbitSearchResult orbit_meets_affine_subspace(const RootSystem& rs, const ParamPoint& lambda, const AffineSubspace& s,
                                              const OrbitSearchOptions& options = {});

/// Dominant representative of W . lambda.
ParamPoint dominant_representative(const RootSystem& rs, ParamPoint lambda);

}  // namespace khc
