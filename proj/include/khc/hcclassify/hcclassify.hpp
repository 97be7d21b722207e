#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "khc/kleinian/kleinian.hpp"

namespace khc {

/// Intersection of the kernels of the linear characters attached (through the special
/// vertex bijection) to the Omega-stabilizer of canonical(lambda).
Subgroup gamma_prime(const KleinianGroup& k, const ParamPoint& lambda);

/// Kleinian structures on subgroups of a fixed top-level group, built on demand and cached.
/// Thread-safe.
class ClassificationContext {
 public:
  struct Level {
    KleinianGroup k;
    std::vector<int> embedding;  // local element -> top element
    std::vector<int> local;      // top element -> local element, -1 outside
  };

  explicit ClassificationContext(const KleinianGroup& top);

  const KleinianGroup& top() const { return top_->k; }
  std::shared_ptr<const Level> top_level() const { return top_; }
  /// Level for a nontrivial subgroup of the top group, given by sorted top element indices.
  std::shared_ptr<const Level> level(const std::vector<int>& top_elements);

 private:
  std::shared_ptr<const Level> top_;
  std::mutex mutex_;
  std::map<std::vector<int>, std::shared_ptr<const Level>> cache_;
};

struct IterativeStage {
  CartanType type;
  std::size_t order = 0;
  ParamPoint lambda;              // canonical parameter at this stage
  std::size_t gamma_prime_order = 0;
};

struct IterativeResult {
  Subgroup gamma_c;
  std::vector<IterativeStage> stages;
};

/// Iterative engine: descend through Gamma' until it stabilizes.
/// Throws UnsupportedE8 when an E8 stage is reached and Lemma54Violation when
/// supp(c) is not contained in Gamma'.
IterativeResult gamma_c_iterative(ClassificationContext& ctx, const ParamPoint& lambda);
IterativeResult gamma_c_iterative(const KleinianGroup& k, const ParamPoint& lambda);

struct SubgroupSearch {
  Subgroup subgroup;
  OrbitSearchResult result;
  bool implied = false;  // contains an earlier hit, so the subspace meets the orbit without a search
};

struct DirectResult {
  /// Unique minimal hit; for E8 only when no undecided subgroup lies below it.
  std::optional<Subgroup> gamma_c;
  std::vector<SubgroupSearch> searches;  // one per normal subgroup, ascending
  std::vector<Subgroup> candidates;      // E8: minimal subgroups that are hits or undecided
};

/// Direct engine: smallest normal subgroup whose support subspace meets W^a . lambda.
/// Throws NoUniqueMinimal (not for E8) and WeylBudgetExceeded.
DirectResult gamma_c_direct(const KleinianGroup& k, const ParamPoint& lambda, const OrbitSearchOptions& options = {});

/// Leaf of a singularity descriptor.
struct LeafRecord {
  CartanType type;
  std::vector<std::vector<int>> monodromy;  // permutations of the nodes 1..r, one-line, 1-based
  std::vector<int> phi;                     // images in the ambient group of the standard generators
  ParamPoint lambda;
};

struct SingularityDescriptor {
  GroupPtr group;
  std::vector<LeafRecord> leaves;
  std::optional<RatVector> lambda0;  // carried but unused
};

struct LeafOutcome {
  Subgroup local;          // Gamma_{i, lambda} inside the slice group
  std::vector<int> image;  // its image in the ambient group
  std::string engine;
};

struct Census {
  Subgroup gamma_lambda;
  std::size_t quotient_order = 0;
  std::size_t irreducibles = 0;
  std::vector<int> degrees;
  std::vector<LeafOutcome> leaves;
};

/// Extends phi along the standard-generator words; throws BadHomomorphism.
std::vector<int> extend_homomorphism(const KleinianGroup& slice, const FinGroup& target, const std::vector<int>& phi);

/// Checks the descriptor invariants. Throws BadHomomorphism, NotAutomorphism or SchemaError.
void validate_descriptor(const SingularityDescriptor& desc);

/// Global Gamma_lambda and the census of Gamma / Gamma_lambda.
/// Leaves are processed on up to `threads` threads; the result does not depend on it.
Census gamma_lambda_global(const SingularityDescriptor& desc, const OrbitSearchOptions& options = {},
                           unsigned threads = 1);

/// Random level-one parameter for cross-checks: a point of a random support subspace
/// (or a generic point), moved by a random W^a word and a random Omega element.
ParamPoint sample_parameter(const KleinianGroup& k, const std::vector<Subgroup>& normals, std::mt19937_64& rng);

}  // namespace khc
