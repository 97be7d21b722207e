#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "khc/exactmath/cyclotomic.hpp"

namespace khc {

/// Finite group given by its full multiplication table.
///
/// Elements are indices 0..order-1. Validation (identity, inverses, associativity)
/// runs at construction; associativity is exhaustive up to order 512 and sampled
/// on 10^5 random triples above that.
class FinGroup {
 public:
  FinGroup(std::vector<int> mult, std::size_t order, std::vector<std::string> labels = {});

  std::size_t order() const noexcept { return order_; }
  int identity() const noexcept { return identity_; }
  int mul(int a, int b) const { return mult_[static_cast<std::size_t>(a) * order_ + static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  int power(int a, long k) const;
  int element_order(int a) const;
  /// lcm of element orders.
  int exponent() const;
  bool is_abelian() const;

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<int>& table() const noexcept { return mult_; }

 private:
  std::size_t order_;
  std::vector<int> mult_;
  int identity_ = 0;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FinGroup>;

/// Subgroup as a sorted set of element indices of a parent group.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<int> elements);

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<int>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  bool contains(int g) const { return member_[static_cast<std::size_t>(g)]; }
  bool is_subset_of(const Subgroup& other) const;
  bool is_trivial() const { return elements_.size() == 1; }
  bool is_whole() const { return elements_.size() == parent_->order(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements_ < b.elements_;
  }

 private:
  GroupPtr parent_;
  std::vector<int> elements_;
  std::vector<bool> member_;
};

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup whole_group(const GroupPtr& g);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

/// Subgroup generated by the given elements.
Subgroup generated_subgroup(const GroupPtr& g, std::span<const int> generators);
/// Smallest normal subgroup containing the seed.
Subgroup normal_closure(const GroupPtr& g, std::span<const int> seed);
/// Subgroup generated by both (the join in the subgroup lattice).
Subgroup join(const Subgroup& a, const Subgroup& b);
bool is_normal(const Subgroup& h);
Subgroup commutator_subgroup(const GroupPtr& g);

struct ConjugacyClasses {
  std::vector<std::vector<int>> classes;  // identity class first, then by least element
  std::vector<int> class_of;              // element -> class index
  std::size_t size() const { return classes.size(); }
};

ConjugacyClasses conjugacy_classes(const FinGroup& g);

/// All normal subgroups, sorted by order then by element set. Requires |G| <= 10^4.
std::vector<Subgroup> normal_subgroups(const GroupPtr& g);

struct Quotient {
  GroupPtr group;
  std::vector<int> projection;  // element of G -> element of G/N
  std::vector<int> coset_representatives;
};

/// G/N with cosets ordered by least representative. Throws NotNormal.
Quotient quotient(const Subgroup& n);

/// The subgroup as a group in its own right; embedding[i] is the parent index of element i.
struct EmbeddedGroup {
  GroupPtr group;
  std::vector<int> embedding;
};
EmbeddedGroup as_group(const Subgroup& h);

/// 2x2 matrix over a cyclotomic field.
struct Mat2 {
  CycNum a, b, c, d;
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y) = default;
  CycNum det() const { return a * d - b * c; }
  CycNum trace() const { return a + d; }
  static Mat2 identity() { return {CycNum(1), CycNum(0), CycNum(0), CycNum(1)}; }
};

struct GeneratedGroup {
  GroupPtr group;
  std::vector<std::vector<int>> words;  // element -> word in generator indices (BFS order)
};

struct MatrixGroup : GeneratedGroup {
  std::vector<Mat2> matrices;  // element -> matrix
};

/// Breadth-first closure of the generated matrix group. Element 0 is the identity.
/// Throws NotInvertible for singular generators and ClosureBudgetExceeded beyond the budget.
/// When require_det_one is set, every generator must have determinant 1.
MatrixGroup group_from_matrices(std::span<const Mat2> generators, std::size_t budget = 1000000,
                                bool require_det_one = true);

/// Group generated by permutations given in one-line notation on 0..m-1.
GeneratedGroup group_from_permutations(const std::vector<std::vector<int>>& generators, std::size_t budget = 1000000);

}  // namespace khc
