#pragma once

#include <vector>

#include "khc/exactmath/cyclotomic.hpp"
#include "khc/fingroup/fingroup.hpp"

namespace khc {

/// Exact character table. values[i][k] is chi_i on class k, in Q(zeta_e), e the exponent.
/// Row 0 is the trivial character; the rest are sorted by degree, then by a fixed
/// total order on the value rows, so the table is reproducible.
struct CharacterTable {
  ConjugacyClasses classes;
  std::vector<std::vector<CycNum>> values;
  std::vector<int> degrees;
  std::size_t group_order = 0;
  int exponent = 1;

  std::size_t size() const { return values.size(); }
  std::size_t class_size(std::size_t k) const { return classes.classes[k].size(); }
  const CycNum& value(std::size_t chi, int element) const {
    return values[chi][static_cast<std::size_t>(classes.class_of[static_cast<std::size_t>(element)])];
  }
};

/// Dixon's method: simultaneous eigenvectors of the class matrices over F_p, lifted
/// to Q(zeta_e) through eigenvalue multiplicities. Throws CharacterBudgetExceeded
/// above order 10^5.
CharacterTable character_table(const FinGroup& g);

/// (1/|G|) sum_K |K| a_K conj(b_K).
CycNum inner_product(const CharacterTable& t, const std::vector<CycNum>& a, const std::vector<CycNum>& b);

/// Multiplicities of the irreducibles in a class function.
std::vector<CycNum> decompose(const CharacterTable& t, const std::vector<CycNum>& f);

std::vector<CycNum> pointwise_product(const std::vector<CycNum>& a, const std::vector<CycNum>& b);

/// Indices of the linear characters, in table order.
std::vector<std::size_t> one_dim_characters(const CharacterTable& t);

/// {g : chi(g) = chi(1)}.
Subgroup character_kernel(const GroupPtr& g, const CharacterTable& t, std::size_t chi);

/// Class function on G from a per-element function (value at the class representative).
std::vector<CycNum> class_function(const ConjugacyClasses& classes, const std::vector<CycNum>& per_element);

/// Restriction of a class function of G to a subgroup given as its own group.
std::vector<CycNum> restrict_class_function(const std::vector<CycNum>& values, const ConjugacyClasses& big,
                                            const EmbeddedGroup& sub, const ConjugacyClasses& small);

}  // namespace khc
