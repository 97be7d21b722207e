#include <algorithm>
#include <set>

#include "doctest.h"
#include "khc/errors.hpp"
#include "khc/fingroup/character_table.hpp"

using namespace khc;

namespace {

Mat2 quat(const CycNum& a, const CycNum& b, const CycNum& c, const CycNum& d) {
  const CycNum i = CycNum::zeta(4);
  return {a + b * i, c + d * i, -c + d * i, a - b * i};
}

GroupPtr cyclic(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = (i + 1) % n;
  return group_from_permutations({p}).group;
}

GroupPtr q8() {
  const CycNum z(0), o(1);
  const Mat2 gens[] = {quat(z, o, z, z), quat(z, z, o, z)};
  return group_from_matrices(gens).group;
}

GroupPtr binary_tetrahedral() {
  const CycNum z(0), o(1), h(Rational(1, 2));
  const Mat2 gens[] = {quat(z, o, z, z), quat(h, h, h, h)};
  return group_from_matrices(gens).group;
}

GroupPtr binary_octahedral() {
  const CycNum z(0), o(1), h(Rational(1, 2));
  const CycNum r = (CycNum::zeta(8) + CycNum::zeta(8, 7)) * CycNum(Rational(1, 2));  // 1/sqrt2
  const Mat2 gens[] = {quat(z, o, z, z), quat(h, h, h, h), quat(r, r, z, z)};
  return group_from_matrices(gens).group;
}

GroupPtr binary_icosahedral() {
  const CycNum z(0), h(Rational(1, 2));
  const CycNum phi_inv = CycNum::zeta(5) + CycNum::zeta(5, 4);
  const CycNum phi = phi_inv + CycNum(1);
  const Mat2 gens[] = {quat(h, h, h, h), quat(phi * h, phi_inv * h, h, z)};
  return group_from_matrices(gens).group;
}

// Normal subgroups as class unions that happen to be subgroups.
std::set<std::vector<int>> normal_subgroups_by_class_unions(const GroupPtr& g) {
  const auto cc = conjugacy_classes(*g);
  const std::size_t k = cc.size();
  std::set<std::vector<int>> out;
  for (unsigned long mask = 0; mask < (1UL << (k - 1)); ++mask) {
    std::vector<int> elems = cc.classes[0];
    for (std::size_t c = 1; c < k; ++c)
      if (mask & (1UL << (c - 1))) elems.insert(elems.end(), cc.classes[c].begin(), cc.classes[c].end());
    std::vector<bool> in(g->order(), false);
    for (int x : elems) in[static_cast<std::size_t>(x)] = true;
    bool closed = true;
    for (int a : elems)
      for (int b : elems) closed = closed && in[static_cast<std::size_t>(g->mul(a, b))];
    if (!closed) continue;
    std::sort(elems.begin(), elems.end());
    out.insert(elems);
  }
  return out;
}

void check_orthogonality(const CharacterTable& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j)
      CHECK(inner_product(t, t.values[i], t.values[j]) == CycNum(i == j ? 1 : 0));
  // Column orthogonality: sum_chi chi(K) conj(chi(L)) = delta |C_G(K)|.
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b) {
      CycNum s(0);
      for (std::size_t i = 0; i < t.size(); ++i) s += t.values[i][a] * t.values[i][b].conj();
      const long expected = a == b ? static_cast<long>(t.group_order / t.class_size(a)) : 0;
      CHECK(s == CycNum(expected));
    }
}

std::vector<std::size_t> class_sizes(const ConjugacyClasses& cc) {
  std::vector<std::size_t> out;
  for (const auto& c : cc.classes) out.push_back(c.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("group closure orders") {
  CHECK(cyclic(7)->order() == 7);
  CHECK(q8()->order() == 8);
  CHECK(binary_tetrahedral()->order() == 24);
  CHECK(binary_octahedral()->order() == 48);
  CHECK(binary_icosahedral()->order() == 120);
}

TEST_CASE("matrix closure rejects bad generators") {
  const Mat2 singular{CycNum(1), CycNum(1), CycNum(1), CycNum(1)};
  CHECK_THROWS_AS(group_from_matrices(std::span<const Mat2>(&singular, 1)), NotInvertible);
  const Mat2 infinite{CycNum(1), CycNum(1), CycNum(0), CycNum(1)};
  CHECK_THROWS_AS(group_from_matrices(std::span<const Mat2>(&infinite, 1), 1000), ClosureBudgetExceeded);
  const Mat2 det2{CycNum(2), CycNum(0), CycNum(0), CycNum(1)};
  CHECK_THROWS_AS(group_from_matrices(std::span<const Mat2>(&det2, 1)), NotInvertible);
}

TEST_CASE("multiplication table validation") {
  CHECK_THROWS_AS(FinGroup({0, 1, 1, 1}, 2), SchemaError);  // no inverse for 1
  CHECK_THROWS_AS(FinGroup({0, 1}, 2), SchemaError);
  // A non-associative loop of order 5.
  const std::vector<int> bad{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  CHECK_THROWS_AS(FinGroup(bad, 5), SchemaError);
}

TEST_CASE("conjugacy classes") {
  SUBCASE("Q8") {
    const auto cc = conjugacy_classes(*q8());
    CHECK(cc.size() == 5);
    CHECK(class_sizes(cc) == std::vector<std::size_t>{1, 1, 2, 2, 2});
    CHECK(cc.classes[0] == std::vector<int>{q8()->identity()});
  }
  SUBCASE("binary polyhedral") {
    CHECK(conjugacy_classes(*binary_tetrahedral()).size() == 7);
    CHECK(conjugacy_classes(*binary_octahedral()).size() == 8);
    CHECK(conjugacy_classes(*binary_icosahedral()).size() == 9);
  }
}

TEST_CASE("normal subgroups agree with class-union enumeration") {
  for (const auto& g : {cyclic(6), cyclic(12), q8(), binary_tetrahedral(), binary_octahedral(), binary_icosahedral()}) {
    const auto ns = normal_subgroups(g);
    std::set<std::vector<int>> got;
    for (const auto& n : ns) {
      CHECK(is_normal(n));
      got.insert(n.elements());
    }
    CHECK(got == normal_subgroups_by_class_unions(g));
    CHECK(std::is_sorted(ns.begin(), ns.end()));
  }
  CHECK(normal_subgroups(cyclic(6)).size() == 4);
  CHECK(normal_subgroups(q8()).size() == 6);
  CHECK(normal_subgroups(binary_icosahedral()).size() == 3);
  CHECK(normal_subgroups(cyclic(48)).size() == 10);
}

TEST_CASE("quotients") {
  SUBCASE("Q8 by its center is the Klein four-group") {
    const auto g = q8();
    const auto ns = normal_subgroups(g);
    const auto& center = ns[1];
    REQUIRE(center.order() == 2);
    const Quotient q = quotient(center);
    CHECK(q.group->order() == 4);
    CHECK(q.group->is_abelian());
    CHECK(q.group->exponent() == 2);
    for (std::size_t a = 0; a < g->order(); ++a)
      for (std::size_t b = 0; b < g->order(); ++b)
        CHECK(q.projection[static_cast<std::size_t>(g->mul(static_cast<int>(a), static_cast<int>(b)))] ==
              q.group->mul(q.projection[a], q.projection[b]));
  }
  SUBCASE("2O by 2T") {
    const auto g = binary_octahedral();
    const auto ns = normal_subgroups(g);
    const auto it = std::find_if(ns.begin(), ns.end(), [](const Subgroup& n) { return n.order() == 24; });
    REQUIRE(it != ns.end());
    CHECK(quotient(*it).group->order() == 2);
  }
  SUBCASE("non-normal subgroup") {
    const auto g = binary_octahedral();
    // An element of order 8 generates a cyclic subgroup that is not normal.
    int x = -1;
    for (std::size_t a = 0; a < g->order(); ++a)
      if (g->element_order(static_cast<int>(a)) == 8) x = static_cast<int>(a);
    REQUIRE(x >= 0);
    const int gens[] = {x};
    const Subgroup h = generated_subgroup(g, gens);
    CHECK(h.order() == 8);
    CHECK_FALSE(is_normal(h));
    CHECK_THROWS_AS(quotient(h), NotNormal);
  }
}

TEST_CASE("closures and commutators") {
  const auto g = binary_tetrahedral();
  CHECK(commutator_subgroup(g).order() == 8);
  CHECK(commutator_subgroup(q8()).order() == 2);
  CHECK(commutator_subgroup(binary_icosahedral()).order() == 120);
  // Normal closure of an element of order 4 in 2T is Q8.
  int x = -1;
  for (std::size_t a = 0; a < g->order(); ++a)
    if (g->element_order(static_cast<int>(a)) == 4) x = static_cast<int>(a);
  const int seed[] = {x};
  CHECK(normal_closure(g, seed).order() == 8);
  const auto emb = as_group(normal_closure(g, seed));
  CHECK(emb.group->order() == 8);
  CHECK(conjugacy_classes(*emb.group).size() == 5);
  CHECK(emb.group->identity() == 0);
}

TEST_CASE("cyclic character table matches the closed form") {
  for (int n : {1, 2, 5, 12}) {
    const auto g = cyclic(n);
    const auto t = character_table(*g);
    REQUIRE(t.size() == static_cast<std::size_t>(n));
    // Each row is g^k -> w^k for some n-th root of unity w; all distinct.
    int gen = -1;
    for (std::size_t a = 0; a < g->order(); ++a)
      if (g->element_order(static_cast<int>(a)) == n) gen = static_cast<int>(a);
    std::set<int> seen;
    for (std::size_t i = 0; i < t.size(); ++i) {
      int match = -1;
      for (int j = 0; j < n && match < 0; ++j) {
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) ok = t.value(i, g->power(gen, k)) == CycNum::zeta(n, static_cast<long>(j) * k);
        if (ok) match = j;
      }
      CHECK(match >= 0);
      seen.insert(match);
    }
    CHECK(seen.size() == static_cast<std::size_t>(n));
    CHECK(seen.count(0));
    check_orthogonality(t);
  }
}

TEST_CASE("binary dihedral character table matches the closed form") {
  // Order 4m, generators a = diag(z_2m, z_2m^-1), b = [[0,1],[-1,0]].
  for (int m : {2, 3, 5}) {
    const Mat2 gens[] = {{CycNum::zeta(2 * m), CycNum(0), CycNum(0), CycNum::zeta(2 * m, 2 * m - 1)},
                         {CycNum(0), CycNum(1), CycNum(-1), CycNum(0)}};
    const auto mg = group_from_matrices(gens);
    const auto t = character_table(*mg.group);
    CHECK(t.size() == static_cast<std::size_t>(m + 3));
    check_orthogonality(t);
    const auto lin = one_dim_characters(t);
    CHECK(lin.size() == 4);
    // Two-dimensional characters: z^jk + z^-jk on diagonal elements, 0 elsewhere.
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.degrees[i] != 2) continue;
      bool matched = false;
      for (int j = 1; j < m && !matched; ++j) {
        bool ok = true;
        for (std::size_t e = 0; e < mg.group->order() && ok; ++e) {
          const Mat2& x = mg.matrices[e];
          CycNum want(0);
          if (x.b.is_zero()) {
            CycNum p(1), q(1);
            for (int s = 0; s < j; ++s) {
              p *= x.a;
              q *= x.a.conj();
            }
            want = p + q;
          }
          ok = t.value(i, static_cast<int>(e)) == want;
        }
        matched = ok;
      }
      CHECK(matched);
    }
  }
}

TEST_CASE("binary polyhedral character degrees and orthogonality") {
  const auto t8 = character_table(*q8());
  CHECK(t8.degrees == std::vector<int>{1, 1, 1, 1, 2});
  check_orthogonality(t8);

  const auto t24 = character_table(*binary_tetrahedral());
  CHECK(t24.degrees == std::vector<int>{1, 1, 1, 2, 2, 2, 3});
  check_orthogonality(t24);

  const auto t48 = character_table(*binary_octahedral());
  CHECK(t48.degrees == std::vector<int>{1, 1, 2, 2, 2, 3, 3, 4});
  check_orthogonality(t48);

  const auto t120 = character_table(*binary_icosahedral());
  CHECK(t120.degrees == std::vector<int>{1, 2, 2, 3, 3, 4, 4, 5, 6});
  check_orthogonality(t120);
}

TEST_CASE("character table is deterministic") {
  const auto a = character_table(*binary_octahedral());
  const auto b = character_table(*binary_octahedral());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("kernels of linear characters") {
  const auto g = binary_tetrahedral();
  const auto t = character_table(*g);
  const auto lin = one_dim_characters(t);
  REQUIRE(lin.size() == 3);
  CHECK(character_kernel(g, t, lin[0]).order() == 24);
  CHECK(character_kernel(g, t, lin[1]).order() == 8);
  CHECK(character_kernel(g, t, lin[2]).order() == 8);
}

TEST_CASE("restriction of class functions") {
  const auto g = binary_octahedral();
  const auto t = character_table(*g);
  const auto ns = normal_subgroups(g);
  const auto it = std::find_if(ns.begin(), ns.end(), [](const Subgroup& n) { return n.order() == 24; });
  REQUIRE(it != ns.end());
  const auto sub = as_group(*it);
  const auto tsub = character_table(*sub.group);
  const auto r = restrict_class_function(t.values[0], t.classes, sub, tsub.classes);
  CHECK(inner_product(tsub, r, tsub.values[0]) == CycNum(1));
  // The 4-dimensional irreducible of 2O restricts to the sum of the two conjugate 2-dimensionals of 2T.
  const auto r4 = restrict_class_function(t.values.back(), t.classes, sub, tsub.classes);
  const auto mult = decompose(tsub, r4);
  CycNum norm(0);
  for (const auto& m : mult) norm += m * m;
  CHECK(norm == CycNum(2));
}
