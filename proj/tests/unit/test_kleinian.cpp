#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "khc/errors.hpp"
#include "khc/kleinian/kleinian.hpp"
#include "test_support.hpp"

using namespace khc;

namespace {

const char* kAde[] = {"A1", "A2", "A3", "A4", "A7", "D4", "D5", "D6", "D7", "E6", "E7", "E8"};

const KleinianGroup& cached(const std::string& label) {
  static std::map<std::string, KleinianGroup> cache;
  auto it = cache.find(label);
  if (it == cache.end()) it = cache.emplace(label, build_kleinian(CartanType::parse(label))).first;
  return it->second;
}

KleinianParam param(std::initializer_list<CycNum> xs) { return KleinianParam{std::vector<CycNum>(xs)}; }

}  // namespace

TEST_CASE("group orders and degrees follow the affine marks") {
  const std::map<std::string, std::size_t> orders = {{"A1", 2},  {"A2", 3},  {"A3", 4},  {"A4", 5},
                                                     {"A7", 8},  {"D4", 8},  {"D5", 12}, {"D6", 16},
                                                     {"D7", 20}, {"E6", 24}, {"E7", 48}, {"E8", 120}};
  for (const char* label : kAde) {
    const auto& k = cached(label);
    CHECK(k.order() == orders.at(label));
    for (std::size_t v = 0; v < k.char_of_node.size(); ++v) {
      CHECK(k.table.degrees[static_cast<std::size_t>(k.char_of_node[v])] == k.node_dims[v]);
    }
    CHECK(k.char_of_node[0] == 0);
    for (const auto& m : k.matrices) CHECK(m.det() == CycNum(1));
  }
}

TEST_CASE("tensoring with the natural character sums over diagram neighbours") {
  // Checked on class values directly, independent of inner products.
  for (const char* label : kAde) {
    const auto& k = cached(label);
    const IntMatrix& ac = k.rs().affine_cartan();
    const std::size_t n = k.char_of_node.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto lhs = pointwise_product(k.natural, k.table.values[static_cast<std::size_t>(k.char_of_node[i])]);
      std::vector<CycNum> rhs(k.table.classes.size(), CycNum(0));
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const long w = -ac(i, j).get_si();
        for (std::size_t K = 0; K < rhs.size(); ++K) {
          rhs[K] += CycNum(w) * k.table.values[static_cast<std::size_t>(k.char_of_node[j])][K];
        }
      }
      CHECK_MESSAGE(lhs == rhs, label << " node " << i);
    }
  }
}

TEST_CASE("central line of the quaternion group") {
  const auto& k = cached("D4");
  const int minus_one = [&] {
    for (std::size_t g = 0; g < k.order(); ++g) {
      if (k.matrices[g] == Mat2{CycNum(-1), CycNum(0), CycNum(0), CycNum(-1)}) return static_cast<int>(g);
    }
    return -1;
  }();
  REQUIRE(minus_one >= 0);
  const auto cls = static_cast<std::size_t>(k.table.classes.class_of[static_cast<std::size_t>(minus_one)]);
  for (long tn : {-3L, 0L, 1L, 5L}) {
    const Rational t(tn);
    KleinianParam c;
    c.c.assign(k.table.classes.size(), CycNum(0));
    c.c[0] = CycNum(1);
    c.c[cls] = CycNum(t);
    const auto lambda = c_to_lambda(k, c);
    Rational lin = (1 + t) / 8, two = (2 - 2 * t) / 8;
    CHECK(lambda == ParamPoint{lin, two, lin, lin});
  }
}

TEST_CASE("A1 traces") {
  const auto& k = cached("A1");
  const auto t = trace_coordinates(k, param({CycNum(1), CycNum(1)}));
  CHECK(t == std::vector<CycNum>{CycNum(2), CycNum(0)});
  CHECK(c_to_lambda(k, param({CycNum(1), CycNum(1)})) == ParamPoint{Rational(0)});
  CHECK(c_to_lambda(k, param({CycNum(1), CycNum(0)})) == ParamPoint{Rational(1, 2)});
}

TEST_CASE("c and lambda round trip") {
  std::mt19937_64 rng(11);
  for (const char* label : kAde) {
    const auto& k = cached(label);
    for (int trial = 0; trial < 5; ++trial) {
      const auto lambda = testing::random_vector(rng, static_cast<std::size_t>(k.rank()), 9, 7);
      const auto c = lambda_to_c(k, lambda);
      CHECK(c.c[0] == CycNum(1));
      CHECK(c_to_lambda(k, c) == lambda);
    }
    CHECK(lambda_to_c(k, unit_parameter(k)).c[0] == CycNum(1));
    for (std::size_t K = 1; K < k.table.classes.size(); ++K) CHECK(lambda_to_c(k, unit_parameter(k)).c[K].is_zero());
  }
}

TEST_CASE("non-rational traces are rejected") {
  const auto& k = cached("A2");
  CHECK_THROWS_AS(c_to_lambda(k, param({CycNum(1), CycNum(1), CycNum(0)})), NonRationalParameter);
  CHECK_NOTHROW(c_to_lambda(k, param({CycNum(1), CycNum(1), CycNum(1)})));
  CHECK_THROWS_AS(standard_generators(CartanType::parse("B2")), InvalidType);
}

TEST_CASE("support subspaces parametrize c vanishing off N") {
  std::mt19937_64 rng(5);
  for (const char* label : {"A3", "A7", "D4", "D5", "D6", "E6", "E7"}) {
    const auto& k = cached(label);
    for (const auto& n : normal_subgroups(k.group)) {
      const auto s = support_subspace(k, n);
      std::size_t classes_in_n = 0;
      for (const auto& cl : k.table.classes.classes) classes_in_n += n.contains(cl[0]) ? 1 : 0;
      CHECK(s.directions.size() == classes_in_n - 1);
      for (int trial = 0; trial < 3; ++trial) {
        ParamPoint p = s.base;
        for (const auto& d : s.directions) {
          const Rational a = testing::random_rational(rng, 5, 4);
          for (std::size_t i = 0; i < p.size(); ++i) p[i] += a * d[i];
        }
        const auto c = lambda_to_c(k, p);
        for (std::size_t K = 0; K < c.c.size(); ++K) {
          if (!n.contains(k.table.classes.classes[K][0])) CHECK(c.c[K].is_zero());
        }
        for (int g : support_elements(k, c)) CHECK(n.contains(g));
      }
    }
  }
}

TEST_CASE("special vertices correspond to linear characters") {
  for (const char* label : kAde) {
    const auto& k = cached(label);
    const auto bij = special_vertex_bijection(k);
    CHECK(bij.size() == k.omega.size());
    CHECK(bij[0] == 0);
    CHECK(bij.size() == one_dim_characters(k.table).size());
  }
}

TEST_CASE("types of normal subgroups") {
  const auto& k = cached("E7");
  std::vector<std::string> seen;
  for (const auto& n : normal_subgroups(k.group)) {
    const auto t = identify_ade_type(*as_group(n).group);
    seen.push_back(t ? t->label() : "1");
  }
  CHECK(seen == std::vector<std::string>{"1", "A1", "D4", "E6", "E7"});

  const auto& d6 = cached("D6");  // binary dihedral of order 16
  std::vector<std::string> sub;
  for (const auto& n : normal_subgroups(d6.group)) {
    const auto t = identify_ade_type(*as_group(n).group);
    sub.push_back(t ? t->label() : "1");
  }
  CHECK(std::count(sub.begin(), sub.end(), "A7") == 1);
  CHECK(std::count(sub.begin(), sub.end(), "D4") == 2);
  CHECK(sub.back() == "D6");

  const auto& e8 = cached("E8");
  std::size_t count = normal_subgroups(e8.group).size();
  CHECK(count == 3);
}

TEST_CASE("subgroups inherit a Kleinian structure") {
  const auto& k = cached("E7");
  for (const auto& n : normal_subgroups(k.group)) {
    const auto sub = as_group(n);
    const auto t = identify_ade_type(*sub.group);
    if (!t) continue;
    std::vector<Mat2> mats;
    for (int g : sub.embedding) mats.push_back(k.matrices[static_cast<std::size_t>(g)]);
    const auto kk = kleinian_from_matrices(sub.group, mats, *t);
    CHECK(kk.order() == n.order());
    CHECK_NOTHROW(special_vertex_bijection(kk));
  }
}
