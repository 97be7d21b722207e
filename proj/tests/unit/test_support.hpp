#pragma once

#include <random>
#include <vector>

#include "khc/exactmath/rational.hpp"

namespace khc::testing {

inline Rational random_rational(std::mt19937_64& rng, long max_num, long max_den) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline RatVector random_vector(std::mt19937_64& rng, std::size_t n, long max_num, long max_den) {
  RatVector v(n);
  for (auto& x : v) x = random_rational(rng, max_num, max_den);
  return v;
}

}  // namespace khc::testing
