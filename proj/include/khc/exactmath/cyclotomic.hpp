#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "khc/exactmath/rational.hpp"

namespace khc {

/// Coefficients of the N-th cyclotomic polynomial, ascending degree, monic.
const std::vector<long>& cyclotomic_polynomial(int n);

int euler_phi(int n);
int lcm_int(int a, int b);

/// Exact element of Q(zeta_N), stored over the power basis 1, z, ..., z^{phi(N)-1}
/// reduced modulo the N-th cyclotomic polynomial. Internally: integer numerators
/// over one positive common denominator, fully reduced.
///
/// Mixed-conductor arithmetic promotes both operands to the lcm of the conductors.
class CycNum {
 public:
  CycNum() : CycNum(0, 1) {}
  CycNum(long value) : CycNum(Rational(value), 1) {}  // NOLINT(google-explicit-constructor)
  CycNum(const Rational& value, int conductor = 1);

  /// zeta_N^k.
  static CycNum zeta(int conductor, long k = 1);

  int conductor() const noexcept { return conductor_; }
  std::size_t degree() const noexcept { return num_.size(); }
  RatVector coefficients() const;

  bool is_zero() const;
  bool is_rational() const;
  /// Throws NonRationalParameter when the value is not in Q.
  Rational rational_value() const;

  /// Same value viewed in Q(zeta_M); requires conductor() | M.
  CycNum promote(int M) const;
  /// Galois automorphism zeta_N -> zeta_N^k, gcd(k, N) = 1.
  CycNum galois(long k) const;
  CycNum conj() const { return galois(conductor_ - 1); }
  CycNum inverse() const;
  /// Field trace down to Q.
  Rational trace() const;

  CycNum operator-() const;
  friend CycNum operator+(const CycNum& a, const CycNum& b);
  friend CycNum operator-(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator/(const CycNum& a, const CycNum& b);
  CycNum& operator+=(const CycNum& b) { return *this = *this + b; }
  CycNum& operator-=(const CycNum& b) { return *this = *this - b; }
  CycNum& operator*=(const CycNum& b) { return *this = *this * b; }

  friend bool operator==(const CycNum& a, const CycNum& b);

  /// Total order on elements of one conductor (used for deterministic sorting and maps).
  friend bool operator<(const CycNum& a, const CycNum& b);

  std::string to_string() const;
  std::size_t hash() const;

 private:
  CycNum(int conductor, std::vector<Integer> num, Integer den);
  void normalize();
  static void unify(const CycNum& a, const CycNum& b, CycNum& pa, CycNum& pb);

  int conductor_ = 1;
  std::vector<Integer> num_;
  Integer den_ = 1;
};

/// Evaluates a small arithmetic expression over roots of unity, e.g.
/// "1 + z3 + z3^2", "zeta5 + zeta5^4", "(1/2)*(z8 + z8^7)", "conj(z4)".
/// Grammar: integers, '+', '-', '*', '/', '^' (integer exponent, may be negative),
/// parentheses, zN / zetaN (primitive N-th root of unity), conj(expr).
/// Conductors above 360 are rejected with SchemaError.
CycNum cyc_eval(std::string_view expression);

}  // namespace khc
