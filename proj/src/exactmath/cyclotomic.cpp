#include "khc/exactmath/cyclotomic.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "khc/errors.hpp"
#include "khc/exactmath/matrix.hpp"

namespace khc {

namespace {

constexpr int kMaxParsedConductor = 360;

std::vector<long> poly_exact_div(std::vector<long> num, const std::vector<long>& den) {
  // den is monic.
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long c = num[k];
    q[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  return q;
}

// Reduces a polynomial (ascending coefficients) modulo the N-th cyclotomic polynomial.
void reduce_mod_phi(std::vector<Integer>& p, int n) {
  const auto& phi = cyclotomic_polynomial(n);
  const std::size_t d = phi.size() - 1;
  for (std::size_t k = p.size(); k-- > d;) {
    if (p[k] == 0) continue;
    const Integer c = p[k];
    for (std::size_t j = 0; j <= d; ++j) {
      if (phi[j] != 0) p[k - d + j] -= c * phi[j];
    }
  }
  p.resize(d, Integer(0));
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<std::vector<long>>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return *it->second;
  std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    // Recursive call would deadlock on the mutex; compute divisors bottom-up instead.
    auto it = cache.find(d);
    if (it == cache.end()) {
      // Divisors of n are computed in increasing order, each only needing smaller divisors.
      std::vector<long> pd(static_cast<std::size_t>(d) + 1, 0);
      pd[0] = -1;
      pd[d] = 1;
      for (int e = 1; e < d; ++e) {
        if (d % e == 0) pd = poly_exact_div(pd, *cache.at(e));
      }
      it = cache.emplace(d, std::make_unique<std::vector<long>>(std::move(pd))).first;
    }
    p = poly_exact_div(p, *it->second);
  }
  return *cache.emplace(n, std::make_unique<std::vector<long>>(std::move(p))).first->second;
}

int euler_phi(int n) { return static_cast<int>(cyclotomic_polynomial(n).size()) - 1; }

int lcm_int(int a, int b) { return std::lcm(a, b); }

CycNum::CycNum(const Rational& value, int conductor) : conductor_(conductor) {
  if (conductor < 1) throw InvalidType("cyclotomic conductor must be positive");
  num_.assign(static_cast<std::size_t>(euler_phi(conductor)), Integer(0));
  num_[0] = value.get_num();
  den_ = value.get_den();
}

CycNum::CycNum(int conductor, std::vector<Integer> num, Integer den)
    : conductor_(conductor), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void CycNum::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  Integer g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    if (c != 0) g = khc::gcd(g, c);
  }
  bool all_zero = true;
  for (const auto& c : num_) all_zero = all_zero && c == 0;
  if (all_zero) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    den_ /= g;
    for (auto& c : num_) c /= g;
  }
}

CycNum CycNum::zeta(int conductor, long k) {
  long e = k % conductor;
  if (e < 0) e += conductor;
  std::vector<Integer> p(static_cast<std::size_t>(e) + 1, Integer(0));
  p[e] = 1;
  if (p.size() < static_cast<std::size_t>(euler_phi(conductor))) p.resize(euler_phi(conductor), Integer(0));
  reduce_mod_phi(p, conductor);
  return CycNum(conductor, std::move(p), Integer(1));
}

RatVector CycNum::coefficients() const {
  RatVector out;
  out.reserve(num_.size());
  for (const auto& c : num_) {
    Rational q(c, den_);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

bool CycNum::is_zero() const {
  for (const auto& c : num_)
    if (c != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

Rational CycNum::rational_value() const {
  if (!is_rational()) throw NonRationalParameter("value " + to_string() + " is not rational");
  Rational q(num_[0], den_);
  q.canonicalize();
  return q;
}

CycNum CycNum::promote(int M) const {
  if (M == conductor_) return *this;
  if (M % conductor_ != 0) throw InternalError("promote: conductor does not divide target");
  const int step = M / conductor_;
  std::vector<Integer> p(static_cast<std::size_t>(std::max(euler_phi(M), static_cast<int>((num_.size() - 1) * step + 1))),
                         Integer(0));
  for (std::size_t j = 0; j < num_.size(); ++j) p[j * step] = num_[j];
  reduce_mod_phi(p, M);
  return CycNum(M, std::move(p), den_);
}

CycNum CycNum::galois(long k) const {
  const int n = conductor_;
  if (std::gcd(static_cast<long>(n), k) != 1) throw InternalError("galois: exponent not coprime to conductor");
  long kk = k % n;
  if (kk < 0) kk += n;
  std::vector<Integer> p(static_cast<std::size_t>(std::max(n, euler_phi(n))), Integer(0));
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    p[(static_cast<long>(j) * kk) % n] += num_[j];
  }
  reduce_mod_phi(p, n);
  return CycNum(n, std::move(p), den_);
}

void CycNum::unify(const CycNum& a, const CycNum& b, CycNum& pa, CycNum& pb) {
  const int m = std::lcm(a.conductor_, b.conductor_);
  pa = a.promote(m);
  pb = b.promote(m);
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

CycNum operator+(const CycNum& a, const CycNum& b) {
  if (a.conductor_ != b.conductor_) {
    CycNum pa, pb;
    CycNum::unify(a, b, pa, pb);
    return pa + pb;
  }
  std::vector<Integer> num(a.num_.size());
  if (a.den_ == b.den_) {
    for (std::size_t i = 0; i < num.size(); ++i) num[i] = a.num_[i] + b.num_[i];
    return CycNum(a.conductor_, std::move(num), a.den_);
  }
  for (std::size_t i = 0; i < num.size(); ++i) num[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
  return CycNum(a.conductor_, std::move(num), a.den_ * b.den_);
}

CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

CycNum operator*(const CycNum& a, const CycNum& b) {
  if (a.conductor_ != b.conductor_) {
    CycNum pa, pb;
    CycNum::unify(a, b, pa, pb);
    return pa * pb;
  }
  const std::size_t d = a.num_.size();
  std::vector<Integer> p(2 * d - 1, Integer(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (a.num_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b.num_[j] == 0) continue;
      p[i + j] += a.num_[i] * b.num_[j];
    }
  }
  reduce_mod_phi(p, a.conductor_);
  return CycNum(a.conductor_, std::move(p), a.den_ * b.den_);
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(zeta_" + std::to_string(conductor_) + ")");
  if (is_rational()) return CycNum(1 / rational_value(), conductor_);
  const std::size_t d = num_.size();
  // Column j of the multiplication matrix is this * z^j.
  RatMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const CycNum col = *this * zeta(conductor_, static_cast<long>(j));
    const RatVector cs = col.coefficients();
    for (std::size_t i = 0; i < d; ++i) m(i, j) = cs[i];
  }
  RatVector e(d, Rational(0));
  e[0] = 1;
  const auto x = solve(m, e);
  if (!x) throw InternalError("cyclotomic multiplication matrix is singular");
  Integer den = lcm_of_denominators(*x);
  std::vector<Integer> num(d);
  for (std::size_t i = 0; i < d; ++i) {
    Rational scaled = (*x)[i] * den;
    num[i] = scaled.get_num();
  }
  return CycNum(conductor_, std::move(num), den);
}

CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }

Rational CycNum::trace() const {
  CycNum sum(Rational(0), conductor_);
  for (long k = 1; k <= conductor_; ++k) {
    if (std::gcd(k, static_cast<long>(conductor_)) == 1) sum += galois(k);
  }
  return sum.rational_value();
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.conductor_ != b.conductor_) {
    CycNum pa, pb;
    CycNum::unify(a, b, pa, pb);
    return pa == pb;
  }
  return a.den_ == b.den_ && a.num_ == b.num_;
}

bool operator<(const CycNum& a, const CycNum& b) {
  if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_;
  if (a.den_ != b.den_) return a.den_ < b.den_;
  for (std::size_t i = 0; i < a.num_.size(); ++i)
    if (a.num_[i] != b.num_[i]) return a.num_[i] < b.num_[i];
  return false;
}

std::string CycNum::to_string() const {
  if (is_zero()) return "0";
  const RatVector cs = coefficients();
  std::string out;
  const std::string z = "z" + std::to_string(conductor_);
  for (std::size_t j = 0; j < cs.size(); ++j) {
    if (cs[j] == 0) continue;
    Rational c = cs[j];
    const bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (j == 0) {
      out += khc::to_string(c);
      continue;
    }
    if (c != 1) out += (c.get_den() == 1 ? khc::to_string(c) : "(" + khc::to_string(c) + ")") + "*";
    out += z;
    if (j > 1) out += "^" + std::to_string(j);
  }
  return out;
}

std::size_t CycNum::hash() const {
  std::size_t h = static_cast<std::size_t>(conductor_) * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](const Integer& z) {
    const unsigned long v = mpz_fdiv_ui(z.get_mpz_t(), 4294967291UL);
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(den_);
  for (const auto& c : num_) mix(c);
  return h;
}

// ---------------------------------------------------------------------------
// Expression evaluator

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  CycNum parse() {
    CycNum v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SchemaError("cyc_eval: " + msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) +
                      "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 12) fail("integer literal too long");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  CycNum expr() {
    CycNum v = term();
    while (true) {
      if (accept('+')) v = v + term();
      else if (accept('-')) v = v - term();
      else return v;
    }
  }
  CycNum term() {
    CycNum v = unary();
    while (true) {
      if (accept('*')) v = v * unary();
      else if (accept('/')) {
        const CycNum d = unary();
        if (d.is_zero()) throw DivisionByZero("cyc_eval: division by zero");
        v = v / d;
      } else return v;
    }
  }
  CycNum unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  CycNum power() {
    CycNum base = primary();
    if (!accept('^')) return base;
    bool negative = false;
    if (accept('-')) negative = true;
    long e = integer();
    if (negative) {
      if (base.is_zero()) throw DivisionByZero("cyc_eval: zero to a negative power");
      base = base.inverse();
    }
    CycNum result(Rational(1), base.conductor());
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }
  CycNum primary() {
    skip();
    if (accept('(')) {
      CycNum v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (accept_word("conj")) {
      if (!accept('(')) fail("expected '(' after conj");
      CycNum v = expr();
      if (!accept(')')) fail("expected ')'");
      return v.conj();
    }
    if (accept_word("zeta") || accept_word("z")) {
      const long n = integer();
      if (n < 1 || n > kMaxParsedConductor) fail("conductor out of range 1..360");
      return CycNum::zeta(static_cast<int>(n), 1);
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) return CycNum(Rational(integer()));
    fail("expected a number, zN, conj(...) or '('");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

CycNum cyc_eval(std::string_view expression) { return Parser(expression).parse(); }

}  // namespace khc
