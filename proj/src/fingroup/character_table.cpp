#include "khc/fingroup/character_table.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "khc/errors.hpp"

namespace khc {

namespace {

using u64 = std::uint64_t;
using ModVec = std::vector<u64>;

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 pow(u64 a, u64 k) const {
    u64 r = 1;
    a %= p;
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
  u64 from(long v) const {
    const long m = static_cast<long>(p);
    return static_cast<u64>(((v % m) + m) % m);
  }
};

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 primitive_root(const Fp& f) {
  const auto qs = prime_factors(f.p - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (u64 q : qs) ok = ok && f.pow(g, (f.p - 1) / q) != 1;
    if (ok) return g;
  }
}

// Basis of the right nullspace of a (rows x cols) matrix mod p.
std::vector<ModVec> nullspace_mod(std::vector<ModVec> a, std::size_t cols, const Fp& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    const u64 s = f.inv(a[r][c]);
    for (auto& x : a[r]) x = f.mul(x, s);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const u64 m = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = f.sub(a[i][j], f.mul(m, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<ModVec> basis;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    ModVec v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.sub(0, a[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Columns reduced so that each has a pivot row where it is 1 and all other columns are 0.
struct Subspace {
  std::vector<ModVec> cols;
  std::vector<std::size_t> pivot_rows;
};

Subspace reduce_columns(std::vector<ModVec> cols, const Fp& f) {
  Subspace s;
  const std::size_t n = cols.empty() ? 0 : cols.front().size();
  std::size_t done = 0;
  for (std::size_t row = 0; row < n && done < cols.size(); ++row) {
    std::size_t piv = done;
    while (piv < cols.size() && cols[piv][row] == 0) ++piv;
    if (piv == cols.size()) continue;
    std::swap(cols[done], cols[piv]);
    const u64 sc = f.inv(cols[done][row]);
    for (auto& x : cols[done]) x = f.mul(x, sc);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c == done || cols[c][row] == 0) continue;
      const u64 m = cols[c][row];
      for (std::size_t i = 0; i < n; ++i) cols[c][i] = f.sub(cols[c][i], f.mul(m, cols[done][i]));
    }
    s.pivot_rows.push_back(row);
    ++done;
  }
  cols.resize(done);
  s.cols = std::move(cols);
  return s;
}

// Characteristic polynomial (ascending, monic) by Faddeev-LeVerrier; needs p > dim.
std::vector<u64> charpoly(const std::vector<ModVec>& a, const Fp& f) {
  const std::size_t n = a.size();
  std::vector<u64> c(n + 1, 0);
  c[n] = 1;
  std::vector<ModVec> m(n, ModVec(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    // m <- a * m + c[n-k+1] I
    std::vector<ModVec> next(n, ModVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] = f.add(next[i][j], f.mul(a[i][l], m[l][j]));
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] = f.add(next[i][i], c[n - k + 1]);
    m = std::move(next);
    u64 tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr = f.add(tr, f.mul(a[i][l], m[l][i]));
    c[n - k] = f.sub(0, f.mul(tr, f.inv(k % f.p)));
  }
  return c;
}

std::vector<u64> roots_mod(const std::vector<u64>& poly, const Fp& f) {
  std::vector<u64> roots;
  for (u64 x = 0; x < f.p; ++x) {
    u64 v = 0;
    for (std::size_t k = poly.size(); k-- > 0;) v = f.add(f.mul(v, x), poly[k]);
    if (v == 0) roots.push_back(x);
  }
  return roots;
}

bool lex_less(const std::vector<CycNum>& a, const std::vector<CycNum>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

}  // namespace

CharacterTable character_table(const FinGroup& g) {
  const std::size_t n = g.order();
  if (n > 100000) throw CharacterBudgetExceeded("character table limited to groups of order 10^5");
  CharacterTable t;
  t.classes = conjugacy_classes(g);
  t.group_order = n;
  t.exponent = g.exponent();
  const std::size_t k = t.classes.size();
  const u64 e = static_cast<u64>(t.exponent);

  u64 p = e + 1;
  while (p <= 2 * n || !is_prime(p)) p += e;
  const Fp f{p};
  const u64 z = f.pow(primitive_root(f), (p - 1) / e);

  std::vector<int> rep(k);
  std::vector<u64> size_mod(k);
  for (std::size_t c = 0; c < k; ++c) {
    rep[c] = t.classes.classes[c].front();
    size_mod[c] = t.classes.classes[c].size() % p;
  }
  auto class_of = [&](int x) { return static_cast<std::size_t>(t.classes.class_of[static_cast<std::size_t>(x)]); };

  // Class matrices: M_j[l][m] = #{x in C_j : x^-1 z_m in C_l}.
  std::vector<std::vector<ModVec>> cm(k, std::vector<ModVec>(k, ModVec(k, 0)));
  for (std::size_t j = 0; j < k; ++j)
    for (int x : t.classes.classes[j])
      for (std::size_t m = 0; m < k; ++m) {
        auto& cell = cm[j][class_of(g.mul(g.inv(x), rep[m]))][m];
        cell = (cell + 1) % p;
      }

  std::vector<Subspace> work;
  {
    std::vector<ModVec> id(k, ModVec(k, 0));
    for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
    work.push_back(reduce_columns(std::move(id), f));
  }
  std::vector<ModVec> eigenvectors;
  std::vector<std::size_t> next_j{1};
  while (!work.empty()) {
    Subspace s = std::move(work.back());
    work.pop_back();
    std::size_t j = next_j.back();
    next_j.pop_back();
    const std::size_t dim = s.cols.size();
    if (dim == 1) {
      eigenvectors.push_back(s.cols.front());
      continue;
    }
    bool split = false;
    for (; j < k && !split; ++j) {
      // Restricted operator in the basis s.cols: R = (M_j V) at the pivot rows.
      std::vector<ModVec> r(dim, ModVec(dim, 0));
      for (std::size_t b = 0; b < dim; ++b)
        for (std::size_t a = 0; a < dim; ++a) {
          const std::size_t row = s.pivot_rows[a];
          u64 acc = 0;
          for (std::size_t m = 0; m < k; ++m)
            if (s.cols[b][m]) acc = f.add(acc, f.mul(cm[j][row][m], s.cols[b][m]));
          r[a][b] = acc;
        }
      const auto roots = roots_mod(charpoly(r, f), f);
      if (roots.size() < 2) continue;
      split = true;
      std::size_t total = 0;
      for (u64 lam : roots) {
        auto shifted = r;
        for (std::size_t i = 0; i < dim; ++i) shifted[i][i] = f.sub(shifted[i][i], lam);
        const auto ker = nullspace_mod(shifted, dim, f);
        total += ker.size();
        std::vector<ModVec> cols;
        for (const auto& c : ker) {
          ModVec v(k, 0);
          for (std::size_t b = 0; b < dim; ++b)
            if (c[b])
              for (std::size_t m = 0; m < k; ++m) v[m] = f.add(v[m], f.mul(c[b], s.cols[b][m]));
          cols.push_back(std::move(v));
        }
        work.push_back(reduce_columns(std::move(cols), f));
        next_j.push_back(j + 1);
      }
      if (total != dim) throw InternalError("class matrices are not simultaneously diagonalizable mod p");
    }
    if (!split) throw InternalError("class matrices fail to separate the irreducible characters");
  }
  if (eigenvectors.size() != k) throw InternalError("wrong number of irreducible characters");

  const std::size_t ident = class_of(g.identity());
  std::vector<std::size_t> inverse_class(k);
  for (std::size_t c = 0; c < k; ++c) inverse_class[c] = class_of(g.inv(rep[c]));
  // powers[c][s] = class of rep_c^s.
  std::vector<std::vector<std::size_t>> powers(k, std::vector<std::size_t>(e));
  for (std::size_t c = 0; c < k; ++c) {
    int x = g.identity();
    for (u64 s = 0; s < e; ++s) {
      powers[c][s] = class_of(x);
      x = g.mul(x, rep[c]);
    }
  }
  const u64 inv_e = f.inv(e % p);
  std::vector<u64> zpow(e);
  for (u64 s = 0; s < e; ++s) zpow[s] = f.pow(z, s);

  std::vector<std::pair<std::vector<CycNum>, int>> rows;
  for (auto w : eigenvectors) {
    const u64 s0 = f.inv(w[ident]);
    for (auto& x : w) x = f.mul(x, s0);
    // d^2 = |G| / sum_K w_K w_{K*} / |K|
    u64 denom = 0;
    for (std::size_t c = 0; c < k; ++c) denom = f.add(denom, f.mul(f.mul(w[c], w[inverse_class[c]]), f.inv(size_mod[c])));
    const u64 d2 = f.mul(n % p, f.inv(denom));
    int degree = 0;
    for (u64 d = 1; d * d <= n; ++d)
      if (d * d % p == d2) degree = static_cast<int>(d);
    if (degree == 0) throw InternalError("no admissible character degree");
    ModVec chi(k);
    for (std::size_t c = 0; c < k; ++c) chi[c] = f.mul(f.mul(static_cast<u64>(degree), w[c]), f.inv(size_mod[c]));

    std::vector<CycNum> values(k);
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<Integer> coeff(e);
      CycNum v(Rational(0), t.exponent);
      for (u64 tt = 0; tt < e; ++tt) {
        u64 acc = 0;
        for (u64 s = 0; s < e; ++s) acc = f.add(acc, f.mul(chi[powers[c][s]], zpow[(e - (tt * s) % e) % e]));
        const u64 mult = f.mul(acc, inv_e);
        if (mult > static_cast<u64>(degree)) throw InternalError("eigenvalue multiplicity out of range");
        if (mult) v += CycNum(Rational(static_cast<long>(mult)), t.exponent) * CycNum::zeta(t.exponent, static_cast<long>(tt));
      }
      values[c] = v;
    }
    rows.emplace_back(std::move(values), degree);
  }

  auto is_trivial = [](const std::vector<CycNum>& v) {
    return std::all_of(v.begin(), v.end(), [](const CycNum& x) { return x == CycNum(1); });
  };
  std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    const bool ta = is_trivial(a.first), tb = is_trivial(b.first);
    if (ta != tb) return ta;
    if (a.second != b.second) return a.second < b.second;
    return lex_less(a.first, b.first);
  });
  long sum_sq = 0;
  for (auto& [vals, deg] : rows) {
    sum_sq += static_cast<long>(deg) * deg;
    t.values.push_back(std::move(vals));
    t.degrees.push_back(deg);
  }
  if (sum_sq != static_cast<long>(n)) throw InternalError("character degrees do not satisfy sum d^2 = |G|");
  return t;
}

CycNum inner_product(const CharacterTable& t, const std::vector<CycNum>& a, const std::vector<CycNum>& b) {
  CycNum acc(Rational(0), 1);
  for (std::size_t c = 0; c < a.size(); ++c)
    acc += CycNum(Rational(static_cast<long>(t.class_size(c)))) * a[c] * b[c].conj();
  return acc * CycNum(Rational(1, static_cast<long>(t.group_order)));
}

std::vector<CycNum> decompose(const CharacterTable& t, const std::vector<CycNum>& f) {
  std::vector<CycNum> out;
  for (const auto& row : t.values) out.push_back(inner_product(t, f, row));
  return out;
}

std::vector<CycNum> pointwise_product(const std::vector<CycNum>& a, const std::vector<CycNum>& b) {
  std::vector<CycNum> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

std::vector<std::size_t> one_dim_characters(const CharacterTable& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.degrees[i] == 1) out.push_back(i);
  return out;
}

Subgroup character_kernel(const GroupPtr& g, const CharacterTable& t, std::size_t chi) {
  const CycNum deg(Rational(t.degrees[chi]));
  std::vector<int> elems;
  for (std::size_t x = 0; x < g->order(); ++x)
    if (t.value(chi, static_cast<int>(x)) == deg) elems.push_back(static_cast<int>(x));
  return Subgroup(g, std::move(elems));
}

std::vector<CycNum> class_function(const ConjugacyClasses& classes, const std::vector<CycNum>& per_element) {
  std::vector<CycNum> out;
  for (const auto& cls : classes.classes) out.push_back(per_element[static_cast<std::size_t>(cls.front())]);
  return out;
}

std::vector<CycNum> restrict_class_function(const std::vector<CycNum>& values, const ConjugacyClasses& big,
                                            const EmbeddedGroup& sub, const ConjugacyClasses& small) {
  std::vector<CycNum> out;
  for (const auto& cls : small.classes) {
    const int parent = sub.embedding[static_cast<std::size_t>(cls.front())];
    out.push_back(values[static_cast<std::size_t>(big.class_of[static_cast<std::size_t>(parent)])]);
  }
  return out;
}

}  // namespace khc
