#include "khc/rootsys/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

#include "khc/errors.hpp"

namespace khc {

namespace {

constexpr int kMaxRank = 64;

IntMatrix symmetric_form(const CartanType& t) {
  const int r = t.rank;
  IntMatrix b(r, r);
  auto link = [&](int i, int j, long v) {  // 1-based
    b(i - 1, j - 1) = v;
    b(j - 1, i - 1) = v;
  };
  switch (t.family) {
    case 'A':
      for (int i = 1; i <= r; ++i) b(i - 1, i - 1) = 2;
      for (int i = 1; i < r; ++i) link(i, i + 1, -1);
      break;
    case 'B':
      for (int i = 1; i <= r; ++i) b(i - 1, i - 1) = i == r ? 1 : 2;
      for (int i = 1; i < r; ++i) link(i, i + 1, -1);
      break;
    case 'C':
      for (int i = 1; i <= r; ++i) b(i - 1, i - 1) = i == r ? 4 : 2;
      for (int i = 1; i < r - 1; ++i) link(i, i + 1, -1);
      link(r - 1, r, -2);
      break;
    case 'D':
      for (int i = 1; i <= r; ++i) b(i - 1, i - 1) = 2;
      for (int i = 1; i < r - 1; ++i) link(i, i + 1, -1);
      link(r - 2, r, -1);
      break;
    case 'E':
      for (int i = 1; i <= r; ++i) b(i - 1, i - 1) = 2;
      link(1, 3, -1);
      link(2, 4, -1);
      for (int i = 3; i < r; ++i) link(i, i + 1, -1);
      break;
    case 'F':
      b(0, 0) = 4;
      b(1, 1) = 4;
      b(2, 2) = 2;
      b(3, 3) = 2;
      link(1, 2, -2);
      link(2, 3, -2);
      link(3, 4, -1);
      break;
    case 'G':
      b(0, 0) = 2;
      b(1, 1) = 6;
      link(1, 2, -3);
      break;
    default:
      throw InvalidType("unknown Cartan family");
  }
  return b;
}

long height(const std::vector<long>& v) {
  long h = 0;
  for (long x : v) h += x;
  return h;
}

struct VecHash {
  std::size_t operator()(const std::vector<long>& v) const {
    std::size_t h = 0;
    for (long x : v) h = h * 1315423911u + static_cast<std::size_t>(x + 7);
    return h;
  }
};

}  // namespace

CartanType CartanType::parse(const std::string& label) {
  std::string s;
  for (char c : label)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2 || !std::isalpha(static_cast<unsigned char>(s[0])))
    throw InvalidType("bad Cartan type '" + label + "'");
  CartanType t;
  t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw InvalidType("bad Cartan type '" + label + "'");
  if (s.size() > 4) throw InvalidType("rank too large in '" + label + "'");
  t.rank = std::stoi(s.substr(1));
  const int r = t.rank;
  bool ok = false;
  switch (t.family) {
    case 'A': ok = r >= 1; break;
    case 'B':
    case 'C': ok = r >= 2; break;
    case 'D': ok = r >= 4; break;
    case 'E': ok = r >= 6 && r <= 8; break;
    case 'F': ok = r == 4; break;
    case 'G': ok = r == 2; break;
    default: ok = false;
  }
  if (!ok || r > kMaxRank) throw InvalidType("invalid Cartan type '" + label + "'");
  return t;
}

RootSystem::RootSystem(CartanType type) : type_(type) {
  type_ = CartanType::parse(type.label());  // validates
  const int r = type_.rank;
  form_ = symmetric_form(type_);
  cartan_ = IntMatrix(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) cartan_(i, j) = 2 * form_(i, j) / form_(i, i);

  // Root strings: beta + alpha_i is a root iff q > 0 where q = p - <beta, alpha_i^vee>.
  std::unordered_set<std::vector<long>, VecHash> seen;
  std::vector<std::vector<long>> queue;
  for (int i = 0; i < r; ++i) {
    std::vector<long> e(r, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::vector<long> beta = queue[q];
    const auto fw = to_fw(beta);
    for (int i = 0; i < r; ++i) {
      long p = 0;
      std::vector<long> down = beta;
      while (true) {
        --down[i];
        if (!seen.count(down)) break;
        ++p;
      }
      if (p - fw[i] > 0) {
        std::vector<long> up = beta;
        ++up[i];
        if (seen.insert(up).second) queue.push_back(up);
      }
    }
  }
  positive_ = queue;
  std::sort(positive_.begin(), positive_.end(), [](const auto& a, const auto& b) {
    const long ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a < b;
  });
  theta_ = positive_.back();
  long short_norm = norm(positive_.front());
  for (const auto& b : positive_) short_norm = std::min(short_norm, norm(b));
  for (const auto& b : positive_)
    if (norm(b) == short_norm) theta_short_ = b;  // sorted by height, so the last one is highest
  marks_ = theta_;
  comarks_ = coroot(theta_);
  wall_ = coroot(theta_short_);
  wall_root_fw_ = to_fw(theta_short_);

  affine_cartan_ = IntMatrix(r + 1, r + 1);
  affine_cartan_(0, 0) = 2;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) affine_cartan_(i + 1, j + 1) = cartan_(i, j);
  // alpha_0 = -theta_s, alpha_0^vee = -theta_s^vee.
  for (int i = 0; i < r; ++i) {
    affine_cartan_(i + 1, 0) = -wall_root_fw_[i];
    long s = 0;
    for (int k = 0; k < r; ++k) s += wall_[k] * cartan_(k, i).get_si();
    affine_cartan_(0, i + 1) = -s;
  }
}

std::vector<long> RootSystem::to_fw(const std::vector<long>& root) const {
  const int r = rank();
  std::vector<long> out(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i] += cartan_(i, j).get_si() * root[j];
  return out;
}

long RootSystem::norm(const std::vector<long>& root) const {
  long s = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) s += root[i] * form_(i, j).get_si() * root[j];
  return s;
}

std::vector<long> RootSystem::coroot(const std::vector<long>& root) const {
  const long n = norm(root);
  std::vector<long> out(rank());
  for (int j = 0; j < rank(); ++j) {
    const long num = root[j] * form_(j, j).get_si();
    if (num % n != 0) throw InternalError("coroot coefficient is not integral");
    out[j] = num / n;
  }
  return out;
}

int RootSystem::coxeter_m(int i, int j) const {
  if (i == j) return 1;
  switch (cartan(i, j) * cartan(j, i)) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: throw InternalError("invalid Cartan product");
  }
}

void RootSystem::reflect_in_place(int i, ParamPoint& lambda) const {
  const int r = rank();
  if (i == 0) {
    const Rational k = Rational(1) - affine_coordinate(lambda);  // <lambda, theta_s^vee>
    const Rational c = k - 1;
    if (c == 0) return;
    for (int j = 0; j < r; ++j) lambda[j] -= c * wall_root_fw_[j];
    return;
  }
  const Rational c = lambda[i - 1];
  if (c == 0) return;
  for (int j = 0; j < r; ++j) {
    const long a = cartan_(j, i - 1).get_si();
    if (a != 0) lambda[j] -= c * a;
  }
}

ParamPoint RootSystem::reflect(int i, const ParamPoint& lambda) const {
  ParamPoint out = lambda;
  reflect_in_place(i, out);
  return out;
}

ParamPoint RootSystem::apply_word(const std::vector<int>& word, ParamPoint lambda) const {
  for (int i : word) reflect_in_place(i, lambda);
  return lambda;
}

Rational RootSystem::affine_coordinate(const ParamPoint& lambda) const {
  Rational s = 1;
  for (int j = 0; j < rank(); ++j)
    if (wall_[j]) s -= wall_[j] * lambda[j];
  return s;
}

ParamPoint RootSystem::translate_by_root(const ParamPoint& lambda, const std::vector<long>& mu) const {
  ParamPoint out = lambda;
  const auto fw = to_fw(mu);
  for (int j = 0; j < rank(); ++j) out[j] += fw[j];
  return out;
}

std::vector<Integer> RootSystem::fundamental_group() const { return cokernel_invariants(cartan_).torsion; }

Integer RootSystem::weyl_group_order() const {
  const int r = rank();
  Integer fact = 1;
  for (int k = 2; k <= r; ++k) fact *= k;
  Integer two_pow = 1;
  for (int k = 0; k < r; ++k) two_pow *= 2;
  switch (type_.family) {
    case 'A': return fact * (r + 1);
    case 'B':
    case 'C': return two_pow * fact;
    case 'D': return two_pow / 2 * fact;
    case 'E': return r == 6 ? Integer(51840) : r == 7 ? Integer(2903040) : Integer(696729600);
    case 'F': return 1152;
    case 'G': return 12;
  }
  throw InternalError("unreachable");
}

ParamPoint rho_prime(const RootSystem& rs, const std::vector<int>& levi) {
  const int r = rs.rank();
  std::vector<bool> in_levi(r, false);
  for (int i : levi) {
    if (i < 1 || i > r) throw InvalidType("levi index " + std::to_string(i) + " out of range");
    in_levi[i - 1] = true;
  }
  std::vector<long> sum(r, 0);
  for (const auto& beta : rs.positive_roots()) {
    bool inside = true;
    for (int j = 0; j < r; ++j) inside = inside && (beta[j] == 0 || in_levi[j]);
    if (inside) continue;
    for (int j = 0; j < r; ++j) sum[j] += beta[j];
  }
  const auto fw = rs.to_fw(sum);
  ParamPoint out(r);
  for (int j = 0; j < r; ++j) {
    out[j] = Rational(fw[j], 2);
    out[j].canonicalize();
  }
  return out;
}

std::vector<int> parabolic_longest_word(const RootSystem& rs, const std::vector<int>& nodes) {
  // Reflect the J-dominant regular point rho_J down to J-antidominant.
  ParamPoint p(rs.rank(), Rational(0));
  for (int j : nodes) p[j - 1] = 1;
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> word;
  while (true) {
    int pick = -1;
    for (int j : sorted)
      if (p[j - 1] > 0) {
        pick = j;
        break;
      }
    if (pick < 0) break;
    rs.reflect_in_place(pick, p);
    word.push_back(pick);
  }
  return word;
}

FoldedData fold(const RootSystem& rs, const std::vector<std::vector<int>>& automorphisms) {
  const int r = rs.rank();
  for (const auto& perm : automorphisms) {
    if (static_cast<int>(perm.size()) != r) throw NotAutomorphism("automorphism has the wrong length");
    std::vector<int> s = perm;
    std::sort(s.begin(), s.end());
    for (int i = 0; i < r; ++i)
      if (s[i] != i + 1) throw NotAutomorphism("automorphism is not a permutation of 1..r");
    for (int i = 1; i <= r; ++i)
      for (int j = 1; j <= r; ++j)
        if (rs.cartan(perm[i - 1], perm[j - 1]) != rs.cartan(i, j))
          throw NotAutomorphism("permutation does not preserve the Cartan matrix");
  }
  // Orbits under the generated group = connected components of i ~ perm(i).
  std::vector<int> comp(r, -1);
  FoldedData fd;
  for (int start = 1; start <= r; ++start) {
    if (comp[start - 1] >= 0) continue;
    std::vector<int> orbit{start};
    comp[start - 1] = static_cast<int>(fd.orbits.size());
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (const auto& perm : automorphisms) {
        const int img = perm[orbit[k] - 1];
        if (comp[img - 1] < 0) {
          comp[img - 1] = comp[start - 1];
          orbit.push_back(img);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    fd.orbits.push_back(orbit);
  }
  const std::size_t m = fd.orbits.size();
  for (const auto& orbit : fd.orbits) {
    std::vector<long> sum(r, 0);
    RatVector inv(r, Rational(0));
    for (int i : orbit) {
      sum[i - 1] = 1;
      inv[i - 1] = 1;
    }
    fd.orbit_sums.push_back(sum);
    fd.invariant_basis.push_back(inv);
    fd.generator_words.push_back(parabolic_longest_word(rs, orbit));
  }

  // Invariant root-lattice vectors are those constant on orbits (in simple-root coordinates).
  std::vector<std::vector<Integer>> constraints;
  for (const auto& orbit : fd.orbits)
    for (std::size_t k = 1; k < orbit.size(); ++k) {
      std::vector<Integer> row(r, 0);
      row[orbit[0] - 1] = 1;
      row[orbit[k] - 1] = -1;
      constraints.push_back(row);
    }
  if (constraints.empty()) {
    fd.root_lattice = IntMatrix::identity(r);
  } else {
    const IntMatrix K = integer_kernel(IntMatrix::from_rows(constraints));
    fd.root_lattice = hermite_normal_form(K.transpose());
  }

  // Folded Cartan matrix from the action of the generators on orbit sums.
  fd.folded_cartan = IntMatrix(m, m);
  for (std::size_t o = 0; o < m; ++o)
    for (std::size_t p = 0; p < m; ++p) {
      // Act on beta_P in simple-root coordinates via fw coordinates of a root-lattice element.
      std::vector<long> beta = fd.orbit_sums[p];
      for (int i : fd.generator_words[o]) {
        const auto fw = rs.to_fw(beta);
        beta[i - 1] -= fw[i - 1];
      }
      // beta = beta_P - a * beta_O
      long a = 0;
      bool found = false;
      for (int j = 0; j < r; ++j) {
        const long diff = fd.orbit_sums[p][j] - beta[j];
        if (fd.orbit_sums[o][j] != 0) {
          if (!found) {
            a = diff / fd.orbit_sums[o][j];
            found = true;
          }
        }
      }
      for (int j = 0; j < r; ++j)
        if (fd.orbit_sums[p][j] - beta[j] != a * fd.orbit_sums[o][j])
          throw InternalError("folded reflection does not act by a multiple of the orbit sum");
      fd.folded_cartan(o, p) = a;
    }
  return fd;
}

std::optional<std::size_t> folded_orbit_size(const RootSystem& rs, const FoldedData& fd, const ParamPoint& point,
                                             std::size_t budget) {
  std::set<ParamPoint> seen{point};
  std::vector<ParamPoint> queue{point};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& w : fd.generator_words) {
      ParamPoint q = rs.apply_word(w, queue[k]);
      if (seen.insert(q).second) {
        if (seen.size() > budget) return std::nullopt;
        queue.push_back(std::move(q));
      }
    }
  return seen.size();
}

}  // namespace khc
