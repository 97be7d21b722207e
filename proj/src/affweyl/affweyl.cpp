#include "khc/affweyl/affweyl.hpp"

#include <algorithm>
#include <limits>

#include "khc/errors.hpp"

namespace khc {

namespace {

Integer common_denominator(const ParamPoint& p) {
  Integer d = 1;
  for (const auto& x : p) d = lcm(d, x.get_den());
  return d;
}

}  // namespace

AlcoveForm alcove_reduce(const RootSystem& rs, const ParamPoint& lambda) {
  const int r = rs.rank();
  if (static_cast<int>(lambda.size()) != r) throw SchemaError("point has " + std::to_string(lambda.size()) +
                                                              " coordinates, expected " + std::to_string(r));
  const Integer den = common_denominator(lambda);
  std::vector<Integer> x(r);
  for (int j = 0; j < r; ++j) x[j] = lambda[j].get_num() * (den / lambda[j].get_den());
  const auto& wall = rs.wall_coefficients();
  const auto& theta = rs.wall_root_fw();
  std::vector<std::vector<long>> cartan_col(r, std::vector<long>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) cartan_col[i][j] = rs.cartan()(j, i).get_si();

  AlcoveForm out;
  Integer a0;
  while (true) {
    a0 = den;
    for (int j = 0; j < r; ++j)
      if (wall[j]) a0 -= wall[j] * x[j];
    if (a0 < 0) {
      for (int j = 0; j < r; ++j)
        if (theta[j]) x[j] += a0 * theta[j];
      out.word.push_back(0);
      continue;
    }
    int pick = -1;
    for (int i = 0; i < r; ++i)
      if (x[i] < 0) {
        pick = i;
        break;
      }
    if (pick < 0) break;
    const Integer c = x[pick];
    for (int j = 0; j < r; ++j)
      if (cartan_col[pick][j]) x[j] -= c * cartan_col[pick][j];
    out.word.push_back(pick + 1);
  }
  out.canonical.resize(r);
  for (int j = 0; j < r; ++j) {
    out.canonical[j] = Rational(x[j], den);
    out.canonical[j].canonicalize();
  }
  if (a0 == 0) out.facet.push_back(0);
  for (int j = 0; j < r; ++j)
    if (x[j] == 0) out.facet.push_back(j + 1);
  return out;
}

ParamPoint canonical(const RootSystem& rs, const ParamPoint& lambda) { return alcove_reduce(rs, lambda).canonical; }

RatVector affine_coordinates(const RootSystem& rs, const ParamPoint& lambda) {
  RatVector out{rs.affine_coordinate(lambda)};
  out.insert(out.end(), lambda.begin(), lambda.end());
  return out;
}

ParamPoint OmegaElement::apply(const ParamPoint& lambda) const {
  ParamPoint out(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    Rational s = translation[i];
    for (std::size_t j = 0; j < lambda.size(); ++j)
      if (linear(i, j) != 0) s += linear(i, j) * lambda[j];
    out[i] = s;
  }
  return out;
}

std::vector<int> root_reflection_word(const RootSystem& rs, const std::vector<long>& root) {
  const int r = rs.rank();
  std::vector<long> beta = root;
  std::vector<int> path;
  while (true) {
    long h = 0;
    for (long v : beta) h += v;
    if (h == 1) break;
    const auto fw = rs.to_fw(beta);
    int pick = -1;
    for (int i = 0; i < r; ++i)
      if (fw[i] > 0) {
        pick = i;
        break;
      }
    if (pick < 0) throw InternalError("root_reflection_word: no descent");
    beta[pick] -= fw[pick];
    path.push_back(pick + 1);
  }
  int simple = 0;
  for (int i = 0; i < r; ++i)
    if (beta[i] == 1) simple = i + 1;
  std::vector<int> word = path;
  word.push_back(simple);
  word.insert(word.end(), path.rbegin(), path.rend());
  return word;
}

std::vector<OmegaElement> omega_group(const RootSystem& rs) {
  const int r = rs.rank();
  const auto& wall = rs.wall_coefficients();
  long total = 1;
  for (long w : wall) total += w;
  const long P = 2 * total * (r + 1);
  ParamPoint probe(r);
  for (int i = 0; i < r; ++i) {
    probe[i] = Rational(i + 1, P);
    probe[i].canonicalize();
  }

  const auto theta_word = root_reflection_word(rs, rs.highest_short_root());
  // Vertices of the alcove: v_0 = 0, v_i = omega_i / wall_i.
  std::vector<ParamPoint> vertices(r + 1, ParamPoint(r, Rational(0)));
  for (int i = 1; i <= r; ++i) vertices[i][i - 1] = Rational(1, wall[i - 1]);

  std::vector<OmegaElement> out;
  for (int j = 0; j <= r; ++j) {
    if (j > 0 && wall[j - 1] != 1) continue;
    OmegaElement e;
    e.minuscule = j;
    ParamPoint shift(r, Rational(0));
    if (j > 0) shift[j - 1] = 1;
    auto translated = [&](const ParamPoint& x) {
      ParamPoint y = x;
      for (int k = 0; k < r; ++k) y[k] += shift[k];
      return y;
    };
    e.affine_word = alcove_reduce(rs, translated(probe)).word;
    for (int letter : e.affine_word) {
      if (letter == 0) e.linear_word.insert(e.linear_word.end(), theta_word.begin(), theta_word.end());
      else e.linear_word.push_back(letter);
    }
    const ParamPoint b = rs.apply_word(e.affine_word, translated(ParamPoint(r, Rational(0))));
    e.translation.resize(r);
    for (int k = 0; k < r; ++k) {
      if (!is_integer(b[k])) throw InternalError("Omega translation is not integral");
      e.translation[k] = b[k].get_num();
    }
    e.linear = IntMatrix(r, r);
    for (int col = 0; col < r; ++col) {
      ParamPoint unit(r, Rational(0));
      unit[col] = 1;
      const ParamPoint img = rs.apply_word(e.affine_word, translated(unit));
      for (int k = 0; k < r; ++k) e.linear(k, col) = Rational(img[k] - b[k]).get_num();
    }
    e.node_permutation.assign(r + 1, -1);
    for (int i = 0; i <= r; ++i) {
      const ParamPoint img = e.apply(vertices[i]);
      for (int k = 0; k <= r; ++k)
        if (img == vertices[k]) e.node_permutation[i] = k;
      if (e.node_permutation[i] < 0) throw InternalError("Omega element does not preserve the alcove");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t omega_compose(const std::vector<OmegaElement>& omega, std::size_t a, std::size_t b) {
  const auto& A = omega[a];
  const auto& B = omega[b];
  const IntMatrix lin = A.linear * B.linear;
  IntVector t = A.linear.apply(std::span<const Integer>(B.translation));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] += A.translation[k];
  for (std::size_t k = 0; k < omega.size(); ++k)
    if (omega[k].linear == lin && omega[k].translation == t) return k;
  throw InternalError("Omega is not closed under composition");
}

std::vector<std::size_t> extended_stabilizer(const RootSystem& rs, const std::vector<OmegaElement>& omega,
                                             const ParamPoint& lambda) {
  const ParamPoint c = canonical(rs, lambda);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < omega.size(); ++k)
    if (omega[k].apply(c) == c) out.push_back(k);
  return out;
}

ParamPoint dominant_representative(const RootSystem& rs, ParamPoint lambda) {
  while (true) {
    int pick = -1;
    for (int i = 0; i < rs.rank(); ++i)
      if (lambda[i] < 0) {
        pick = i + 1;
        break;
      }
    if (pick < 0) return lambda;
    rs.reflect_in_place(pick, lambda);
  }
}

// ---------------------------------------------------------------------------

namespace {

// Membership test for d in Lambda_r + span(V): with K = U P and U (P A) V = diag(s),
// d qualifies iff (K d)_i is divisible by s_i for i < rank and vanishes beyond.
// Points are scaled by the common denominator `den`.
template <typename T, typename Acc>
struct OrbitWalker {
  int r;
  std::vector<std::vector<long>> cartan_col;  // cartan_col[i][j] = a_{j,i}
  std::vector<std::vector<T>> K;
  std::vector<T> base;     // den * x0
  std::vector<T> modulus;  // den * s_i, or 0 for "must vanish"
  std::size_t budget;
  int depth_limit;         // 0 = none
  std::size_t visited = 0;
  bool truncated = false;
  bool over_budget = false;

  bool hits(const std::vector<T>& nu) const {
    for (std::size_t i = 0; i < K.size(); ++i) {
      Acc acc = 0;
      for (int j = 0; j < r; ++j)
        if (K[i][j] != 0) acc += Acc(K[i][j]) * Acc(nu[j] - base[j]);
      if (modulus[i] == 0) {
        if (acc != 0) return false;
      } else if (acc % Acc(modulus[i]) != 0) {
        return false;
      }
    }
    return true;
  }

  void reflect(std::vector<T>& nu, int i) const {
    const T c = nu[i];
    for (int j = 0; j < r; ++j)
      if (cartan_col[i][j]) nu[j] -= c * cartan_col[i][j];
  }

  // Reverse search from the dominant point; children of nu are s_j nu (nu_j > 0) whose
  // smallest negative coordinate is at j.
  std::optional<std::vector<T>> run(const std::vector<T>& dominant) {
    struct Frame {
      std::vector<T> nu;
      int next;
    };
    std::vector<Frame> stack;
    stack.push_back({dominant, 0});
    ++visited;
    if (hits(dominant)) return dominant;
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next >= r) {
        stack.pop_back();
        continue;
      }
      const int j = top.next++;
      if (top.nu[j] <= 0) continue;
      std::vector<T> child = top.nu;
      reflect(child, j);
      bool ok = true;
      for (int k = 0; k < j && ok; ++k) ok = child[k] >= 0;
      if (!ok) continue;
      if (depth_limit > 0 && static_cast<int>(stack.size()) > depth_limit) {
        truncated = true;
        continue;
      }
      if (++visited > budget) {
        over_budget = true;
        return std::nullopt;
      }
      if (hits(child)) return child;
      stack.push_back({std::move(child), 0});
    }
    return std::nullopt;
  }
};

bool fits(const Integer& v, long limit) { return abs(v) < limit; }

}  // namespace

OrbitSearchResult orbit_meets_affine_subspace(const RootSystem& rs, const ParamPoint& lambda, const AffineSubspace& s,
                                              const OrbitSearchOptions& options) {
  const int r = rs.rank();
  if (static_cast<int>(lambda.size()) != r || static_cast<int>(s.base.size()) != r)
    throw SchemaError("point dimension does not match the rank");
  for (const auto& v : s.directions)
    if (static_cast<int>(v.size()) != r) throw SchemaError("direction dimension does not match the rank");

  OrbitSearchResult result;
  const ParamPoint target_canonical = canonical(rs, lambda);
  auto accept = [&](const ParamPoint& w) {
    if (canonical(rs, w) != target_canonical) throw InternalError("orbit witness failed canonical-form verification");
    result.status = OrbitSearchResult::Status::Found;
    result.witness = w;
    return result;
  };

  std::vector<RatVector> dirs;
  for (const auto& v : s.directions)
    if (std::any_of(v.begin(), v.end(), [](const Rational& q) { return q != 0; })) dirs.push_back(v);
  if (dirs.empty()) {
    result.orbit_points = 0;
    if (canonical(rs, s.base) == target_canonical) return accept(s.base);
    result.note = "canonical forms differ";
    return result;
  }

  RatMatrix vm(dirs.size(), r);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (int j = 0; j < r; ++j) vm(i, j) = dirs[i][j];
  const auto annihilator = nullspace(vm);
  if (annihilator.empty()) return accept(lambda);

  const std::size_t m = annihilator.size();
  IntMatrix P(m, r);
  for (std::size_t i = 0; i < m; ++i) {
    const Integer l = lcm_of_denominators(annihilator[i]);
    for (int j = 0; j < r; ++j) P(i, j) = Rational(annihilator[i][j] * l).get_num();
  }
  const IntMatrix PA = P * rs.cartan();
  const SmithForm snf = smith_normal_form(PA);
  const IntMatrix K = snf.U * P;
  const auto diag = snf.diagonal();

  Integer den = lcm(common_denominator(lambda), common_denominator(s.base));
  const ParamPoint dom = dominant_representative(rs, lambda);
  std::vector<Integer> dom_scaled(r), base_scaled(r), modulus(m);
  for (int j = 0; j < r; ++j) {
    dom_scaled[j] = Rational(dom[j] * den).get_num();
    base_scaled[j] = Rational(s.base[j] * den).get_num();
  }
  for (std::size_t i = 0; i < m; ++i) modulus[i] = i < diag.size() ? den * diag[i] : Integer(0);

  const bool e8 = rs.type() == CartanType{'E', 8};
  const int depth = options.depth_limit > 0 ? options.depth_limit : (e8 ? kDefaultE8Depth : 0);

  std::vector<std::vector<long>> cartan_col(r, std::vector<long>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) cartan_col[i][j] = rs.cartan()(j, i).get_si();

  constexpr long kSmall = 1L << 30;
  bool small = true;
  for (int j = 0; j < r; ++j) small = small && fits(dom_scaled[j], kSmall) && fits(base_scaled[j], kSmall);
  for (std::size_t i = 0; i < m; ++i) {
    small = small && fits(modulus[i], std::numeric_limits<long>::max() / 4);
    for (int j = 0; j < r; ++j) small = small && fits(K(i, j), kSmall);
  }

  std::optional<ParamPoint> hit;
  bool truncated = false, over_budget = false;
  std::size_t visited = 0;
  auto finish = [&](auto& walker, const auto& start) {
    auto found = walker.run(start);
    truncated = walker.truncated;
    over_budget = walker.over_budget;
    visited = walker.visited;
    if (found) {
      ParamPoint p(r);
      for (int j = 0; j < r; ++j) {
        p[j] = Rational(Integer((*found)[j]), den);
        p[j].canonicalize();
      }
      hit = p;
    }
  };
  if (small) {
    OrbitWalker<long, __int128> w{r, cartan_col, {}, {}, {}, options.weyl_budget, depth};
    w.K.assign(m, std::vector<long>(r));
    for (std::size_t i = 0; i < m; ++i)
      for (int j = 0; j < r; ++j) w.K[i][j] = K(i, j).get_si();
    for (int j = 0; j < r; ++j) w.base.push_back(base_scaled[j].get_si());
    for (std::size_t i = 0; i < m; ++i) w.modulus.push_back(modulus[i].get_si());
    std::vector<long> start(r);
    for (int j = 0; j < r; ++j) start[j] = dom_scaled[j].get_si();
    finish(w, start);
  } else {
    OrbitWalker<Integer, Integer> w{r, cartan_col, {}, {}, {}, options.weyl_budget, depth};
    w.K.assign(m, std::vector<Integer>(r));
    for (std::size_t i = 0; i < m; ++i)
      for (int j = 0; j < r; ++j) w.K[i][j] = K(i, j);
    w.base = base_scaled;
    w.modulus = modulus;
    finish(w, dom_scaled);
  }
  result.orbit_points = visited;

  if (hit) {
    // d = w.lambda - x0 lies in Lambda_r + span V; remove the lattice part.
    RatVector d(r);
    for (int j = 0; j < r; ++j) d[j] = (*hit)[j] - s.base[j];
    const RatVector pd = to_rational(P).apply(std::span<const Rational>(d));
    const LatticeSolution sol = lattice_point_in_affine(to_rational(PA), pd);
    if (!sol.feasible()) throw InternalError("orbit congruence test and lattice solver disagree");
    ParamPoint witness = *hit;
    const IntVector ay = rs.cartan().apply(std::span<const Integer>(*sol.solution));
    for (int j = 0; j < r; ++j) witness[j] -= ay[j];
    return accept(witness);
  }
  if (over_budget) {
    if (depth > 0) {
      result.status = OrbitSearchResult::Status::Unknown;
      result.note = "orbit budget reached in bounded search";
      return result;
    }
    throw WeylBudgetExceeded("W-orbit exceeds the budget of " + std::to_string(options.weyl_budget) + " points");
  }
  if (truncated) {
    result.status = OrbitSearchResult::Status::Unknown;
    result.note = "bounded search to W-length " + std::to_string(depth) + " found no witness";
    return result;
  }
  result.status = OrbitSearchResult::Status::Infeasible;
  result.note = "no W-orbit point lies in Lambda_r + S";
  return result;
}

}  // namespace khc
