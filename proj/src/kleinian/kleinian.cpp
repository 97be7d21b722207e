#include "khc/kleinian/kleinian.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "khc/errors.hpp"

namespace khc {

namespace {

CycNum half(const CycNum& x) { return x * CycNum(Rational(1, 2)); }

// a + bi + cj + dk
Mat2 quaternion(const CycNum& a, const CycNum& b, const CycNum& c, const CycNum& d) {
  const CycNum i = CycNum::zeta(4);
  return {a + b * i, c + d * i, -c + d * i, a - b * i};
}

Rational rational_or_throw(const CycNum& x, const char* what) {
  if (!x.is_rational()) throw NonRationalParameter(std::string(what) + " is not rational: " + x.to_string());
  return x.rational_value();
}

// Trace down to Q from Q(zeta_e); c must divide e.
Rational trace_from(const CycNum& x, int e) {
  if (x.is_zero()) return Rational(0);
  const int c = x.conductor();
  return Rational(euler_phi(e) / euler_phi(c)) * x.trace();
}

std::vector<long> node_dimensions(const RootSystem& rs) {
  std::vector<long> dims{1};
  for (long m : rs.marks()) dims.push_back(m);
  return dims;
}

// Labels irreducibles by affine nodes so that McKay multiplicities match the affine diagram.
void label_nodes(KleinianGroup& k) {
  const auto m = mckay_matrix(k.table, k.natural);
  const std::size_t n = m.size();
  const IntMatrix& ac = k.rs().affine_cartan();
  const std::size_t nodes = static_cast<std::size_t>(k.rank()) + 1;
  if (n != nodes) {
    throw McKayMismatch(k.type.label() + ": " + std::to_string(n) + " irreducibles for " + std::to_string(nodes) +
                        " affine nodes");
  }
  auto adj = [&](std::size_t a, std::size_t b) -> long { return a == b ? 0 : -ac(a, b).get_si(); };

  // Visit characters in BFS order of the McKay graph so each new one has an assigned neighbour.
  std::vector<std::size_t> order{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t h = 0; h < order.size(); ++h) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && m[order[h]][j] != 0) {
        seen[j] = true;
        order.push_back(j);
      }
    }
  }
  if (order.size() != n) throw McKayMismatch(k.type.label() + ": McKay graph is disconnected");

  std::vector<int> node_of(n, -1);
  std::vector<bool> used(nodes, false);
  std::function<bool(std::size_t)> place = [&](std::size_t pos) -> bool {
    if (pos == n) return true;
    const std::size_t ch = order[pos];
    for (std::size_t v = 0; v < nodes; ++v) {
      if (used[v]) continue;
      if ((ch == 0) != (v == 0)) continue;
      if (k.table.degrees[ch] != k.node_dims[v]) continue;
      if (m[ch][ch] != 0) continue;
      bool ok = true;
      for (std::size_t q = 0; q < pos && ok; ++q) {
        const std::size_t other = order[q];
        ok = m[ch][other] == adj(v, static_cast<std::size_t>(node_of[other]));
      }
      if (!ok) continue;
      node_of[ch] = static_cast<int>(v);
      used[v] = true;
      if (place(pos + 1)) return true;
      used[v] = false;
      node_of[ch] = -1;
    }
    return false;
  };
  if (!place(0)) throw McKayMismatch(k.type.label() + ": McKay graph is not the affine diagram");

  k.node_of_char = node_of;
  k.char_of_node.assign(nodes, -1);
  for (std::size_t ch = 0; ch < n; ++ch) k.char_of_node[static_cast<std::size_t>(node_of[ch])] = static_cast<int>(ch);
}

}  // namespace

std::vector<std::vector<long>> mckay_matrix(const CharacterTable& t, const std::vector<CycNum>& natural) {
  const std::size_t n = t.size();
  std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto prod = pointwise_product(natural, t.values[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const CycNum ip = inner_product(t, prod, t.values[j]);
      if (!ip.is_rational() || !is_integer(ip.rational_value()) || ip.rational_value() < 0) {
        throw McKayMismatch("non-integral McKay multiplicity " + ip.to_string());
      }
      m[i][j] = ip.rational_value().get_num().get_si();
    }
  }
  return m;
}

std::vector<Mat2> standard_generators(const CartanType& type) {
  const CycNum one(1), zero(0);
  switch (type.family) {
    case 'A': {
      const int n = type.rank + 1;
      return {Mat2{CycNum::zeta(n), zero, zero, CycNum::zeta(n, n - 1)}};
    }
    case 'D': {
      if (type.rank < 4) break;
      const int n = 2 * (type.rank - 2);
      return {Mat2{CycNum::zeta(n), zero, zero, CycNum::zeta(n, n - 1)}, Mat2{zero, one, -one, zero}};
    }
    case 'E': {
      const Mat2 qi = quaternion(zero, one, zero, zero);
      const Mat2 omega = quaternion(half(one), half(one), half(one), half(one));
      if (type.rank == 6) return {qi, omega};
      if (type.rank == 7) {
        const CycNum sqrt2 = CycNum::zeta(8) + CycNum::zeta(8, 7);
        const CycNum s = one / sqrt2;
        return {qi, omega, quaternion(s, s, zero, zero)};
      }
      if (type.rank == 8) {
        const CycNum phi_inv = CycNum::zeta(5) + CycNum::zeta(5, 4);
        const CycNum phi = one + phi_inv;
        return {omega, quaternion(half(phi), half(phi_inv), half(one), zero)};
      }
      break;
    }
    default:
      break;
  }
  throw InvalidType(type.label() + " is not a simply-laced type");
}

KleinianGroup kleinian_from_matrices(GroupPtr group, std::vector<Mat2> matrices, const CartanType& type) {
  if (!type.simply_laced()) throw InvalidType(type.label() + " is not a simply-laced type");
  KleinianGroup k;
  k.type = type;
  k.root_system = std::make_shared<const RootSystem>(type);
  k.group = std::move(group);
  k.matrices = std::move(matrices);
  k.table = character_table(*k.group);
  std::vector<CycNum> traces;
  traces.reserve(k.matrices.size());
  for (const auto& m : k.matrices) traces.push_back(m.trace());
  k.natural = class_function(k.table.classes, traces);
  k.node_dims = node_dimensions(k.rs());
  label_nodes(k);
  k.omega = omega_group(k.rs());
  return k;
}

KleinianGroup build_kleinian(const CartanType& type) {
  auto gens = standard_generators(type);
  MatrixGroup mg = group_from_matrices(gens);
  KleinianGroup k = kleinian_from_matrices(mg.group, std::move(mg.matrices), type);
  k.words = std::move(mg.words);
  k.generators = std::move(gens);
  long expected = 0;
  for (long d : k.node_dims) expected += d * d;
  if (static_cast<long>(k.order()) != expected) {
    throw McKayMismatch(type.label() + ": group order " + std::to_string(k.order()) + ", expected " +
                        std::to_string(expected));
  }
  return k;
}

std::optional<CartanType> identify_ade_type(const FinGroup& g) {
  const std::size_t n = g.order();
  if (n == 1) return std::nullopt;
  if (g.is_abelian()) {
    if (static_cast<std::size_t>(g.exponent()) != n) throw TypeIdFailure("non-cyclic abelian group of order " + std::to_string(n));
    return CartanType{'A', static_cast<int>(n) - 1};
  }
  const std::size_t classes = conjugacy_classes(g).size();
  if (n == 24 && classes == 7) return CartanType{'E', 6};
  if (n == 48 && classes == 8) return CartanType{'E', 7};
  if (n == 120 && classes == 9) return CartanType{'E', 8};
  if (n % 4 == 0 && n >= 8) {
    const std::size_t m = n / 4;
    if (classes == m + 3) return CartanType{'D', static_cast<int>(m) + 2};
  }
  throw TypeIdFailure("no ADE type for a group of order " + std::to_string(n) + " with " + std::to_string(classes) +
                      " classes");
}

std::vector<CycNum> trace_coordinates(const KleinianGroup& k, const KleinianParam& c) {
  const std::size_t nc = k.table.classes.size();
  if (c.c.size() != nc) {
    throw SchemaError("expected " + std::to_string(nc) + " class values, got " + std::to_string(c.c.size()));
  }
  std::vector<CycNum> t;
  for (int ch : k.char_of_node) {
    CycNum sum(0);
    for (std::size_t K = 0; K < nc; ++K) {
      if (c.c[K].is_zero()) continue;
      sum += c.c[K] * CycNum(static_cast<long>(k.table.class_size(K))) * k.table.values[static_cast<std::size_t>(ch)][K];
    }
    t.push_back(sum);
  }
  return t;
}

ParamPoint c_to_lambda(const KleinianGroup& k, const KleinianParam& c) {
  if (c.c.empty() || !(c.c[0] == CycNum(1))) throw SchemaError("c must equal 1 at the identity");
  const auto t = trace_coordinates(k, c);
  const Rational order(static_cast<long>(k.order()));
  ParamPoint lambda;
  for (std::size_t i = 1; i < t.size(); ++i) lambda.push_back(rational_or_throw(t[i], "trace") / order);
  // level check: sum of dim N_i lambda_i = c_1 = 1
  Rational level = rational_or_throw(t[0], "trace") / order;
  for (std::size_t i = 0; i < lambda.size(); ++i) level += Rational(k.node_dims[i + 1]) * lambda[i];
  if (level != 1) throw InternalError("level of lambda(c) is " + to_string(level));
  return lambda;
}

KleinianParam lambda_to_c(const KleinianGroup& k, const ParamPoint& lambda) {
  const std::size_t r = static_cast<std::size_t>(k.rank());
  if (lambda.size() != r) throw SchemaError("expected " + std::to_string(r) + " coordinates");
  const Rational order(static_cast<long>(k.order()));
  RatVector t(r + 1);
  Rational l0 = 1;
  for (std::size_t i = 0; i < r; ++i) {
    t[i + 1] = order * lambda[i];
    l0 -= Rational(k.node_dims[i + 1]) * lambda[i];
  }
  t[0] = order * l0;
  KleinianParam out;
  for (std::size_t K = 0; K < k.table.classes.size(); ++K) {
    CycNum sum(0);
    for (std::size_t i = 0; i <= r; ++i) {
      if (t[i] == 0) continue;
      sum += CycNum(t[i]) * k.table.values[static_cast<std::size_t>(k.char_of_node[i])][K].conj();
    }
    out.c.push_back(sum / CycNum(order));
  }
  return out;
}

ParamPoint unit_parameter(const KleinianGroup& k) {
  ParamPoint p;
  for (std::size_t i = 1; i < k.node_dims.size(); ++i) {
    Rational x(k.node_dims[i], static_cast<long>(k.order()));
    x.canonicalize();
    p.push_back(x);
  }
  return p;
}

AffineSubspace support_subspace(const KleinianGroup& k, const Subgroup& n) {
  if (n.parent() != k.group) throw InternalError("subgroup of a different group");
  if (!is_normal(n)) throw NotNormal("support subgroup is not normal");
  const auto& cls = k.table.classes;
  const int e = k.table.exponent;
  const std::size_t r = static_cast<std::size_t>(k.rank());
  const Rational order(static_cast<long>(k.order()));
  std::vector<RatVector> rows;
  std::size_t inside = 0;
  for (std::size_t K = 1; K < cls.size(); ++K) {
    if (!n.contains(cls.classes[K][0])) continue;
    ++inside;
    const CycNum scale(Rational(static_cast<long>(cls.classes[K].size())) / order);
    for (int j = 0; j < e; ++j) {
      const CycNum z = CycNum::zeta(e, j) * scale;
      RatVector row;
      for (std::size_t i = 1; i <= r; ++i) {
        row.push_back(trace_from(z * k.table.values[static_cast<std::size_t>(k.char_of_node[i])][K], e));
      }
      rows.push_back(std::move(row));
    }
  }
  AffineSubspace s;
  s.base = unit_parameter(k);
  s.directions = row_space_basis(rows, r);
  if (s.directions.size() != inside) {
    throw InternalError("support subspace has dimension " + std::to_string(s.directions.size()) + ", expected " +
                        std::to_string(inside));
  }
  return s;
}

std::vector<std::size_t> special_vertex_bijection(const KleinianGroup& k) {
  const auto& t = k.table;
  std::vector<std::size_t> out;
  for (const auto& sigma : k.omega) {
    const int node = sigma.node_permutation[0];
    const auto ch = static_cast<std::size_t>(k.char_of_node[static_cast<std::size_t>(node)]);
    if (t.degrees[ch] != 1) throw BijectionFailure("special node " + std::to_string(node) + " is not linear");
    for (std::size_t i = 0; i < k.char_of_node.size(); ++i) {
      const auto target = static_cast<std::size_t>(k.char_of_node[static_cast<std::size_t>(sigma.node_permutation[i])]);
      const auto prod = pointwise_product(t.values[ch], t.values[static_cast<std::size_t>(k.char_of_node[i])]);
      if (prod != t.values[target]) {
        throw BijectionFailure("node permutation does not match tensoring at node " + std::to_string(i));
      }
    }
    out.push_back(ch);
  }
  const auto linear = one_dim_characters(t);
  auto sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != linear) throw BijectionFailure("Omega does not map onto the linear characters");
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t b = 0; b < out.size(); ++b) {
      const auto ab = omega_compose(k.omega, a, b);
      if (pointwise_product(t.values[out[a]], t.values[out[b]]) != t.values[out[ab]]) {
        throw BijectionFailure("Omega -> characters is not a homomorphism");
      }
    }
  }
  return out;
}

std::vector<int> support_elements(const KleinianGroup& k, const KleinianParam& c) {
  std::vector<int> out;
  for (std::size_t g = 0; g < k.order(); ++g) {
    if (!c.c[static_cast<std::size_t>(k.table.classes.class_of[g])].is_zero()) out.push_back(static_cast<int>(g));
  }
  return out;
}

}  // namespace khc
