#include "khc/fingroup/fingroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "khc/errors.hpp"

namespace khc {

FinGroup::FinGroup(std::vector<int> mult, std::size_t order, std::vector<std::string> labels)
    : order_(order), mult_(std::move(mult)), labels_(std::move(labels)) {
  const std::size_t n = order_;
  if (n == 0) throw SchemaError("group of order 0");
  if (mult_.size() != n * n) throw SchemaError("multiplication table has wrong size");
  for (int v : mult_)
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw SchemaError("multiplication table entry out of range");
  if (labels_.empty()) {
    labels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) labels_[i] = "g" + std::to_string(i);
  }
  if (labels_.size() != n) throw SchemaError("label count does not match group order");

  identity_ = -1;
  for (std::size_t e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      ok = mul(static_cast<int>(e), static_cast<int>(x)) == static_cast<int>(x) &&
           mul(static_cast<int>(x), static_cast<int>(e)) == static_cast<int>(x);
    if (ok) identity_ = static_cast<int>(e);
  }
  if (identity_ < 0) throw SchemaError("multiplication table has no identity");

  inverse_.assign(n, -1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (mul(static_cast<int>(x), static_cast<int>(y)) == identity_) {
        if (mul(static_cast<int>(y), static_cast<int>(x)) != identity_) throw SchemaError("inverse is not two-sided");
        inverse_[x] = static_cast<int>(y);
        break;
      }
  for (int v : inverse_)
    if (v < 0) throw SchemaError("element without inverse");

  auto check = [this](int a, int b, int c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw SchemaError("multiplication table is not associative");
  };
  if (n <= 512) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) check(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c));
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    for (int t = 0; t < 100000; ++t) check(pick(rng), pick(rng), pick(rng));
  }
}

int FinGroup::power(int a, long k) const {
  if (k < 0) return power(inv(a), -k);
  int result = identity_;
  int base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

int FinGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

int FinGroup::exponent() const {
  int e = 1;
  for (std::size_t a = 0; a < order_; ++a) e = std::lcm(e, element_order(static_cast<int>(a)));
  return e;
}

bool FinGroup::is_abelian() const {
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = a + 1; b < order_; ++b)
      if (mul(static_cast<int>(a), static_cast<int>(b)) != mul(static_cast<int>(b), static_cast<int>(a))) return false;
  return true;
}

// ---------------------------------------------------------------------------

Subgroup::Subgroup(GroupPtr parent, std::vector<int> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)), member_(parent_->order(), false) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (int g : elements_) member_[static_cast<std::size_t>(g)] = true;
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  for (int g : elements_)
    if (!other.contains(g)) return false;
  return true;
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {g->identity()}); }

Subgroup whole_group(const GroupPtr& g) {
  std::vector<int> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g, std::move(all));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<int> out;
  for (int g : a.elements())
    if (b.contains(g)) out.push_back(g);
  return Subgroup(a.parent(), std::move(out));
}

namespace {

// Closure of `start` (assumed to contain the identity) under right multiplication by `gens`.
std::vector<int> close_under(const FinGroup& g, std::vector<int> start, std::span<const int> gens) {
  std::vector<bool> seen(g.order(), false);
  std::vector<int> elems;
  auto add = [&](int x) {
    if (!seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      elems.push_back(x);
    }
  };
  add(g.identity());
  for (int x : start) add(x);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (int s : gens) add(g.mul(elems[i], s));
  return elems;
}

}  // namespace

Subgroup generated_subgroup(const GroupPtr& g, std::span<const int> generators) {
  return Subgroup(g, close_under(*g, {}, generators));
}

Subgroup normal_closure(const GroupPtr& g, std::span<const int> seed) {
  std::vector<bool> seen(g->order(), false);
  std::vector<int> conjugates;
  for (int x : seed) {
    for (std::size_t h = 0; h < g->order(); ++h) {
      const int y = g->conj(static_cast<int>(h), x);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        conjugates.push_back(y);
      }
    }
  }
  return generated_subgroup(g, conjugates);
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  std::vector<int> gens = a.elements();
  gens.insert(gens.end(), b.elements().begin(), b.elements().end());
  return generated_subgroup(a.parent(), gens);
}

bool is_normal(const Subgroup& h) {
  const FinGroup& g = *h.parent();
  for (int x : h.elements())
    for (std::size_t y = 0; y < g.order(); ++y)
      if (!h.contains(g.conj(static_cast<int>(y), x))) return false;
  return true;
}

Subgroup commutator_subgroup(const GroupPtr& g) {
  std::vector<bool> seen(g->order(), false);
  std::vector<int> comms;
  for (std::size_t a = 0; a < g->order(); ++a)
    for (std::size_t b = 0; b < g->order(); ++b) {
      const int ia = static_cast<int>(a), ib = static_cast<int>(b);
      const int c = g->mul(g->mul(ia, ib), g->mul(g->inv(ia), g->inv(ib)));
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = true;
        comms.push_back(c);
      }
    }
  return generated_subgroup(g, comms);
}

ConjugacyClasses conjugacy_classes(const FinGroup& g) {
  ConjugacyClasses cc;
  cc.class_of.assign(g.order(), -1);
  auto build = [&](int x) {
    std::vector<int> cls;
    for (std::size_t h = 0; h < g.order(); ++h) {
      const int y = g.conj(static_cast<int>(h), x);
      if (cc.class_of[static_cast<std::size_t>(y)] < 0) {
        cc.class_of[static_cast<std::size_t>(y)] = static_cast<int>(cc.classes.size());
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    cc.classes.push_back(std::move(cls));
  };
  build(g.identity());
  for (std::size_t x = 0; x < g.order(); ++x)
    if (cc.class_of[x] < 0) build(static_cast<int>(x));
  return cc;
}

std::vector<Subgroup> normal_subgroups(const GroupPtr& g) {
  if (g->order() > 10000) throw CharacterBudgetExceeded("normal subgroup enumeration limited to order 10^4");
  const ConjugacyClasses cc = conjugacy_classes(*g);
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> found;
  found.push_back(trivial_subgroup(g));
  seen.insert(found.back().elements());
  // Every normal subgroup is a union of classes; grow known ones one class at a time.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& cls : cc.classes) {
      if (found[i].contains(cls.front())) continue;
      std::vector<int> start = found[i].elements();
      start.insert(start.end(), cls.begin(), cls.end());
      std::vector<int> gens = start;
      Subgroup m(g, close_under(*g, start, gens));
      if (seen.insert(m.elements()).second) found.push_back(std::move(m));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

Quotient quotient(const Subgroup& n) {
  if (!is_normal(n)) throw NotNormal("quotient by a subgroup that is not normal");
  const FinGroup& g = *n.parent();
  const std::size_t size = g.order();
  std::vector<int> rep_of(size, -1);
  std::vector<int> reps;
  for (std::size_t x = 0; x < size; ++x) {
    if (rep_of[x] >= 0) continue;
    const int r = static_cast<int>(x);  // least element of its coset, by scan order
    for (int m : n.elements()) rep_of[static_cast<std::size_t>(g.mul(r, m))] = r;
    reps.push_back(r);
  }
  std::vector<int> index_of(size, -1);
  for (std::size_t i = 0; i < reps.size(); ++i) index_of[static_cast<std::size_t>(reps[i])] = static_cast<int>(i);
  Quotient q;
  q.coset_representatives = reps;
  q.projection.resize(size);
  for (std::size_t x = 0; x < size; ++x) q.projection[x] = index_of[static_cast<std::size_t>(rep_of[x])];
  const std::size_t k = reps.size();
  std::vector<int> mult(k * k);
  std::vector<std::string> labels(k);
  for (std::size_t i = 0; i < k; ++i) {
    labels[i] = g.labels()[static_cast<std::size_t>(reps[i])] + "N";
    for (std::size_t j = 0; j < k; ++j) mult[i * k + j] = q.projection[static_cast<std::size_t>(g.mul(reps[i], reps[j]))];
  }
  q.group = std::make_shared<const FinGroup>(std::move(mult), k, std::move(labels));
  return q;
}

EmbeddedGroup as_group(const Subgroup& h) {
  const FinGroup& g = *h.parent();
  const auto& e = h.elements();
  std::vector<int> pos(g.order(), -1);
  // Keep the identity at position 0 so that derived groups follow the matrix-group convention.
  std::vector<int> order = e;
  std::stable_partition(order.begin(), order.end(), [&](int x) { return x == g.identity(); });
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  const std::size_t k = order.size();
  std::vector<int> mult(k * k);
  std::vector<std::string> labels(k);
  for (std::size_t i = 0; i < k; ++i) {
    labels[i] = g.labels()[static_cast<std::size_t>(order[i])];
    for (std::size_t j = 0; j < k; ++j) {
      const int p = pos[static_cast<std::size_t>(g.mul(order[i], order[j]))];
      if (p < 0) throw InternalError("as_group: subset is not closed under multiplication");
      mult[i * k + j] = p;
    }
  }
  return {std::make_shared<const FinGroup>(std::move(mult), k, std::move(labels)), std::move(order)};
}

// ---------------------------------------------------------------------------

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

namespace {

struct Mat2Hash {
  std::size_t operator()(const Mat2& m) const {
    std::size_t h = m.a.hash();
    for (const CycNum* c : {&m.b, &m.c, &m.d}) h = h * 1000003u ^ c->hash();
    return h;
  }
};

std::string word_label(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string s;
  for (int i : word) s += static_cast<char>('a' + i);
  return s;
}

template <typename Element, typename Hash>
GeneratedGroup close_generators(const std::vector<Element>& gens, const Element& id, std::size_t budget,
                                std::vector<Element>* elements_out) {
  std::unordered_map<Element, int, Hash> index;
  std::vector<Element> elems{id};
  std::vector<std::vector<int>> words{{}};
  index.emplace(id, 0);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Element y = elems[i] * gens[s];
      if (index.count(y)) continue;
      if (elems.size() >= budget)
        throw ClosureBudgetExceeded("group closure exceeded " + std::to_string(budget) + " elements");
      index.emplace(y, static_cast<int>(elems.size()));
      auto w = words[i];
      w.push_back(static_cast<int>(s));
      words.push_back(std::move(w));
      elems.push_back(std::move(y));
    }
  }
  const std::size_t n = elems.size();
  std::vector<int> mult(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto it = index.find(elems[i] * elems[j]);
      if (it == index.end()) throw InternalError("closure is not closed under products");
      mult[i * n + j] = it->second;
    }
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = word_label(words[i]);
  GeneratedGroup out{std::make_shared<const FinGroup>(std::move(mult), n, std::move(labels)), std::move(words)};
  if (elements_out) *elements_out = std::move(elems);
  return out;
}

struct Perm {
  std::vector<int> p;
  friend Perm operator*(const Perm& x, const Perm& y) {
    // (x * y)(i) = y(x(i)): apply x first, matching left-to-right words.
    Perm r{std::vector<int>(x.p.size())};
    for (std::size_t i = 0; i < x.p.size(); ++i) r.p[i] = y.p[static_cast<std::size_t>(x.p[i])];
    return r;
  }
  friend bool operator==(const Perm&, const Perm&) = default;
};

struct PermHash {
  std::size_t operator()(const Perm& x) const {
    std::size_t h = 0;
    for (int v : x.p) h = h * 131 + static_cast<std::size_t>(v);
    return h;
  }
};

}  // namespace

MatrixGroup group_from_matrices(std::span<const Mat2> generators, std::size_t budget, bool require_det_one) {
  int conductor = 1;
  for (const auto& m : generators)
    for (const CycNum* c : {&m.a, &m.b, &m.c, &m.d}) conductor = std::lcm(conductor, c->conductor());
  std::vector<Mat2> gens;
  for (const auto& m : generators) {
    if (m.det().is_zero()) throw NotInvertible("generator matrix is singular");
    if (require_det_one && !(m.det() == CycNum(1))) throw NotInvertible("generator matrix does not have determinant 1");
    gens.push_back({m.a.promote(conductor), m.b.promote(conductor), m.c.promote(conductor), m.d.promote(conductor)});
  }
  const Mat2 id{CycNum(Rational(1), conductor), CycNum(Rational(0), conductor), CycNum(Rational(0), conductor),
                CycNum(Rational(1), conductor)};
  MatrixGroup out;
  static_cast<GeneratedGroup&>(out) = close_generators<Mat2, Mat2Hash>(gens, id, budget, &out.matrices);
  return out;
}

GeneratedGroup group_from_permutations(const std::vector<std::vector<int>>& generators, std::size_t budget) {
  if (generators.empty()) throw SchemaError("no permutation generators");
  const std::size_t m = generators.front().size();
  std::vector<Perm> gens;
  for (const auto& g : generators) {
    if (g.size() != m) throw SchemaError("permutation generators have different degrees");
    std::vector<int> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < m; ++i)
      if (sorted[i] != static_cast<int>(i)) throw SchemaError("generator is not a permutation of 0..m-1");
    gens.push_back({g});
  }
  Perm id{std::vector<int>(m)};
  std::iota(id.p.begin(), id.p.end(), 0);
  return close_generators<Perm, PermHash>(gens, id, budget, nullptr);
}

}  // namespace khc
