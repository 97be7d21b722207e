#include "khc/hcclassify/hcclassify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <set>
#include <thread>

#include "khc/errors.hpp"

namespace khc {

namespace {

Subgroup subgroup_from(const GroupPtr& g, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  return Subgroup(g, std::move(elements));
}

// Runs f(0..n-1) on up to `threads` workers; results and the reported exception are
// those of the sequential order.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F f) {
  std::vector<std::optional<T>> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (t <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<T> result;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    result.push_back(std::move(*out[i]));
  }
  return result;
}

bool strictly_inside(const Subgroup& a, const Subgroup& b) { return a.order() < b.order() && a.is_subset_of(b); }

}  // namespace

Subgroup gamma_prime(const KleinianGroup& k, const ParamPoint& lambda) {
  const auto stab = extended_stabilizer(k.rs(), k.omega, lambda);
  const auto bij = special_vertex_bijection(k);
  Subgroup out = whole_group(k.group);
  for (std::size_t idx : stab) out = intersect(out, character_kernel(k.group, k.table, bij[idx]));
  return out;
}

ClassificationContext::ClassificationContext(const KleinianGroup& top) {
  auto level = std::make_shared<Level>();
  level->k = top;
  level->embedding.resize(top.order());
  std::iota(level->embedding.begin(), level->embedding.end(), 0);
  level->local = level->embedding;
  top_ = std::move(level);
}

std::shared_ptr<const ClassificationContext::Level> ClassificationContext::level(const std::vector<int>& top_elements) {
  if (top_elements.size() == top().order()) return top_;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(top_elements);
    if (it != cache_.end()) return it->second;
  }
  const Subgroup h(top().group, top_elements);
  EmbeddedGroup sub = as_group(h);
  const auto type = identify_ade_type(*sub.group);
  if (!type) throw InternalError("no Kleinian structure on the trivial group");
  std::vector<Mat2> mats;
  mats.reserve(sub.embedding.size());
  for (int g : sub.embedding) mats.push_back(top().matrices[static_cast<std::size_t>(g)]);
  auto level = std::make_shared<Level>();
  level->k = kleinian_from_matrices(sub.group, std::move(mats), *type);
  level->embedding = sub.embedding;
  level->local.assign(top().order(), -1);
  for (std::size_t i = 0; i < sub.embedding.size(); ++i) level->local[static_cast<std::size_t>(sub.embedding[i])] = static_cast<int>(i);
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(top_elements, std::move(level)).first->second;
}

IterativeResult gamma_c_iterative(ClassificationContext& ctx, const ParamPoint& lambda) {
  const GroupPtr& top = ctx.top().group;
  auto level = ctx.top_level();
  ParamPoint lam = lambda;
  std::vector<IterativeStage> stages;
  while (true) {
    const KleinianGroup& k = level->k;
    if (k.type.family == 'E' && k.type.rank == 8) {
      throw UnsupportedE8("the iterative engine does not handle E8; use the direct engine");
    }
    lam = canonical(k.rs(), lam);
    const KleinianParam c = lambda_to_c(k, lam);
    const Subgroup gp = gamma_prime(k, lam);
    stages.push_back({k.type, k.order(), lam, gp.order()});
    for (int g : support_elements(k, c)) {
      if (!gp.contains(g)) {
        throw Lemma54Violation(k.type.label() + ": c is supported outside Gamma' at element " + std::to_string(g));
      }
    }
    if (gp.is_whole() || gp.is_trivial()) {
      std::vector<int> elems;
      for (int g : gp.elements()) elems.push_back(level->embedding[static_cast<std::size_t>(g)]);
      Subgroup out = subgroup_from(top, std::move(elems));
      if (!is_normal(out)) throw InternalError("Gamma_c is not normal");
      return {out, std::move(stages)};
    }
    std::vector<int> elems;
    for (int g : gp.elements()) elems.push_back(level->embedding[static_cast<std::size_t>(g)]);
    std::sort(elems.begin(), elems.end());
    auto next = ctx.level(elems);
    // Gamma'-classes refine Gamma-classes, so c restricts classwise.
    KleinianParam restricted;
    for (const auto& cl : next->k.table.classes.classes) {
      const int top_elem = next->embedding[static_cast<std::size_t>(cl[0])];
      const int here = level->local[static_cast<std::size_t>(top_elem)];
      restricted.c.push_back(c.c[static_cast<std::size_t>(k.table.classes.class_of[static_cast<std::size_t>(here)])]);
    }
    lam = c_to_lambda(next->k, restricted);
    level = std::move(next);
  }
}

IterativeResult gamma_c_iterative(const KleinianGroup& k, const ParamPoint& lambda) {
  ClassificationContext ctx(k);
  return gamma_c_iterative(ctx, lambda);
}

DirectResult gamma_c_direct(const KleinianGroup& k, const ParamPoint& lambda, const OrbitSearchOptions& options) {
  const bool e8 = k.type.family == 'E' && k.type.rank == 8;
  DirectResult out;
  std::vector<Subgroup> hits, undecided;
  for (const auto& n : normal_subgroups(k.group)) {
    const bool implied = std::any_of(hits.begin(), hits.end(), [&](const Subgroup& h) { return h.is_subset_of(n); });
    SubgroupSearch s{n, {}, implied};
    if (implied) {
      s.result.status = OrbitSearchResult::Status::Found;
      s.result.note = "contains a smaller hit";
    } else {
      s.result = orbit_meets_affine_subspace(k.rs(), lambda, support_subspace(k, n), options);
    }
    if (s.result.status == OrbitSearchResult::Status::Found) hits.push_back(n);
    if (s.result.status == OrbitSearchResult::Status::Unknown) undecided.push_back(n);
    out.searches.push_back(std::move(s));
  }

  std::vector<Subgroup> minimal_hits;
  for (const auto& h : hits) {
    if (std::none_of(hits.begin(), hits.end(), [&](const Subgroup& o) { return strictly_inside(o, h); })) {
      minimal_hits.push_back(h);
    }
  }
  std::vector<Subgroup> pool = hits;
  pool.insert(pool.end(), undecided.begin(), undecided.end());
  for (const auto& p : pool) {
    if (std::none_of(pool.begin(), pool.end(), [&](const Subgroup& o) { return strictly_inside(o, p); })) {
      out.candidates.push_back(p);
    }
  }
  std::sort(out.candidates.begin(), out.candidates.end());

  if (!e8 && undecided.empty()) {
    const bool unique = minimal_hits.size() == 1 &&
                        std::all_of(hits.begin(), hits.end(), [&](const Subgroup& h) { return minimal_hits[0].is_subset_of(h); });
    if (!unique) {
      throw NoUniqueMinimal(k.type.label() + ": " + std::to_string(minimal_hits.size()) +
                            " minimal normal subgroups meet the orbit");
    }
    out.gamma_c = minimal_hits[0];
  } else if (out.candidates.size() == 1 && minimal_hits.size() == 1 && out.candidates[0] == minimal_hits[0]) {
    out.gamma_c = minimal_hits[0];
  }
  return out;
}

std::vector<int> extend_homomorphism(const KleinianGroup& slice, const FinGroup& target, const std::vector<int>& phi) {
  if (phi.size() != slice.generators.size()) {
    throw SchemaError(slice.type.label() + " has " + std::to_string(slice.generators.size()) + " standard generators, phi has " +
                      std::to_string(phi.size()) + " images");
  }
  for (int x : phi) {
    if (x < 0 || static_cast<std::size_t>(x) >= target.order()) throw SchemaError("phi image out of range");
  }
  std::vector<int> images(slice.order());
  for (std::size_t e = 0; e < slice.order(); ++e) {
    int acc = target.identity();
    for (int letter : slice.words[e]) acc = target.mul(acc, phi[static_cast<std::size_t>(letter)]);
    images[e] = acc;
  }
  const FinGroup& g = *slice.group;
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) {
      const int ab = g.mul(static_cast<int>(a), static_cast<int>(b));
      if (target.mul(images[a], images[b]) != images[static_cast<std::size_t>(ab)]) {
        throw BadHomomorphism(slice.type.label() + ": phi does not respect the relations of the standard generators");
      }
    }
  }
  return images;
}

namespace {

void validate_leaf(const LeafRecord& leaf, const FinGroup& group, const KleinianGroup& slice) {
  const int r = leaf.type.rank;
  if (leaf.lambda.size() != static_cast<std::size_t>(r)) {
    throw SchemaError(leaf.type.label() + " leaf needs " + std::to_string(r) + " lambda coordinates");
  }
  const RootSystem& rs = slice.rs();
  for (const auto& perm : leaf.monodromy) {
    if (perm.size() != static_cast<std::size_t>(r)) throw SchemaError("monodromy permutation has the wrong length");
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < r; ++i) {
      if (sorted[static_cast<std::size_t>(i)] != i + 1) throw SchemaError("monodromy entry is not a permutation of 1..r");
    }
    for (int i = 1; i <= r; ++i) {
      for (int j = 1; j <= r; ++j) {
        if (rs.cartan(perm[static_cast<std::size_t>(i - 1)], perm[static_cast<std::size_t>(j - 1)]) != rs.cartan(i, j)) {
          throw NotAutomorphism("monodromy permutation is not a diagram automorphism of " + leaf.type.label());
        }
      }
      if (leaf.lambda[static_cast<std::size_t>(perm[static_cast<std::size_t>(i - 1)] - 1)] != leaf.lambda[static_cast<std::size_t>(i - 1)]) {
        throw SchemaError("lambda is not invariant under the monodromy");
      }
    }
  }
  extend_homomorphism(slice, group, leaf.phi);
}

}  // namespace

void validate_descriptor(const SingularityDescriptor& desc) {
  if (!desc.group) throw SchemaError("descriptor has no group");
  std::map<std::string, std::unique_ptr<KleinianGroup>> slices;
  for (const auto& leaf : desc.leaves) {
    auto& slot = slices[leaf.type.label()];
    if (!slot) slot = std::make_unique<KleinianGroup>(build_kleinian(leaf.type));
    validate_leaf(leaf, *desc.group, *slot);
  }
}

Census gamma_lambda_global(const SingularityDescriptor& desc, const OrbitSearchOptions& options, unsigned threads) {
  if (!desc.group) throw SchemaError("descriptor has no group");
  std::map<std::string, std::shared_ptr<ClassificationContext>> contexts;
  for (const auto& leaf : desc.leaves) {
    auto& slot = contexts[leaf.type.label()];
    if (!slot) slot = std::make_shared<ClassificationContext>(build_kleinian(leaf.type));
    validate_leaf(leaf, *desc.group, slot->top());
  }

  auto leaves = parallel_map<LeafOutcome>(desc.leaves.size(), threads, [&](std::size_t i) {
    const LeafRecord& leaf = desc.leaves[i];
    ClassificationContext& ctx = *contexts.at(leaf.type.label());
    const KleinianGroup& k = ctx.top();
    std::optional<Subgroup> local;
    std::string engine;
    if (leaf.type.family == 'E' && leaf.type.rank == 8) {
      DirectResult d = gamma_c_direct(k, leaf.lambda, options);
      if (!d.gamma_c) throw UnsupportedE8("E8 leaf " + std::to_string(i) + ": Gamma_c is not determined by the search");
      local = *d.gamma_c;
      engine = "direct";
    } else {
      local = gamma_c_iterative(ctx, leaf.lambda).gamma_c;
      engine = "iterative";
    }
    const auto phi = extend_homomorphism(k, *desc.group, leaf.phi);
    std::set<int> image;
    for (int g : local->elements()) image.insert(phi[static_cast<std::size_t>(g)]);
    return LeafOutcome{*local, std::vector<int>(image.begin(), image.end()), engine};
  });

  std::vector<int> seed;
  for (const auto& l : leaves) seed.insert(seed.end(), l.image.begin(), l.image.end());
  Subgroup gl = normal_closure(desc.group, seed);
  Quotient q = quotient(gl);
  const CharacterTable t = character_table(*q.group);
  Census census{gl, q.group->order(), t.size(), t.degrees, std::move(leaves)};
  return census;
}

ParamPoint sample_parameter(const KleinianGroup& k, const std::vector<Subgroup>& normals, std::mt19937_64& rng) {
  const int r = k.rank();
  auto rational = [&](long max_num, long max_den) {
    std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
  };
  ParamPoint p;
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    for (int i = 0; i < r; ++i) p.push_back(rational(6, 6));
  } else {
    const auto& n = normals[std::uniform_int_distribution<std::size_t>(0, normals.size() - 1)(rng)];
    const AffineSubspace s = support_subspace(k, n);
    p = s.base;
    for (const auto& d : s.directions) {
      const Rational a = rational(8, 3);
      for (int i = 0; i < r; ++i) p[static_cast<std::size_t>(i)] += a * d[static_cast<std::size_t>(i)];
    }
  }
  std::vector<int> word(std::uniform_int_distribution<std::size_t>(0, 6)(rng));
  for (auto& x : word) x = std::uniform_int_distribution<int>(0, r)(rng);
  p = k.rs().apply_word(word, p);
  return k.omega[std::uniform_int_distribution<std::size_t>(0, k.omega.size() - 1)(rng)].apply(p);
}

}  // namespace khc
