// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <atomic>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "../cli/corpus_runner.hpp"
#include "khc/errors.hpp"
#include "khc/hcclassify/hcclassify.hpp"

using namespace khc;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, double limit_seconds, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    v.pass = false;
    v.detail += "; over the time limit";
  }
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << (v.pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << v.detail << " (" << timing << ")"
            << std::endl;
  if (!v.pass) ++failures;
}

template <typename F>
void for_each_parallel(std::size_t n, F f) {
  std::vector<std::thread> pool;
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  for (std::size_t t = 0; t < std::min(hw, n); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

Rational random_rational(std::mt19937_64& rng, long max_num, long max_den) {
  Rational q(std::uniform_int_distribution<long>(-max_num, max_num)(rng),
             std::uniform_int_distribution<long>(1, max_den)(rng));
  q.canonicalize();
  return q;
}

std::vector<int> random_word(std::mt19937_64& rng, int r, int max_len, int lo) {
  std::vector<int> w(std::uniform_int_distribution<int>(0, max_len)(rng));
  for (auto& x : w) x = std::uniform_int_distribution<int>(lo, r)(rng);
  return w;
}

const std::vector<std::string> kTableTypes = {"A1", "A2", "A3", "A4", "A5", "A7", "A11", "A15", "A23", "A31", "A47",
                                              "D4", "D5", "D6", "D7", "D8", "D10", "D14", "E6", "E7", "E8"};
const std::vector<std::string> kEngineTypes = {"A1", "A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6", "E7"};

std::vector<std::string> all_types_rank_le_8() {
  std::vector<std::string> out;
  for (int r = 1; r <= 8; ++r) out.push_back("A" + std::to_string(r));
  for (int r = 2; r <= 8; ++r) out.push_back("B" + std::to_string(r));
  for (int r = 3; r <= 8; ++r) out.push_back("C" + std::to_string(r));
  for (int r = 4; r <= 8; ++r) out.push_back("D" + std::to_string(r));
  for (int r = 6; r <= 8; ++r) out.push_back("E" + std::to_string(r));
  out.push_back("F4");
  out.push_back("G2");
  return out;
}

// 1 -----------------------------------------------------------------------------

bool orthogonality(const CharacterTable& t) {
  const std::size_t n = t.size();
  if (t.classes.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      CycNum s(0);
      for (std::size_t k = 0; k < n; ++k) {
        s += CycNum(static_cast<long>(t.class_size(k))) * t.values[i][k] * t.values[j][k].conj();
      }
      if (!(s == CycNum(i == j ? static_cast<long>(t.group_order) : 0L))) return false;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      CycNum s(0);
      for (std::size_t i = 0; i < n; ++i) s += t.values[i][k] * t.values[i][l].conj();
      const CycNum expected = k == l ? CycNum(Rational(static_cast<long>(t.group_order), static_cast<long>(t.class_size(k))))
                                     : CycNum(0);
      if (!(s == expected)) return false;
    }
  }
  long sq = 0;
  for (int d : t.degrees) sq += static_cast<long>(d) * d;
  return static_cast<std::size_t>(sq) == t.group_order;
}

Verdict criterion_character_tables() {
  int ok = 0;
  std::string bad;
  for (const auto& label : kTableTypes) {
    const auto gens = standard_generators(CartanType::parse(label));
    const MatrixGroup g = group_from_matrices(gens);
    if (orthogonality(character_table(*g.group))) {
      ++ok;
    } else {
      bad += " " + label;
    }
  }
  return {ok == static_cast<int>(kTableTypes.size()),
          std::to_string(ok) + "/" + std::to_string(kTableTypes.size()) + " groups (orders 2..120)" + bad};
}

// 2 -----------------------------------------------------------------------------

bool mckay_matches(const KleinianGroup& k) {
  const IntMatrix& ac = k.rs().affine_cartan();
  const std::size_t n = k.char_of_node.size();
  if (k.char_of_node[0] != 0 || k.table.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& chi = k.table.values[static_cast<std::size_t>(k.char_of_node[i])];
    if (k.table.degrees[static_cast<std::size_t>(k.char_of_node[i])] != k.node_dims[i]) return false;
    // chi_nat * chi_i = sum over neighbours, with multiplicity
    for (std::size_t K = 0; K < k.table.classes.size(); ++K) {
      CycNum rhs(0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) rhs += CycNum(-ac(i, j).get_si()) * k.table.values[static_cast<std::size_t>(k.char_of_node[j])][K];
      }
      if (!(k.natural[K] * chi[K] == rhs)) return false;
    }
  }
  return true;
}

Verdict criterion_mckay() {
  int ok = 0;
  std::string bad;
  for (const auto& label : kTableTypes) {
    if (mckay_matches(build_kleinian(CartanType::parse(label)))) {
      ++ok;
    } else {
      bad += " " + label;
    }
  }
  return {ok == static_cast<int>(kTableTypes.size()), std::to_string(ok) + "/" + std::to_string(kTableTypes.size()) + " types" + bad};
}

// 3 -----------------------------------------------------------------------------

Verdict criterion_fundamental_groups() {
  int checked = 0;
  std::string bad;
  auto expect = [&](const std::string& label, std::vector<long> inv) {
    const RootSystem rs(CartanType::parse(label));
    std::vector<long> got;
    for (const auto& z : rs.fundamental_group()) got.push_back(z.get_si());
    ++checked;
    if (got != inv) bad += " " + label;
  };
  for (int n = 1; n <= 8; ++n) expect("A" + std::to_string(n), {n + 1});
  for (int n = 4; n <= 8; ++n) expect("D" + std::to_string(n), n % 2 == 0 ? std::vector<long>{2, 2} : std::vector<long>{4});
  expect("E6", {3});
  expect("E7", {2});
  expect("E8", {});
  return {bad.empty(), std::to_string(checked) + " types" + (bad.empty() ? "" : ", mismatch:" + bad)};
}

// 4 -----------------------------------------------------------------------------

Verdict criterion_alcove() {
  const auto types = all_types_rank_le_8();
  std::vector<int> bad(types.size(), 0);
  for_each_parallel(types.size(), [&](std::size_t ti) {
    const RootSystem rs(CartanType::parse(types[ti]));
    const int r = rs.rank();
    std::mt19937_64 rng(1000 + ti);
    for (int trial = 0; trial < 1000; ++trial) {
      ParamPoint x(static_cast<std::size_t>(r));
      for (auto& q : x) q = random_rational(rng, 12, 9);
      const AlcoveForm f = alcove_reduce(rs, x);
      bool ok = rs.apply_word(f.word, x) == f.canonical;
      for (const auto& a : affine_coordinates(rs, f.canonical)) ok = ok && a >= 0;
      std::vector<long> mu(static_cast<std::size_t>(r));
      for (auto& v : mu) v = std::uniform_int_distribution<long>(-4, 4)(rng);
      const ParamPoint moved = rs.translate_by_root(rs.apply_word(random_word(rng, r, 10, 1), x), mu);
      const AlcoveForm g = alcove_reduce(rs, moved);
      ok = ok && g.canonical == f.canonical && rs.apply_word(g.word, moved) == g.canonical;
      if (!ok) ++bad[ti];
    }
  });
  int total_bad = 0;
  std::string which;
  for (std::size_t i = 0; i < types.size(); ++i) {
    total_bad += bad[i];
    if (bad[i]) which += " " + types[i];
  }
  return {total_bad == 0, std::to_string(types.size()) + " types x 1000 points, " + std::to_string(total_bad) + " mismatches" + which};
}

// 5 -----------------------------------------------------------------------------

std::vector<ParamPoint> orbit_in_box(const RootSystem& rs, const ParamPoint& lambda, int box) {
  const int r = rs.rank();
  std::set<ParamPoint> worbit{lambda};
  std::vector<ParamPoint> queue{lambda};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (int i = 1; i <= r; ++i) {
      auto q = rs.reflect(i, queue[k]);
      if (worbit.insert(q).second) queue.push_back(q);
    }
  }
  const auto inv = inverse(to_rational(rs.cartan()));
  std::vector<ParamPoint> out;
  for (const auto& w : worbit) {
    // translates w + k inside the box with k in the root lattice (A^-1 k integral)
    std::vector<long> lo(static_cast<std::size_t>(r)), hi(static_cast<std::size_t>(r));
    bool empty = false;
    for (int j = 0; j < r; ++j) {
      Rational a = Rational(-box) - w[static_cast<std::size_t>(j)], b = Rational(box) - w[static_cast<std::size_t>(j)];
      Integer c;
      mpz_cdiv_q(c.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
      lo[static_cast<std::size_t>(j)] = c.get_si();
      mpz_fdiv_q(c.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
      hi[static_cast<std::size_t>(j)] = c.get_si();
      empty = empty || lo[static_cast<std::size_t>(j)] > hi[static_cast<std::size_t>(j)];
    }
    if (empty) continue;
    std::vector<long> k = lo;
    while (true) {
      RatVector kq;
      for (long v : k) kq.push_back(Rational(v));
      const auto y = inv->apply(std::span<const Rational>(kq));
      if (std::all_of(y.begin(), y.end(), [](const Rational& q) { return is_integer(q); })) {
        ParamPoint p = w;
        for (int j = 0; j < r; ++j) p[static_cast<std::size_t>(j)] += k[static_cast<std::size_t>(j)];
        out.push_back(p);
      }
      int j = 0;
      while (j < r && k[static_cast<std::size_t>(j)] == hi[static_cast<std::size_t>(j)]) {
        k[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)];
        ++j;
      }
      if (j == r) break;
      ++k[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

bool in_subspace(const ParamPoint& p, const AffineSubspace& s) {
  const std::size_t r = p.size();
  RatVector d(r);
  for (std::size_t j = 0; j < r; ++j) d[j] = p[j] - s.base[j];
  if (s.directions.empty()) return std::all_of(d.begin(), d.end(), [](const Rational& q) { return q == 0; });
  RatMatrix m(r, s.directions.size());
  for (std::size_t c = 0; c < s.directions.size(); ++c) {
    for (std::size_t j = 0; j < r; ++j) m(j, c) = s.directions[c][j];
  }
  return solve(m, d).has_value();
}

Verdict criterion_orbit_oracle() {
  std::mt19937_64 rng(5150);
  const char* small[] = {"A1", "A2", "A3", "B2", "B3", "C3", "G2"};
  int agree = 0, found = 0;
  const int instances = 100;
  for (int trial = 0; trial < instances; ++trial) {
    const RootSystem rs(CartanType::parse(small[std::uniform_int_distribution<int>(0, 6)(rng)]));
    const int r = rs.rank();
    ParamPoint lambda(static_cast<std::size_t>(r));
    for (auto& q : lambda) q = random_rational(rng, 3, 3);
    AffineSubspace s;
    const int m = std::min(std::uniform_int_distribution<int>(0, 2)(rng), r - 1);
    for (int k = 0; k < m; ++k) {
      RatVector v(static_cast<std::size_t>(r));
      for (auto& x : v) x = std::uniform_int_distribution<int>(-2, 2)(rng);
      s.directions.push_back(v);
    }
    if (std::uniform_int_distribution<int>(0, 1)(rng)) {
      s.base = rs.apply_word(random_word(rng, r, 3, 0), lambda);
      for (const auto& v : s.directions) {
        for (int j = 0; j < r; ++j) s.base[static_cast<std::size_t>(j)] -= v[static_cast<std::size_t>(j)];
      }
    } else {
      s.base.resize(static_cast<std::size_t>(r));
      for (auto& q : s.base) q = random_rational(rng, 2, 3);
    }
    bool box_hit = false;
    for (const auto& p : orbit_in_box(rs, lambda, 6)) box_hit = box_hit || in_subspace(p, s);
    const auto res = orbit_meets_affine_subspace(rs, lambda, s);
    const bool hit = res.status == OrbitSearchResult::Status::Found;
    const bool witness_ok = !hit || (res.witness && in_subspace(*res.witness, s));
    if (hit == box_hit && witness_ok) ++agree;
    found += hit ? 1 : 0;
  }
  return {agree == instances, std::to_string(agree) + "/" + std::to_string(instances) + " agree (" + std::to_string(found) +
                                  " meeting, " + std::to_string(instances - found) + " not)"};
}

// 6, 7, 8 ---------------------------------------------------------------------------

struct EngineStats {
  int samples = 0, agree = 0, lemma54 = 0, coherent = 0, invariant_samples = 0, invariant = 0;
  std::string error;
};

std::vector<EngineStats> engine_stats;

std::set<std::size_t> characters_trivial_on(const KleinianGroup& k, const Subgroup& h) {
  std::set<std::size_t> out;
  for (std::size_t chi : one_dim_characters(k.table)) {
    if (h.is_subset_of(character_kernel(k.group, k.table, chi))) out.insert(chi);
  }
  return out;
}

void run_engine_suite() {
  engine_stats.assign(kEngineTypes.size(), {});
  for_each_parallel(kEngineTypes.size(), [&](std::size_t ti) {
    EngineStats& st = engine_stats[ti];
    try {
      const KleinianGroup k = build_kleinian(CartanType::parse(kEngineTypes[ti]));
      const auto normals = normal_subgroups(k.group);
      const auto bij = special_vertex_bijection(k);
      ClassificationContext ctx(k);
      std::mt19937_64 rng(7000 + ti);
      for (int trial = 0; trial < 200; ++trial) {
        const ParamPoint p = sample_parameter(k, normals, rng);
        ++st.samples;
        std::optional<Subgroup> it;
        try {
          it = gamma_c_iterative(ctx, p).gamma_c;
        } catch (const Lemma54Violation&) {
          ++st.lemma54;
          continue;
        }
        const DirectResult d = gamma_c_direct(k, p);
        if (d.gamma_c && *d.gamma_c == *it) ++st.agree;
        std::set<std::size_t> image;
        for (std::size_t s : extended_stabilizer(k.rs(), k.omega, p)) image.insert(bij[s]);
        if (characters_trivial_on(k, *it) == image) ++st.coherent;
      }
      for (int trial = 0; trial < 100; ++trial) {
        const ParamPoint p = sample_parameter(k, normals, rng);
        const Subgroup base = gamma_c_iterative(ctx, p).gamma_c;
        const auto& sigma = k.omega[std::uniform_int_distribution<std::size_t>(0, k.omega.size() - 1)(rng)];
        const ParamPoint moved = k.rs().apply_word(random_word(rng, k.rank(), 12, 0), p);
        bool ok = gamma_c_iterative(ctx, canonical(k.rs(), p)).gamma_c == base;
        ok = ok && gamma_c_iterative(ctx, sigma.apply(p)).gamma_c == base;
        ok = ok && gamma_c_iterative(ctx, moved).gamma_c == base;
        ++st.invariant_samples;
        if (ok) ++st.invariant;
      }
    } catch (const std::exception& e) {
      st.error = e.what();
    }
  });
}

Verdict criterion_agreement() {
  run_engine_suite();
  bool pass = true;
  std::ostringstream detail;
  for (std::size_t i = 0; i < kEngineTypes.size(); ++i) {
    const auto& s = engine_stats[i];
    pass = pass && s.error.empty() && s.samples >= 200 && s.agree == s.samples && s.lemma54 == 0;
    detail << kEngineTypes[i] << " " << s.agree << "/" << s.samples << (s.lemma54 ? " lemma!" : "")
           << (s.error.empty() ? "" : " error: " + s.error) << (i + 1 < kEngineTypes.size() ? ", " : "");
  }
  return {pass, detail.str()};
}

Verdict criterion_coherence() {
  bool pass = true;
  int total = 0, coherent = 0;
  for (const auto& s : engine_stats) {
    pass = pass && s.error.empty() && s.coherent == s.samples - s.lemma54 && s.samples > 0;
    total += s.samples;
    coherent += s.coherent;
  }
  return {pass, std::to_string(coherent) + "/" + std::to_string(total) + " samples coherent"};
}

Verdict criterion_invariance() {
  bool pass = true;
  int total = 0, ok = 0;
  for (const auto& s : engine_stats) {
    pass = pass && s.error.empty() && s.invariant == s.invariant_samples && s.invariant_samples >= 100;
    total += s.invariant_samples;
    ok += s.invariant;
  }
  return {pass, std::to_string(ok) + "/" + std::to_string(total) + " samples invariant under canonical form, Omega and W^a"};
}

// 9 -----------------------------------------------------------------------------

std::vector<int> generator_elements(const KleinianGroup& k) {
  std::vector<int> out;
  for (std::size_t s = 0; s < k.generators.size(); ++s) {
    for (std::size_t e = 0; e < k.order(); ++e) {
      if (k.words[e] == std::vector<int>{static_cast<int>(s)}) out.push_back(static_cast<int>(e));
    }
  }
  return out;
}

Verdict criterion_distinguished() {
  std::string bad;
  int ok = 0;
  const std::vector<std::string> types = {"A1", "A2", "A3", "A5", "A7", "D4", "D5", "D6", "D8", "E6", "E7", "E8"};
  for (const auto& label : types) {
    const KleinianGroup k = build_kleinian(CartanType::parse(label));
    const ParamPoint unit = unit_parameter(k);
    const bool e8 = label == "E8";
    const std::optional<Subgroup> g = e8 ? gamma_c_direct(k, unit).gamma_c : gamma_c_iterative(k, unit).gamma_c;
    SingularityDescriptor desc{k.group, {LeafRecord{k.type, {}, generator_elements(k), unit}}, std::nullopt};
    const Census c = gamma_lambda_global(desc);
    if (g && g->is_trivial() && c.gamma_lambda.is_trivial() && c.irreducibles == k.table.size()) {
      ++ok;
    } else {
      bad += " " + label;
    }
  }
  const KleinianGroup a1 = build_kleinian(CartanType::parse("A1"));
  const ParamPoint vertex{Rational(0)};
  SingularityDescriptor desc{a1.group, {LeafRecord{a1.type, {}, {1}, vertex}}, std::nullopt};
  const Census c = gamma_lambda_global(desc);
  const bool a1_ok = gamma_c_iterative(a1, vertex).gamma_c.is_whole() && gamma_c_direct(a1, vertex).gamma_c->is_whole() &&
                     c.irreducibles == 1;
  return {bad.empty() && a1_ok, std::to_string(ok) + "/" + std::to_string(types.size()) +
                                    " families trivial at the unit parameter" + bad +
                                    (a1_ok ? "; A1 vertex gives Z/2, census 1" : "; A1 vertex check failed")};
}

// 10 ----------------------------------------------------------------------------

// D4 in orthonormal coordinates: a1 = e1-e2, a2 = e2-e3, a3 = e3-e4, a4 = e3+e4.
bool d4_rho_prime_matches() {
  const std::vector<std::vector<int>> simple = {{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> positive;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      for (int sign : {-1, 1}) {
        std::vector<int> v(4, 0);
        v[static_cast<std::size_t>(i)] = 1;
        v[static_cast<std::size_t>(j)] = sign;
        positive.push_back(v);
      }
    }
  }
  RatMatrix s(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) s(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = simple[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  const RootSystem rs(CartanType::parse("D4"));
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> levi;
    for (int i = 0; i < 4; ++i) {
      if (mask & (1 << i)) levi.push_back(i + 1);
    }
    RatVector rho(4, Rational(0));
    for (const auto& root : positive) {
      RatVector b(root.begin(), root.end());
      const auto coeffs = solve(s, b);
      if (!coeffs) return false;
      bool outside = false;
      for (int i = 0; i < 4; ++i) {
        if (!(mask & (1 << i)) && (*coeffs)[static_cast<std::size_t>(i)] != 0) outside = true;
      }
      if (!outside) continue;
      for (int k = 0; k < 4; ++k) rho[static_cast<std::size_t>(k)] += Rational(root[static_cast<std::size_t>(k)]) / 2;
    }
    ParamPoint expected;
    for (const auto& a : simple) {
      Rational dot = 0;
      for (int k = 0; k < 4; ++k) dot += rho[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(k)];
      expected.push_back(dot);  // (alpha, alpha) = 2
    }
    if (rho_prime(rs, levi) != expected) return false;
  }
  return true;
}

Verdict criterion_rho_prime() {
  std::string bad;
  for (const auto& label : all_types_rank_le_8()) {
    const RootSystem rs(CartanType::parse(label));
    if (rho_prime(rs, {}) != ParamPoint(static_cast<std::size_t>(rs.rank()), Rational(1))) bad += " " + label;
  }
  const RootSystem a2(CartanType::parse("A2"));
  const bool a2_ok = rho_prime(a2, {1}) == ParamPoint{Rational(0), Rational(3, 2)};
  const bool d4_ok = d4_rho_prime_matches();
  return {bad.empty() && a2_ok && d4_ok, std::string("rho for all types") + (bad.empty() ? "" : " except" + bad) +
                                             (a2_ok ? "; A2 {1} -> (0, 3/2)" : "; A2 case wrong") +
                                             (d4_ok ? "; D4 all 16 Levi subsets" : "; D4 mismatch")};
}

// 11 ----------------------------------------------------------------------------

Verdict criterion_determinism() {
  const auto corpus = testing::load_corpus(KHC_CORPUS_DIR);
  int ok = 0;
  std::string bad;
  for (const auto& c : corpus) {
    const auto a = testing::run_khc(KHC_BINARY, c.args, 1);
    const auto b = testing::run_khc(KHC_BINARY, c.args, 1);
    const auto p = testing::run_khc(KHC_BINARY, c.args, 3);
    const bool same = a.exit_code == c.expected_exit && a.output == b.output && a.exit_code == b.exit_code &&
                      a.output == p.output && a.exit_code == p.exit_code &&
                      (a.exit_code != 0 || testing::round_trips(a.output));
    if (same) {
      ++ok;
    } else {
      bad += " [" + c.args + "]";
    }
  }
  return {ok == static_cast<int>(corpus.size()) && !corpus.empty(),
          std::to_string(ok) + "/" + std::to_string(corpus.size()) + " corpus commands byte-identical across runs and thread counts" + bad};
}

}  // namespace

int main() {
  report(1, "character tables", 10, criterion_character_tables);
  report(2, "McKay graphs", 10, criterion_mckay);
  report(3, "fundamental groups", 1, criterion_fundamental_groups);
  report(4, "alcove reduction", 120, criterion_alcove);
  report(5, "orbit meets subspace vs box enumeration", 60, criterion_orbit_oracle);
  report(6, "iterative and direct engines agree", 3600, criterion_agreement);
  report(7, "linear characters match the stabilizer", 0, criterion_coherence);
  report(8, "Omega and W^a invariance", 0, criterion_invariance);
  report(9, "distinguished parameters", 0, criterion_distinguished);
  report(10, "rho prime", 1, criterion_rho_prime);
  report(11, "CLI determinism", 0, criterion_determinism);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
