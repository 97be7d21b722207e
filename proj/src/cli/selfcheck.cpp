#include <random>

#include "khc/cli/cli.hpp"
#include "khc/errors.hpp"

namespace khc::cli {

namespace {

const char* kQuickTypes[] = {"A1", "A2", "A3", "A5", "D4", "D5", "D6", "E6", "E7", "E8"};
const char* kEngineTypes[] = {"A1", "A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6"};

bool orthogonal(const CharacterTable& t) {
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(inner_product(t, t.values[i], t.values[j]) == CycNum(i == j ? 1 : 0))) return false;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      CycNum sum(0);
      for (std::size_t i = 0; i < n; ++i) sum += t.values[i][k] * t.values[i][l].conj();
      const CycNum expected = k == l ? CycNum(Rational(static_cast<long>(t.group_order), static_cast<long>(t.class_size(k))))
                                     : CycNum(0);
      if (!(sum == expected)) return false;
    }
  }
  long sq = 0;
  for (int d : t.degrees) sq += static_cast<long>(d) * d;
  return static_cast<std::size_t>(sq) == t.group_order;
}

Json check(const std::string& name, bool passed, const std::string& detail) {
  Json j;
  j["name"] = name;
  j["passed"] = passed;
  j["detail"] = detail;
  return j;
}

template <typename F>
Json guarded(const std::string& name, F f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return check(name, false, e.what());
  }
}

}  // namespace

Json selfcheck(bool quick) {
  Json checks = Json::array();
  std::mt19937_64 rng(20240607);
  for (const char* label : kQuickTypes) {
    const std::string type(label);
    std::optional<KleinianGroup> k;
    checks.push_back(guarded("mckay " + type, [&] {
      k = build_kleinian(CartanType::parse(type));
      return check("mckay " + type, true, "order " + std::to_string(k->order()));
    }));
    if (!k) continue;
    checks.push_back(guarded("orthogonality " + type, [&] {
      return check("orthogonality " + type, orthogonal(k->table), std::to_string(k->table.size()) + " irreducibles");
    }));
    checks.push_back(guarded("round-trip " + type, [&] {
      bool ok = true;
      for (int trial = 0; trial < 5; ++trial) {
        ParamPoint p;
        for (int i = 0; i < k->rank(); ++i) {
          Rational q(std::uniform_int_distribution<long>(-9, 9)(rng), std::uniform_int_distribution<long>(1, 9)(rng));
          q.canonicalize();
          p.push_back(q);
        }
        ok = ok && c_to_lambda(*k, lambda_to_c(*k, p)) == p;
      }
      return check("round-trip " + type, ok, "5 random parameters");
    }));
  }
  if (!quick) {
    for (const char* label : kEngineTypes) {
      const std::string name = std::string("engines agree ") + label;
      checks.push_back(guarded(name, [&] {
        const KleinianGroup k = build_kleinian(CartanType::parse(label));
        const auto normals = normal_subgroups(k.group);
        ClassificationContext ctx(k);
        int agree = 0;
        const int samples = 10;
        for (int trial = 0; trial < samples; ++trial) {
          const ParamPoint p = sample_parameter(k, normals, rng);
          const auto direct = gamma_c_direct(k, p);
          if (direct.gamma_c && gamma_c_iterative(ctx, p).gamma_c == *direct.gamma_c) ++agree;
        }
        return check(name, agree == samples, std::to_string(agree) + "/" + std::to_string(samples) + " samples");
      }));
    }
  }
  bool all = true;
  for (const auto& c : checks) all = all && c["passed"].get<bool>();
  Json out;
  out["mode"] = quick ? "quick" : "full";
  out["passed"] = all;
  out["checks"] = std::move(checks);
  return out;
}

}  // namespace khc::cli
