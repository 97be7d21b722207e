#include <map>

#include "khc/cli/cli.hpp"
#include "khc/errors.hpp"

namespace khc::cli {

namespace {

const Json& field(const Json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw SchemaError(std::string("missing field '") + name + "'");
  return obj.at(name);
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw SchemaError(std::string(what) + " must contain integers");
    out.push_back(x.get<int>());
  }
  return out;
}

Rational rational_field(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw SchemaError("rationals are given as \"p/q\" strings");
}

struct AmbientGroup {
  GroupPtr group;
  std::map<std::vector<int>, int> perm_index;  // only for permutation groups
};

AmbientGroup parse_group(const Json& g) {
  if (!g.is_object()) throw SchemaError("group must be an object");
  if (g.contains("permutations")) {
    std::vector<std::vector<int>> gens;
    for (const auto& p : g.at("permutations")) gens.push_back(int_list(p, "permutation"));
    if (gens.empty()) throw SchemaError("at least one permutation is required");
    const std::size_t m = gens[0].size();
    for (const auto& p : gens) {
      std::vector<int> sorted = p;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (p.size() != m || sorted[i] != static_cast<int>(i)) throw SchemaError("invalid permutation");
      }
    }
    GeneratedGroup gg = group_from_permutations(gens);
    AmbientGroup out{gg.group, {}};
    for (std::size_t e = 0; e < gg.words.size(); ++e) {
      std::vector<int> p(m);
      for (std::size_t i = 0; i < m; ++i) p[i] = static_cast<int>(i);
      for (int letter : gg.words[e]) {
        // apply p first, then the generator
        std::vector<int> q(m);
        for (std::size_t i = 0; i < m; ++i) q[i] = gens[static_cast<std::size_t>(letter)][static_cast<std::size_t>(p[i])];
        p = std::move(q);
      }
      out.perm_index.emplace(std::move(p), static_cast<int>(e));
    }
    return out;
  }
  if (g.contains("table")) {
    const Json& t = g.at("table");
    if (!t.is_array() || t.empty()) throw SchemaError("table must be a non-empty array of rows");
    const std::size_t n = t.size();
    std::vector<int> mult;
    for (const auto& row : t) {
      auto r = int_list(row, "table row");
      if (r.size() != n) throw SchemaError("table must be square");
      for (int x : r) {
        if (x < 0 || static_cast<std::size_t>(x) >= n) throw SchemaError("table entry out of range");
      }
      mult.insert(mult.end(), r.begin(), r.end());
    }
    try {
      return {std::make_shared<const FinGroup>(std::move(mult), n), {}};
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw SchemaError(std::string("invalid group table: ") + e.what());
    }
  }
  if (g.contains("kleinian")) {
    const auto& label = g.at("kleinian");
    if (!label.is_string()) throw SchemaError("kleinian must be a type label");
    return {build_kleinian(CartanType::parse(label.get<std::string>())).group, {}};
  }
  throw SchemaError("group needs one of 'permutations', 'table', 'kleinian'");
}

}  // namespace

SingularityDescriptor parse_descriptor(const Json& doc) {
  if (!doc.is_object()) throw SchemaError("descriptor must be a JSON object");
  AmbientGroup ambient = parse_group(field(doc, "group"));
  SingularityDescriptor desc;
  desc.group = ambient.group;
  const Json& leaves = field(doc, "leaves");
  if (!leaves.is_array()) throw SchemaError("leaves must be an array");
  for (const auto& l : leaves) {
    LeafRecord leaf;
    const Json& type = field(l, "type");
    if (!type.is_string()) throw SchemaError("leaf type must be a string");
    leaf.type = CartanType::parse(type.get<std::string>());
    if (l.contains("monodromy")) {
      const Json& m = l.at("monodromy");
      if (!m.is_array()) throw SchemaError("monodromy must be an array of permutations");
      for (const auto& p : m) leaf.monodromy.push_back(int_list(p, "monodromy permutation"));
    }
    const Json& phi = field(l, "phi");
    if (!phi.is_array()) throw SchemaError("phi must be an array");
    for (const auto& x : phi) {
      if (x.is_number_integer()) {
        leaf.phi.push_back(x.get<int>());
      } else if (x.is_array() && !ambient.perm_index.empty()) {
        auto it = ambient.perm_index.find(int_list(x, "phi permutation"));
        if (it == ambient.perm_index.end()) throw SchemaError("phi permutation is not in the group");
        leaf.phi.push_back(it->second);
      } else {
        throw SchemaError("phi entries are element indices or permutations");
      }
    }
    const Json& lambda = field(l, "lambda");
    if (!lambda.is_array()) throw SchemaError("lambda must be an array");
    for (const auto& x : lambda) leaf.lambda.push_back(rational_field(x));
    desc.leaves.push_back(std::move(leaf));
  }
  if (doc.contains("lambda0") && !doc.at("lambda0").is_null()) {
    RatVector l0;
    if (!doc.at("lambda0").is_array()) throw SchemaError("lambda0 must be an array");
    for (const auto& x : doc.at("lambda0")) l0.push_back(rational_field(x));
    desc.lambda0 = std::move(l0);
  }
  return desc;
}

Json to_json(const Subgroup& subgroup) {
  Json j;
  j["order"] = subgroup.order();
  j["elements"] = subgroup.elements();
  return j;
}

Json to_json(const Census& census) {
  Json j;
  j["gamma_lambda"] = to_json(census.gamma_lambda);
  j["quotient_order"] = census.quotient_order;
  j["irreducibles"] = census.irreducibles;
  j["degrees"] = census.degrees;
  Json leaves = Json::array();
  for (const auto& l : census.leaves) {
    Json lj;
    lj["engine"] = l.engine;
    lj["gamma_c"] = to_json(l.local);
    lj["image"] = l.image;
    leaves.push_back(std::move(lj));
  }
  j["leaves"] = std::move(leaves);
  return j;
}

}  // namespace khc::cli
