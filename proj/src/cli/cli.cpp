#include "khc/cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "khc/errors.hpp"

namespace khc::cli {

namespace {

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Usage: return 1;
    case ErrorCategory::Falsifier: return 2;
    case ErrorCategory::Budget: return 3;
    case ErrorCategory::Schema: return 4;
  }
  return 2;
}

Json rationals(const RatVector& v) {
  Json j = Json::array();
  for (const auto& q : v) j.push_back(to_string(q));
  return j;
}

Json int_matrix(const IntMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).get_si());
    j.push_back(std::move(row));
  }
  return j;
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw SchemaError("malformed integer '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

ParamPoint parse_lambda(const RootSystem& rs, const std::string& text) {
  ParamPoint p = parse_rational_list(text);
  if (p.size() != static_cast<std::size_t>(rs.rank())) {
    throw SchemaError(rs.type().label() + " needs " + std::to_string(rs.rank()) + " coordinates, got " +
                      std::to_string(p.size()));
  }
  return p;
}

Json class_json(const KleinianGroup& k) {
  Json classes = Json::array();
  for (const auto& cl : k.table.classes.classes) {
    Json c;
    c["size"] = cl.size();
    c["representative"] = cl[0];
    c["element_order"] = k.group->element_order(cl[0]);
    c["trace"] = k.matrices[static_cast<std::size_t>(cl[0])].trace().to_string();
    classes.push_back(std::move(c));
  }
  return classes;
}

Json quotient_json(const Subgroup& n) {
  Json j;
  const Quotient q = quotient(n);
  const CharacterTable t = character_table(*q.group);
  j["quotient_order"] = q.group->order();
  j["irreducibles"] = t.size();
  j["degrees"] = t.degrees;
  return j;
}

const char* status_name(OrbitSearchResult::Status s) {
  switch (s) {
    case OrbitSearchResult::Status::Found: return "found";
    case OrbitSearchResult::Status::Infeasible: return "infeasible";
    case OrbitSearchResult::Status::Unknown: return "unknown";
  }
  return "unknown";
}

unsigned census_threads() {
  const char* env = std::getenv("HC_CENSUS_THREADS");
  if (!env || !*env) return 1;
  try {
    std::size_t used = 0;
    const long v = std::stol(env, &used);
    if (used != std::string(env).size() || v < 1 || v > 256) throw std::invalid_argument(env);
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    throw InvalidType(std::string("HC_CENSUS_THREADS must be an integer in 1..256, got '") + env + "'");
  }
}

void error_json(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_code"] = code;
  err << j.dump() << "\n";
}

// --- commands --------------------------------------------------------------

Json rootsys_info(const std::string& type) {
  const RootSystem rs(CartanType::parse(type));
  Json j;
  j["type"] = rs.type().label();
  j["rank"] = rs.rank();
  j["cartan"] = int_matrix(rs.cartan());
  j["affine_cartan"] = int_matrix(rs.affine_cartan());
  j["positive_roots"] = rs.positive_roots().size();
  j["highest_root"] = rs.highest_root();
  j["highest_short_root"] = rs.highest_short_root();
  j["marks"] = rs.marks();
  j["comarks"] = rs.comarks();
  j["wall_coefficients"] = rs.wall_coefficients();
  Json fg = Json::array();
  for (const auto& d : rs.fundamental_group()) fg.push_back(to_string(d));
  j["fundamental_group"] = std::move(fg);
  j["weyl_group_order"] = to_string(rs.weyl_group_order());
  return j;
}

Json rootsys_fold(const std::string& type, const std::vector<std::string>& perms) {
  const RootSystem rs(CartanType::parse(type));
  std::vector<std::vector<int>> autos;
  for (const auto& p : perms) autos.push_back(int_list(p));
  const FoldedData fd = fold(rs, autos);
  Json j;
  j["type"] = rs.type().label();
  j["orbits"] = fd.orbits;
  j["folded_cartan"] = int_matrix(fd.folded_cartan);
  j["generator_words"] = fd.generator_words;
  Json basis = Json::array();
  for (const auto& b : fd.invariant_basis) basis.push_back(rationals(b));
  j["invariant_basis"] = std::move(basis);
  return j;
}

Json alcove_reduce_cmd(const std::string& type, const std::string& lambda) {
  const RootSystem rs(CartanType::parse(type));
  const ParamPoint p = parse_lambda(rs, lambda);
  const AlcoveForm f = alcove_reduce(rs, p);
  Json j;
  j["type"] = rs.type().label();
  j["lambda"] = rationals(p);
  j["canonical"] = rationals(f.canonical);
  j["affine_coordinates"] = rationals(affine_coordinates(rs, f.canonical));
  j["word"] = f.word;
  j["facet"] = f.facet;
  return j;
}

Json alcove_stabilizer_cmd(const std::string& type, const std::string& lambda) {
  const RootSystem rs(CartanType::parse(type));
  const ParamPoint p = parse_lambda(rs, lambda);
  const auto omega = omega_group(rs);
  const auto stab = extended_stabilizer(rs, omega, p);
  Json j;
  j["type"] = rs.type().label();
  j["canonical"] = rationals(canonical(rs, p));
  j["omega_order"] = omega.size();
  Json elems = Json::array();
  for (std::size_t idx : stab) {
    Json e;
    e["index"] = idx;
    e["minuscule"] = omega[idx].minuscule;
    e["node_permutation"] = omega[idx].node_permutation;
    elems.push_back(std::move(e));
  }
  j["stabilizer"] = std::move(elems);
  return j;
}

Json kleinian_mckay(const std::string& type) {
  const KleinianGroup k = build_kleinian(CartanType::parse(type));
  Json j;
  j["type"] = k.type.label();
  j["order"] = k.order();
  j["classes"] = class_json(k);
  j["degrees"] = k.table.degrees;
  j["node_of_irreducible"] = k.node_of_char;
  j["node_dimensions"] = k.node_dims;
  j["mckay"] = mckay_matrix(k.table, k.natural);
  return j;
}

Json kleinian_to_lambda(const std::string& type, const std::string& c_text) {
  const KleinianGroup k = build_kleinian(CartanType::parse(type));
  KleinianParam c;
  for (const auto& item : split_commas(c_text)) c.c.push_back(cyc_eval(item));
  const auto traces = trace_coordinates(k, c);
  const ParamPoint lambda = c_to_lambda(k, c);
  Json j;
  j["type"] = k.type.label();
  Json t = Json::array();
  for (const auto& x : traces) t.push_back(x.to_string());
  j["traces"] = std::move(t);
  j["lambda"] = rationals(lambda);
  return j;
}

Json kleinian_to_c(const std::string& type, const std::string& lambda) {
  const KleinianGroup k = build_kleinian(CartanType::parse(type));
  const ParamPoint p = parse_lambda(k.rs(), lambda);
  const KleinianParam c = lambda_to_c(k, p);
  Json j;
  j["type"] = k.type.label();
  j["lambda"] = rationals(p);
  Json cs = Json::array();
  for (const auto& x : c.c) cs.push_back(x.to_string());
  j["c"] = std::move(cs);
  j["classes"] = class_json(k);
  return j;
}

struct GammaOptions {
  std::string type, lambda, engine = "iterative";
  std::size_t weyl_budget = OrbitSearchOptions{}.weyl_budget;
  int box_radius = 0;
};

Json hc_gamma_c(const GammaOptions& o, int& code) {
  const KleinianGroup k = build_kleinian(CartanType::parse(o.type));
  const ParamPoint p = parse_lambda(k.rs(), o.lambda);
  if (o.engine != "iterative" && o.engine != "direct" && o.engine != "both") {
    throw InvalidType("engine must be iterative, direct or both");
  }
  OrbitSearchOptions search;
  search.weyl_budget = o.weyl_budget;
  search.depth_limit = o.box_radius;
  Json j;
  j["type"] = k.type.label();
  j["order"] = k.order();
  j["lambda"] = rationals(p);
  j["canonical"] = rationals(canonical(k.rs(), p));
  j["engine"] = o.engine;

  std::optional<Subgroup> it_result, direct_result;
  if (o.engine != "direct") {
    const IterativeResult it = gamma_c_iterative(k, p);
    Json ij;
    ij["gamma_c"] = to_json(it.gamma_c);
    Json stages = Json::array();
    for (const auto& s : it.stages) {
      Json sj;
      sj["type"] = s.type.label();
      sj["order"] = s.order;
      sj["lambda"] = rationals(s.lambda);
      sj["gamma_prime_order"] = s.gamma_prime_order;
      stages.push_back(std::move(sj));
    }
    ij["stages"] = std::move(stages);
    j["iterative"] = std::move(ij);
    it_result = it.gamma_c;
  }
  if (o.engine != "iterative") {
    const DirectResult d = gamma_c_direct(k, p, search);
    Json dj;
    dj["gamma_c"] = d.gamma_c ? to_json(*d.gamma_c) : Json(nullptr);
    Json searches = Json::array();
    for (const auto& s : d.searches) {
      Json sj;
      sj["order"] = s.subgroup.order();
      sj["status"] = status_name(s.result.status);
      sj["implied"] = s.implied;
      sj["witness"] = s.result.witness ? rationals(*s.result.witness) : Json(nullptr);
      sj["orbit_points"] = s.result.orbit_points;
      searches.push_back(std::move(sj));
    }
    dj["searches"] = std::move(searches);
    Json cands = Json::array();
    for (const auto& c : d.candidates) cands.push_back(to_json(c));
    dj["candidates"] = std::move(cands);
    j["direct"] = std::move(dj);
    direct_result = d.gamma_c;
  }

  std::optional<Subgroup> answer = it_result ? it_result : direct_result;
  if (o.engine == "both") {
    const bool agree = it_result && direct_result && *it_result == *direct_result;
    j["agree"] = agree;
    if (!agree) code = 2;
  }
  if (answer) {
    j["status"] = "determined";
    j["gamma_c"] = to_json(*answer);
    const Json q = quotient_json(*answer);
    for (const auto& [key, value] : q.items()) j[key] = value;
  } else {
    j["status"] = "unknown";
    j["gamma_c"] = nullptr;
  }
  return j;
}

Json hc_classify(const std::string& path, const GammaOptions& o) {
  std::ifstream in(path);
  if (!in) throw InvalidType("cannot open '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  const SingularityDescriptor desc = parse_descriptor(doc);
  OrbitSearchOptions search;
  search.weyl_budget = o.weyl_budget;
  search.depth_limit = o.box_radius;
  const Census census = gamma_lambda_global(desc, search, census_threads());
  Json j;
  j["group_order"] = desc.group->order();
  j["leaves"] = desc.leaves.size();
  j["lambda0_present"] = desc.lambda0.has_value();
  j["census"] = to_json(census);
  return j;
}

Json hc_rho_prime(const std::string& type, const std::string& levi) {
  const RootSystem rs(CartanType::parse(type));
  const std::vector<int> l = levi.empty() ? std::vector<int>{} : int_list(levi);
  for (int i : l) {
    if (i < 1 || i > rs.rank()) throw InvalidType("levi index " + std::to_string(i) + " out of range");
  }
  Json j;
  j["type"] = rs.type().label();
  j["levi"] = l;
  j["rho_prime"] = rationals(rho_prime(rs, l));
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Harish-Chandra bimodule classification for Kleinian singularities", "khc"};
  app.require_subcommand(1);
  bool json_flag = true;
  app.add_flag("--json", json_flag, "JSON output (default)");

  std::function<Json(int&)> action;
  std::string type, lambda, c_text, levi, path;
  std::vector<std::string> perms;
  GammaOptions gopt;
  bool quick = false;

  auto* rootsys = app.add_subcommand("rootsys", "root system data")->require_subcommand(1);
  auto* info = rootsys->add_subcommand("info", "Cartan matrix, roots, marks, fundamental group");
  info->add_option("--type", type, "Cartan type, e.g. E7")->required();
  info->callback([&] { action = [&](int&) { return rootsys_info(type); }; });
  auto* fold_cmd = rootsys->add_subcommand("fold", "fold by diagram automorphisms");
  fold_cmd->add_option("--type", type)->required();
  fold_cmd->add_option("--perm", perms, "node permutation in one-line notation, e.g. 3,2,4,1");
  fold_cmd->callback([&] { action = [&](int&) { return rootsys_fold(type, perms); }; });

  auto* alcove = app.add_subcommand("alcove", "fundamental alcove")->require_subcommand(1);
  auto* reduce = alcove->add_subcommand("reduce", "canonical alcove representative");
  reduce->add_option("--type", type)->required();
  reduce->add_option("--lambda", lambda, "fundamental-weight coordinates, e.g. 1/2,3")->required();
  reduce->callback([&] { action = [&](int&) { return alcove_reduce_cmd(type, lambda); }; });
  auto* stab = alcove->add_subcommand("stabilizer", "Omega-stabilizer of the canonical point");
  stab->add_option("--type", type)->required();
  stab->add_option("--lambda", lambda)->required();
  stab->callback([&] { action = [&](int&) { return alcove_stabilizer_cmd(type, lambda); }; });

  auto* kleinian = app.add_subcommand("kleinian", "binary polyhedral groups")->require_subcommand(1);
  auto* mckay = kleinian->add_subcommand("mckay", "character table and McKay labeling");
  mckay->add_option("--type", type)->required();
  mckay->callback([&] { action = [&](int&) { return kleinian_mckay(type); }; });
  auto* to_lambda = kleinian->add_subcommand("to-lambda", "parameter c (per class) to lambda");
  to_lambda->add_option("--type", type)->required();
  to_lambda->add_option("--c", c_text, "values per conjugacy class, in 'kleinian mckay' order")->required();
  to_lambda->callback([&] { action = [&](int&) { return kleinian_to_lambda(type, c_text); }; });
  auto* to_c = kleinian->add_subcommand("to-c", "lambda to the parameter c");
  to_c->add_option("--type", type)->required();
  to_c->add_option("--lambda", lambda)->required();
  to_c->callback([&] { action = [&](int&) { return kleinian_to_c(type, lambda); }; });

  auto* hc = app.add_subcommand("hc", "classification engines")->require_subcommand(1);
  auto* gamma = hc->add_subcommand("gamma-c", "minimal normal subgroup Gamma_c");
  gamma->add_option("--type", gopt.type)->required();
  gamma->add_option("--lambda", gopt.lambda)->required();
  gamma->add_option("--engine", gopt.engine, "iterative, direct or both");
  gamma->add_option("--weyl-budget", gopt.weyl_budget, "maximal W-orbit size");
  gamma->add_option("--box-radius", gopt.box_radius, "E8: maximal length of W-elements searched");
  gamma->callback([&] { action = [&](int& code) { return hc_gamma_c(gopt, code); }; });
  auto* classify = hc->add_subcommand("classify", "global Gamma_lambda and census");
  classify->add_option("descriptor", path, "descriptor JSON file")->required();
  classify->add_option("--weyl-budget", gopt.weyl_budget);
  classify->add_option("--box-radius", gopt.box_radius);
  classify->callback([&] { action = [&](int&) { return hc_classify(path, gopt); }; });
  auto* rho = hc->add_subcommand("rho-prime", "half sum of positive roots outside a Levi");
  rho->add_option("--type", type)->required();
  rho->add_option("--levi", levi, "simple-root indices, e.g. 1,3,4");
  rho->callback([&] { action = [&](int&) { return hc_rho_prime(type, levi); }; });

  auto* self = app.add_subcommand("selfcheck", "consistency suites");
  self->add_flag("--quick", quick, "orthogonality, McKay and round trips only");
  self->callback([&] {
    action = [&](int& code) {
      Json j = selfcheck(quick);
      if (!j["passed"].get<bool>()) code = 2;
      return j;
    };
  });

  std::vector<std::string> argv_store{"khc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    error_json(err, "UsageError", e.what(), 1);
    return 1;
  }
  if (!action) {
    error_json(err, "UsageError", "no command", 1);
    return 1;
  }
  try {
    int code = 0;
    const Json result = action(code);
    out << result.dump(2) << "\n";
    return code;
  } catch (const Error& e) {
    const int code = exit_code(e.category());
    error_json(err, e.kind(), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    error_json(err, "InternalError", e.what(), 2);
    return 2;
  }
}

}  // namespace khc::cli
