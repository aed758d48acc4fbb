#include "skewgroup/analysis.hpp"

#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "skewgroup/error.hpp"
#include "skewgroup/families.hpp"

namespace skewgroup {

namespace {

Json header(const char* command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

Json triples_json(const std::vector<Triple>& ts) {
  Json a = Json::array();
  for (const Triple& t : ts) a.push_back(t.to_string());
  return a;
}

}  // namespace

Json validation_json(const ValidationReport& r) {
  Json j;
  j["valid"] = r.valid;
  Json pairs = Json::array();
  for (const auto& [a, b] : r.non_skew) pairs.push_back(Json::array({a.to_string(), b.to_string()}));
  j["non_skew"] = pairs;
  j["meets_zero"] = r.meets_zero;
  j["meets_identity"] = r.meets_identity;
  return j;
}

Json transversal_json(const TransversalReport& r) {
  Json j;
  j["exists"] = r.exists;
  j["method"] = to_string(r.method);
  j["infinitely_many"] = r.infinitely_many;
  Json w = Json::array();
  for (const ProjPoint& v : r.witnesses) w.push_back(point_to_json(v));
  j["witnesses"] = w;
  return j;
}

Json abelian_json(const AbelianReport& r) {
  Json j;
  j["abelian"] = r.abelian;
  j["matrix_classes_commute"] = r.matrix_classes_commute;
  Json pairs = Json::array();
  for (const PairLabel& p : r.pairs) pairs.push_back({{"i", p.i}, {"j", p.j}, {"label", p.label}});
  j["pairs"] = pairs;
  return j;
}

Json generators_json(const GeneratorSet& g) {
  Json a = Json::array();
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    a.push_back({{"element", matrix_to_json(g.elements[i].rep())}, {"triples", triples_json(g.provenance[i])}});
  }
  return a;
}

Json ratio_json(const RatioReport& r) {
  Json j;
  j["proves_infinite"] = r.proves_infinite;
  Json entries = Json::array();
  for (const RatioEntry& e : r.entries) {
    Json x;
    x["element"] = matrix_to_json(e.element.rep());
    x["triples"] = triples_json(e.triples);
    x["status"] = to_string(e.status);
    if (e.order) x["order"] = *e.order;
    else x["order"] = nullptr;
    entries.push_back(x);
  }
  j["entries"] = entries;
  return j;
}

Json group_json(const GroupClosure& g, const std::optional<Classification>& c) {
  Json j;
  j["order"] = g.order();
  j["budget_hit"] = g.budget_hit;
  if (!c) {
    j["label"] = nullptr;
    return j;
  }
  j["label"] = c->name();
  j["abelian"] = c->abelian;
  Json census = Json::object();
  for (const auto& [ord, count] : c->order_census) census[std::to_string(ord)] = count;
  j["order_census"] = census;
  if (c->r && c->s) {
    j["witnesses"] = {{"r", matrix_to_json(c->r->rep())}, {"s", matrix_to_json(c->s->rep())}, {"relations", c->relations}};
  } else {
    j["witnesses"] = nullptr;
  }
  j["violation"] = c->violation;
  return j;
}

Json orbit_json(const OrbitReport& r) {
  Json j;
  j["seed"] = r.seed.to_string();
  j["carrier"] = r.carrier.to_string();
  j["total_size"] = r.total_size;
  Json sizes = Json::object();
  for (const LineOrbit& o : r.per_line) sizes[o.line.to_string()] = o.v.size();
  j["per_line_sizes"] = sizes;
  if (r.stabilizer_order) j["stabilizer_order"] = *r.stabilizer_order;
  else j["stabilizer_order"] = nullptr;
  j["truncated"] = r.truncated;
  Json pts = Json::object();
  for (const LineOrbit& o : r.per_line) {
    Json a = Json::array();
    for (const P3Point& p : o.points) a.push_back(p.to_string());
    pts[o.line.to_string()] = a;
  }
  j["points"] = pts;
  return j;
}

Outcome validate_command(const LineConfig& cfg) {
  Outcome o;
  o.report = header("validate");
  const ValidationReport r = validate(cfg);
  o.report["validation"] = validation_json(r);
  o.exit_code = r.valid ? kExitOk : kExitInvalidInput;
  return o;
}

Outcome transversal_command(const LineConfig& cfg) {
  Outcome o;
  o.report = header("transversals");
  o.report["transversals"] = transversal_json(transversal_compute(cfg));
  return o;
}

Outcome group_command(const LineConfig& cfg, const AnalyzeOptions& opt) {
  require_valid(cfg);
  Outcome o;
  o.report = header("group");
  const GeneratorSet gens = generator_set(cfg, opt.mode);
  const GroupClosure g = group_closure(gens, opt.budget);
  std::optional<Classification> c;
  if (!g.budget_hit) c = classify(g);
  Json gj = group_json(g, c);
  for (auto it = gj.begin(); it != gj.end(); ++it) o.report[it.key()] = it.value();
  o.report["generators"] = generators_json(gens);
  o.report["eigratio"] = ratio_json(eigratio_check(cfg, opt.ratio_bound));
  if (g.budget_hit) o.exit_code = kExitBudget;
  else if (c->violation) o.exit_code = kExitInvariant;
  return o;
}

namespace {

struct OrbitRun {
  Json report;
  bool truncated = false;
  bool violation = false;
};

OrbitRun run_orbit(const LineConfig& cfg, const GroupClosure& g, const AnalyzeOptions& opt) {
  const GroupClosure* gp = g.budget_hit ? nullptr : &g;
  P3Point seed;
  if (opt.seed_point) {
    seed = P3Point::parse(cfg.field(), *opt.seed_point);
  } else {
    if (!gp) throw Error(ErrorCode::IncompleteClosure, "a generic seed needs a completed closure");
    const LineId line = cfg.has_infinity() ? LineId::infinity() : cfg.lines().front();
    seed = point_on_line(cfg, line, generic_point(g));
  }
  const std::size_t budget =
      opt.orbit_budget.value_or(gp ? default_orbit_budget(cfg, g) : 10 * opt.budget * cfg.line_count());
  const OrbitReport r = opt.oracle ? orbit_geometric(cfg, seed, budget, gp) : orbit_full(cfg, seed, budget, gp);
  OrbitRun out;
  out.report = orbit_json(r);
  out.report["method"] = opt.oracle ? "geometric" : "matrix";
  out.report["seed_kind"] = opt.seed_point ? "given" : "generic";
  out.truncated = r.truncated;
  if (gp && !r.truncated) {
    const LineOrbitSize los = orbit_on_line(g, r.on(r.carrier)->v.front());
    const bool holds = los.size == r.size_on(r.carrier) && r.stabilizer_order && *r.stabilizer_order == los.stabilizer_order;
    std::set<std::size_t> sizes;
    for (const LineOrbit& lo : r.per_line) sizes.insert(lo.v.size());
    out.report["orbit_stabilizer_holds"] = holds;
    out.report["per_line_sizes_equal"] = sizes.size() == 1;
    out.violation = !holds;
  }
  return out;
}

}  // namespace

Outcome orbit_command(const LineConfig& cfg, const AnalyzeOptions& opt) {
  require_valid(cfg);
  const GroupClosure g = group_closure(generator_set(cfg, opt.mode), opt.budget);
  Outcome o;
  o.report = header("orbit");
  o.report["group_order"] = g.order();
  o.report["group_budget_hit"] = g.budget_hit;
  OrbitRun run = run_orbit(cfg, g, opt);
  o.report["orbit"] = run.report;
  if (run.violation) o.exit_code = kExitInvariant;
  else if (run.truncated) o.exit_code = kExitBudget;
  return o;
}

Outcome analyze(const LineConfig& cfg, const AnalyzeOptions& opt) {
  Outcome o;
  o.report = header("analyze");
  o.report["config"] = config_to_json(cfg);
  const ValidationReport v = validate(cfg);
  o.report["validation"] = validation_json(v);
  if (!v.valid) {
    o.exit_code = kExitInvalidInput;
    return o;
  }
  if (cfg.has_zero() && cfg.has_infinity()) o.report["transversals"] = transversal_json(transversal_compute(cfg));
  const AbelianReport ab = predict_abelian(cfg);
  o.report["abelian_prediction"] = abelian_json(ab);
  const GeneratorSet gens = generator_set(cfg, opt.mode);
  o.report["generators"] = generators_json(gens);
  const GroupClosure g = group_closure(gens, opt.budget);
  std::optional<Classification> c;
  if (!g.budget_hit) c = classify(g);
  o.report["group"] = group_json(g, c);
  o.report["eigratio"] = ratio_json(eigratio_check(cfg, opt.ratio_bound));
  bool violation = c && c->violation;
  if (c) {
    const bool agrees = c->abelian == ab.abelian;
    o.report["abelian_prediction_agrees"] = agrees;
    violation = violation || !agrees;
  }
  bool truncated = g.budget_hit;
  if (opt.orbits && !g.budget_hit) {
    OrbitRun run = run_orbit(cfg, g, opt);
    o.report["orbit"] = run.report;
    violation = violation || run.violation;
    truncated = truncated || run.truncated;
  }
  if (violation) o.exit_code = kExitInvariant;
  else if (truncated) o.exit_code = kExitBudget;
  return o;
}

namespace {

std::string rational_label(int num, int den) { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

Json search_row(const LineConfig& cfg, std::size_t budget) {
  Json row;
  const ValidationReport v = validate(cfg);
  row["skew"] = v.valid;
  if (!v.valid) return row;
  const RatioReport rr = eigratio_check(cfg);
  if (rr.proves_infinite) {
    row["status"] = "infinite";
    return row;
  }
  const GroupClosure g = group_closure(generator_set(cfg, GeneratorMode::AllTriples), budget);
  if (g.budget_hit) {
    row["status"] = "budget_hit";
    return row;
  }
  row["status"] = "finite";
  row["order"] = g.order();
  row["label"] = classify(g).name();
  return row;
}

}  // namespace

Outcome search_scaled(unsigned n, unsigned level, const std::vector<std::string>& ts, std::size_t budget) {
  if (n < 2) throw Error(ErrorCode::InvalidParameters, "n must be at least 2");
  if (level == 0) level = n;
  if (level % n != 0) throw Error(ErrorCode::InvalidParameters, "level must be a multiple of n");
  const Field f = Field::cyclotomic(level);
  const FieldElement eps = root_of_unity(f, level, n);
  std::vector<std::pair<std::string, FieldElement>> candidates;
  std::set<std::string> seen;
  auto add = [&](const std::string& label, const FieldElement& t) {
    if (t.is_zero() || !seen.insert(t.key()).second) return;
    candidates.emplace_back(label, t);
  };
  if (ts.empty()) {
    const FieldElement zeta = root_of_unity(f, level, level);
    const std::pair<int, int> scales[] = {{1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 2}};
    for (const auto& [num, den] : scales) {
      for (unsigned k = 0; k < level; ++k) {
        add(rational_label(num, den) + "*zeta^" + std::to_string(k), f.from_rational(Rational(num, den)) * zeta.pow(static_cast<long long>(k)));
      }
    }
  } else {
    for (const auto& t : ts) add(t, f.parse(t));
  }
  Outcome o;
  o.report = header("search");
  o.report["kind"] = "scaled";
  o.report["n"] = n;
  o.report["field"] = field_spec_to_json(f.spec());
  Json rows = Json::array();
  for (const auto& [label, t] : candidates) {
    std::vector<Mat2> ms;
    for (unsigned j = 0; j < n; ++j) ms.push_back(Mat2::diag(eps.pow(static_cast<long long>(j)), eps.pow(-static_cast<long long>(j))));
    for (unsigned j = 0; j < n; ++j) ms.push_back(Mat2::diag(t * eps.pow(static_cast<long long>(j)), t * eps.pow(-static_cast<long long>(j))));
    Json row = search_row(LineConfig(f, ms), budget);
    Json full;
    full["t"] = label;
    full["t_value"] = t.to_string();
    for (auto it = row.begin(); it != row.end(); ++it) full[it.key()] = it.value();
    rows.push_back(full);
  }
  o.report["rows"] = rows;
  return o;
}

Outcome search_diagonal(unsigned level, unsigned extra, std::size_t budget, std::size_t limit) {
  if (level < 3) throw Error(ErrorCode::InvalidParameters, "level must be at least 3");
  if (extra == 0) throw Error(ErrorCode::InvalidParameters, "at least one extra line");
  const Field f = Field::cyclotomic(level);
  const FieldElement zeta = root_of_unity(f, level, level);
  const FieldElement one = f.one();
  struct Cand {
    unsigned k1, k2;
    FieldElement a, d;
  };
  std::vector<Cand> cands;
  std::set<std::string> seen;
  for (unsigned k1 = 1; k1 < level; ++k1) {
    for (unsigned k2 = 1; k2 < level; ++k2) {
      if (k1 == k2) continue;
      const FieldElement u1 = zeta.pow(static_cast<long long>(k1));
      const FieldElement u2 = zeta.pow(static_cast<long long>(k2));
      const FieldElement a = u1 * (one - u2) / (u1 - u2);
      const FieldElement d = (one - u2) / (u1 - u2);
      if (seen.insert(a.key() + "|" + d.key()).second) cands.push_back({k1, k2, a, d});
    }
  }
  Outcome o;
  o.report = header("search");
  o.report["kind"] = "diagonal";
  o.report["field"] = field_spec_to_json(f.spec());
  Json rows = Json::array();
  std::size_t examined = 0;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (rows.size() >= limit) return;
    if (pick.size() == extra) {
      std::vector<Mat2> ms{Mat2::identity(f)};
      for (std::size_t i : pick) ms.push_back(Mat2::diag(cands[i].a, cands[i].d));
      const LineConfig cfg(f, ms);
      ++examined;
      if (!validate(cfg).valid || eigratio_check(cfg).proves_infinite) return;
      Json row;
      Json lines = Json::array();
      for (std::size_t i : pick) {
        lines.push_back({{"u1", "zeta^" + std::to_string(cands[i].k1)},
                         {"u2", "zeta^" + std::to_string(cands[i].k2)},
                         {"a", cands[i].a.to_string()},
                         {"d", cands[i].d.to_string()}});
      }
      row["lines"] = lines;
      Json r = search_row(cfg, budget);
      for (auto it = r.begin(); it != r.end(); ++it) row[it.key()] = it.value();
      rows.push_back(row);
      return;
    }
    for (std::size_t i = start; i < cands.size() && rows.size() < limit; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  o.report["examined"] = examined;
  o.report["rows"] = rows;
  return o;
}

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::IncompleteClosure ? kExitBudget : kExitInvalidInput;
}

namespace {

LineConfig load_config(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    try {
      return config_from_json(Json::parse(ss.str()));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("stdin: ") + e.what());
    }
  }
  return config_from_json(read_json_file(path));
}

// Human-readable rendering: top-level scalars plus nested group summary.
void print_summary(const Json& j, std::ostream& out, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    const std::string key = prefix + it.key();
    if (v.is_object()) {
      if (it.key() == "config" || it.key() == "points") continue;
      print_summary(v, out, key + ".");
    } else if (v.is_array()) {
      out << key << ": [" << v.size() << " entries]\n";
    } else if (v.is_string()) {
      out << key << ": " << v.get<std::string>() << "\n";
    } else {
      out << key << ": " << v.dump() << "\n";
    }
  }
}

std::vector<std::pair<std::string, std::string>> parse_params(const std::vector<std::string>& kv) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : kv) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::InvalidParameters, "parameter \"" + s + "\" is not key=value");
    out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Groups of skew line configurations in P^3"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Emit the JSON report instead of a summary");

  std::string config_path;
  AnalyzeOptions opt;
  std::string mode = "all_triples";
  std::string seed;
  std::size_t orbit_budget = 0;

  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", opt.budget, "Closure budget (elements)")->check(CLI::PositiveNumber);
    sub->add_option("--mode", mode, "Generator set: all_triples or differences")->check(CLI::IsMember({"all_triples", "differences"}));
  };

  auto* v = app.add_subcommand("validate", "Check pairwise skewness");
  v->add_option("config", config_path, "Configuration JSON file ('-' for stdin)")->required();
  auto* t = app.add_subcommand("transversals", "Common transversals through L0 and Linf");
  t->add_option("config", config_path, "Configuration JSON file")->required();
  auto* g = app.add_subcommand("group", "Closure and classification of G_L");
  g->add_option("config", config_path, "Configuration JSON file")->required();
  add_budget(g);
  auto* o = app.add_subcommand("orbit", "Orbit of a point of the configuration");
  o->add_option("config", config_path, "Configuration JSON file")->required();
  o->add_option("--seed-point", seed, "Seed \"[x:y:z:w]\"; generic point of Linf when omitted");
  o->add_flag("--oracle", opt.oracle, "Use the geometric construction");
  o->add_option("--orbit-budget", orbit_budget, "Orbit size budget")->check(CLI::PositiveNumber);
  add_budget(o);
  auto* a = app.add_subcommand("analyze", "Full analysis pipeline");
  a->add_option("config", config_path, "Configuration JSON file")->required();
  a->add_flag("--orbits", opt.orbits, "Include an orbit");
  a->add_option("--seed-point", seed, "Orbit seed \"[x:y:z:w]\"");
  a->add_flag("--oracle", opt.oracle, "Use the geometric orbit construction");
  add_budget(a);

  std::string family_name;
  std::vector<std::string> family_params;
  bool family_analyze = false;
  auto* fam = app.add_subcommand("family", "Build a configuration from a named family");
  fam->add_option("name", family_name,
                  "standard_construction, cyclic_4line, elementary_abelian, affine, c3_scaled, example_a5, example_s4, example_a4, prop_case2")
      ->required();
  fam->add_option("--param,-p", family_params, "Family parameter key=value");
  fam->add_flag("--analyze", family_analyze, "Analyze the built configuration");
  add_budget(fam);

  auto* search = app.add_subcommand("search", "Parameter sweeps");
  search->require_subcommand(1);
  search->fallthrough();
  unsigned n = 0, level = 0, extra = 2;
  std::size_t limit = 50;
  std::size_t search_budget = 500;
  std::vector<std::string> ts;
  auto* scaled = search->add_subcommand("scaled", "C_n u t C_n sweep over t");
  scaled->add_option("--n", n, "n")->required();
  scaled->add_option("--level", level, "Cyclotomic level (multiple of n)");
  scaled->add_option("--t", ts, "Candidate t as an expression in z");
  scaled->add_option("--budget", search_budget, "Closure budget per row");
  auto* diagonal = search->add_subcommand("diagonal", "Diagonal configurations with root-of-unity ratios");
  diagonal->add_option("--level", level, "Cyclotomic level")->required();
  diagonal->add_option("--extra", extra, "Number of diagonal lines besides I");
  diagonal->add_option("--limit", limit, "Maximum rows");
  diagonal->add_option("--budget", search_budget, "Closure budget per row");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  opt.mode = mode == "differences" ? GeneratorMode::Differences : GeneratorMode::AllTriples;
  if (!seed.empty()) opt.seed_point = seed;
  if (orbit_budget) opt.orbit_budget = orbit_budget;

  Outcome result;
  try {
    if (v->parsed()) result = validate_command(load_config(config_path));
    else if (t->parsed()) result = transversal_command(load_config(config_path));
    else if (g->parsed()) result = group_command(load_config(config_path), opt);
    else if (o->parsed()) result = orbit_command(load_config(config_path), opt);
    else if (a->parsed()) result = analyze(load_config(config_path), opt);
    else if (fam->parsed()) {
      const Family f = build_family(family_name, parse_params(family_params));
      if (family_analyze) {
        result = analyze(f.config, opt);
        result.report["family"] = family_to_json(f)["family"];
        const Json& grp = result.report["group"];
        const bool matches = !grp["budget_hit"].get<bool>() && grp["order"].get<std::uint64_t>() == f.expected_order &&
                             grp["label"] == f.expected_label;
        result.report["matches_expected"] = matches;
      } else {
        result.report = header("family");
        const Json fj = family_to_json(f);
        for (auto it = fj.begin(); it != fj.end(); ++it) result.report[it.key()] = it.value();
      }
    } else if (scaled->parsed()) {
      result = search_scaled(n, level, ts, search_budget);
    } else if (diagonal->parsed()) {
      result = search_diagonal(level, extra, search_budget, limit);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  if (json) out << result.report.dump(2) << "\n";
  else print_summary(result.report, out);
  return result.exit_code;
}

}  // namespace skewgroup
