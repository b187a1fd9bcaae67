#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "qha/suite.hpp"

namespace qha::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string scenario;
  bool all = false;
  std::string format = "text";
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_rel;
  std::optional<double> tol_abs;
  std::string grids = "1,2,4";
};

bool looks_like_path(const std::string& s) {
  return s.find('/') != std::string::npos || std::filesystem::path(s).extension() == ".ini";
}

ScenarioSpec resolve(const std::string& source) {
  if (std::filesystem::exists(source) || looks_like_path(source)) return load_scenario(source);
  return builtin(source);
}

std::vector<ScenarioSpec> scenarios_of(const RunConfig& cfg) {
  if (cfg.all == !cfg.scenario.empty()) throw ConfigError("give exactly one of --scenario or --all");
  std::vector<ScenarioSpec> out;
  if (cfg.all) {
    for (const auto& id : builtin_ids()) out.push_back(builtin(id));
  } else {
    out.push_back(resolve(cfg.scenario));
  }
  return out;
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("QHA_SEED");
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long s = std::stoull(v, &used);
    if (used == std::string(v).size()) return s;
  } catch (const std::exception&) {
  }
  throw ConfigError(std::string("QHA_SEED must be a non-negative integer, got '") + v + "'");
}

SuiteOptions suite_options(const RunConfig& cfg) {
  SuiteOptions o;
  o.seed = cfg.seed ? cfg.seed : env_seed();
  o.tol_rel = cfg.tol_rel;
  o.tol_abs = cfg.tol_abs;
  return o;
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << std::scientific << v;
  return os.str();
}

std::string num(cplx z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const CheckReport& r) {
  return json{{"name", r.name},
              {"anchor", r.anchor},
              {"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"abs_err", r.abs_err},
              {"rel_err", r.rel_err},
              {"tol", {{"rel", r.tol.rel}, {"abs", r.tol.abs}}},
              {"status", to_string(r.status)},
              {"pass", r.passed()},
              {"notes", r.notes}};
}

void write_text(std::ostream& os, const ScenarioSpec& spec, const std::vector<CheckReport>& reports) {
  os << "scenario " << spec.id << "\n";
  for (const auto& r : reports) {
    os << "  " << std::left << std::setw(8) << to_string(r.status) << std::setw(34) << r.name;
    if (r.status != CheckStatus::skipped)
      os << " lhs=" << num(r.lhs) << " rhs=" << num(r.rhs) << " rel=" << num(r.rel_err) << " tol=" << num(r.tol.rel);
    if (!r.notes.empty()) os << "  [" << r.notes << "]";
    os << "\n";
  }
  os << "  => " << (all_passed(reports) ? "PASS" : "FAIL") << "\n";
}

// Writes to --out when given, else to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
  f << text;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto specs = scenarios_of(cfg);
  std::vector<BuiltScenario> built;
  for (const auto& s : specs) built.push_back(build_scenario(s));
  const SuiteOptions opts = suite_options(cfg);

  bool ok = true;
  std::ostringstream text;
  json doc;
  doc["command"] = "verify";
  doc["scenarios"] = json::array();
  for (const auto& b : built) {
    const auto reports = run_suite(b, opts);
    const bool pass = all_passed(reports);
    ok = ok && pass;
    if (cfg.format == "json") {
      json s{{"id", b.spec.id},
             {"seed", opts.seed.value_or(b.spec.seed)},
             {"spec", format_scenario(b.spec)},
             {"pass", pass},
             {"checks", json::array()}};
      for (const auto& r : reports) s["checks"].push_back(to_json(r));
      doc["scenarios"].push_back(std::move(s));
    } else {
      write_text(text, b.spec, reports);
    }
  }
  doc["pass"] = ok;
  emit(cfg, out, cfg.format == "json" ? doc.dump(2) + "\n" : text.str() + (ok ? "ALL PASS\n" : "FAILURES\n"));
  return ok ? 0 : 1;
}

int cmd_duflo(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto specs = scenarios_of(cfg);
  std::vector<BuiltScenario> built;
  for (const auto& s : specs) built.push_back(build_scenario(s));
  const SuiteOptions opts = suite_options(cfg);

  std::ostringstream text;
  json doc;
  doc["command"] = "duflo";
  doc["scenarios"] = json::array();
  bool ok = true;
  for (const auto& b : built) {
    DufloEstimate est;
    try {
      est = suite_duflo(b, opts);
    } catch (const NumericalError& e) {
      err << b.spec.id << ": estimator failed: " << e.what() << "\n";
      ok = false;
      continue;
    }
    const Tolerance tol = b.spec.is_quadrature() ? Tolerance{b.spec.quadrature, b.spec.tol.abs} : b.spec.tol;
    const CheckReport semi = suite_semi_invariance(b, est, tol);
    const CheckReport expected = check_expected_duflo(b, est, tol);
    const auto spec = spectrum(est.d);
    if (cfg.format == "json") {
      json blocks = json::array();
      for (const auto& v : spec.values) blocks.push_back(std::vector<double>(v.data(), v.data() + v.size()));
      doc["scenarios"].push_back(json{{"id", b.spec.id},
                                      {"spectrum", blocks},
                                      {"scalar", est.scalar},
                                      {"scalar_value", est.scalar_value},
                                      {"scalar_residual", est.scalar_residual},
                                      {"cross_check_residual", est.cross_check_residual},
                                      {"semi_invariance_defect", semi.rel_err},
                                      {"expected", to_json(expected)}});
    } else {
      text << "scenario " << b.spec.id << "\n";
      for (std::size_t k = 0; k < spec.values.size(); ++k) {
        text << "  block " << k << " spectrum:";
        for (int i = 0; i < spec.values[k].size(); ++i) text << " " << num(spec.values[k][i]);
        text << "\n";
      }
      text << "  scalar: " << (est.scalar ? "yes" : "no") << "  value " << std::setprecision(12)
           << est.scalar_value << "  residual " << num(est.scalar_residual) << "\n"
           << "  cross-check residual: " << num(est.cross_check_residual) << "\n"
           << "  semi-invariance defect: " << num(semi.rel_err) << "\n"
           << "  expected " << to_string(b.spec.expect) << ": " << to_string(expected.status) << "\n";
    }
  }
  emit(cfg, out, cfg.format == "json" ? doc.dump(2) + "\n" : text.str());
  return ok ? 0 : 1;
}

int cmd_list(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    json doc{{"builtins", builtin_ids()}, {"forms", builtin_forms()}};
    emit(cfg, out, doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (const auto& id : builtin_ids()) os << id << "\n";
    emit(cfg, out, os.str());
  }
  return 0;
}

std::vector<int> parse_levels(const std::string& s) {
  std::vector<int> levels;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
      levels.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("--grids takes comma-separated positive levels, got '" + s + "'");
    }
  }
  if (levels.size() < 2) throw ConfigError("refinement needs at least two grids");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1]) throw ConfigError("--grids levels must be strictly increasing");
  return levels;
}

struct RefineRow {
  int level = 0;
  std::size_t nodes = 0;
  double orthogonality = 0.0;
  double semi_invariance = 0.0;
  double cross_check = 0.0;
  double expected = 0.0;
};

RefineRow refine_row(ScenarioSpec spec, int level, const SuiteOptions& opts) {
  spec.level = level;
  const BuiltScenario b = build_scenario(spec);
  const DufloEstimate est = suite_duflo(b, opts);
  const Tolerance tol{spec.quadrature, spec.tol.abs};
  RefineRow row;
  row.level = level;
  row.nodes = b.action->group().size();
  row.cross_check = est.cross_check_residual;
  row.semi_invariance = suite_semi_invariance(b, est, tol).rel_err;
  row.expected = check_expected_duflo(b, est, tol).rel_err;
  // same seeded pairs at every level
  std::mt19937_64 rng(opts.seed.value_or(spec.seed) + 2);
  for (int t = 0; t < spec.trials; ++t) {
    const AlgebraElement x = random_positive(b.action->shape(), rng);
    const AlgebraElement y = random_positive(b.action->shape(), rng);
    row.orthogonality = std::max(row.orthogonality, check_orthogonality(*b.action, est, x, y, tol).rel_err);
  }
  return row;
}

int cmd_refine(const RunConfig& cfg, std::ostream& out) {
  const auto specs = scenarios_of(cfg);
  const std::vector<int> levels = parse_levels(cfg.grids);
  for (const auto& s : specs)
    if (!s.is_quadrature()) throw ConfigError("scenario '" + s.id + "' is finite; refinement needs a quadrature scenario");
  const SuiteOptions opts = suite_options(cfg);

  bool ok = true;
  std::ostringstream text;
  json doc;
  doc["command"] = "refine";
  doc["scenarios"] = json::array();
  for (const auto& spec : specs) {
    std::vector<RefineRow> rows;
    for (int level : levels) rows.push_back(refine_row(spec, level, opts));
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
      monotone = monotone && rows[i].orthogonality < rows[i - 1].orthogonality &&
                 rows[i].semi_invariance < rows[i - 1].semi_invariance;
    const double tol = cfg.tol_rel.value_or(spec.quadrature);
    const bool within = rows.front().orthogonality <= tol && rows.front().semi_invariance <= tol;
    ok = ok && monotone && within;
    if (cfg.format == "json") {
      json s{{"id", spec.id}, {"tolerance", tol}, {"rows", json::array()}};
      for (const auto& r : rows)
        s["rows"].push_back(json{{"level", r.level},
                                 {"nodes", r.nodes},
                                 {"orthogonality", r.orthogonality},
                                 {"semi_invariance", r.semi_invariance},
                                 {"cross_check", r.cross_check},
                                 {"expected", r.expected}});
      s["monotone"] = monotone;
      s["within_tolerance"] = within;
      doc["scenarios"].push_back(std::move(s));
    } else {
      text << "scenario " << spec.id << "  (tolerance " << num(tol) << ")\n"
           << "  level     nodes  orthogonality  semi-invariance  cross-check  expected-D\n";
      for (const auto& r : rows)
        text << "  " << std::setw(5) << r.level << std::setw(10) << r.nodes << "  " << std::setw(13)
             << num(r.orthogonality) << "  " << std::setw(15) << num(r.semi_invariance) << "  " << std::setw(11)
             << num(r.cross_check) << "  " << num(r.expected) << "\n";
      text << "  strictly decreasing: " << (monotone ? "yes" : "no") << "  coarsest within tolerance: "
           << (within ? "yes" : "no") << "\n";
    }
  }
  doc["pass"] = ok;
  emit(cfg, out, cfg.format == "json" ? doc.dump(2) + "\n" : text.str());
  return ok ? 0 : 1;
}

void add_common(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--scenario", cfg.scenario, "builtin id or scenario file");
  sub.add_flag("--all", cfg.all, "every builtin scenario");
  sub.add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sub.add_option("--out", cfg.out, "write the report here instead of stdout");
  sub.add_option("--seed", cfg.seed, "seed override (falls back to QHA_SEED)");
  sub.add_option("--tol-rel", cfg.tol_rel, "relative tolerance override")->check(CLI::PositiveNumber);
  sub.add_option("--tol-abs", cfg.tol_abs, "absolute tolerance override")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Duflo operator and harmonic analysis checks for finite-dimensional actions", "qha"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* verify = app.add_subcommand("verify", "run the check suite");
  auto* duflo = app.add_subcommand("duflo", "estimate the Duflo operator");
  auto* list = app.add_subcommand("list", "list builtin scenarios");
  auto* refine = app.add_subcommand("refine", "grid-refinement table for quadrature scenarios");
  add_common(*verify, cfg);
  add_common(*duflo, cfg);
  add_common(*refine, cfg);
  refine->add_option("--grids", cfg.grids, "comma-separated refinement levels");
  list->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  list->add_option("--out", cfg.out, "write the list here instead of stdout");

  std::vector<std::string> argv_store{"qha"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (duflo->parsed()) return cmd_duflo(cfg, out, err);
    if (list->parsed()) return cmd_list(cfg, out);
    return cmd_refine(cfg, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    // a scenario that cannot be built is a configuration problem
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qha::cli
