#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qha/scenarios.hpp"

namespace qha {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + fmt(v[i]);
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

class Parser {
 public:
  Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ConfigError(source_ + ":" + std::to_string(line) + ": " + msg);
  }

  double to_double(const Entry& e, const std::string& key) const {
    double v = 0.0;
    const char* b = e.value.data();
    const char* end = b + e.value.size();
    auto [ptr, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || ptr != end) fail(e.line, key + " must be a number, got '" + e.value + "'");
    return v;
  }

  long long to_int(const Entry& e, const std::string& key) const {
    long long v = 0;
    const char* b = e.value.data();
    const char* end = b + e.value.size();
    auto [ptr, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || ptr != end) fail(e.line, key + " must be an integer, got '" + e.value + "'");
    return v;
  }

  std::uint64_t to_u64(const Entry& e, const std::string& key) const {
    std::uint64_t v = 0;
    const char* b = e.value.data();
    const char* end = b + e.value.size();
    auto [ptr, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || ptr != end) fail(e.line, key + " must be a non-negative integer, got '" + e.value + "'");
    return v;
  }

  std::vector<double> to_list(const Entry& e, const std::string& key) const {
    std::vector<double> out;
    std::istringstream is(e.value);
    std::string tok;
    while (is >> tok) out.push_back(to_double({tok, e.line}, key));
    if (out.empty()) fail(e.line, key + " needs at least one value");
    return out;
  }

  bool to_bool(const Entry& e, const std::string& key) const {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    fail(e.line, key + " must be true or false");
  }

 private:
  std::string source_;
};

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"", {"id", "seed", "exponents", "trials"}},
      {"group", {"name", "cells", "level"}},
      {"haar", {"normalization"}},
      {"algebra", {"kind", "measure", "validate"}},
      {"action", {"kind", "rep", "subgroup", "inner", "n", "m"}},
      {"tolerances", {"rel", "abs", "quadrature"}},
      {"expect", {"duflo"}},
  };
  return s;
}

}  // namespace

std::string to_string(const ExpectedDuflo& e) {
  switch (e.kind) {
    case ExpectKind::none: return "none";
    case ExpectKind::scalar: return "scalar " + fmt(e.value);
    case ExpectKind::inverse_scalar: return "inverse-scalar " + fmt(e.value);
    case ExpectKind::inverse_frequency: return "inverse-frequency";
  }
  return "none";
}

ExpectedDuflo parse_expected(const std::string& s) {
  std::istringstream is(s);
  std::string kind;
  is >> kind;
  ExpectedDuflo e;
  if (kind == "none" || kind.empty()) return e;
  if (kind == "inverse-frequency") {
    e.kind = ExpectKind::inverse_frequency;
  } else if (kind == "scalar" || kind == "inverse-scalar") {
    e.kind = kind == "scalar" ? ExpectKind::scalar : ExpectKind::inverse_scalar;
    std::string v;
    if (!(is >> v)) throw ConfigError("expected Duflo descriptor '" + s + "' needs a value");
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
    if (ec != std::errc() || ptr != v.data() + v.size() || !(d > 0.0))
      throw ConfigError("expected Duflo value must be a positive number, got '" + v + "'");
    e.value = d;
  } else {
    throw ConfigError("unknown Duflo descriptor '" + s + "'; valid: none, scalar <v>, inverse-scalar <v>, inverse-frequency");
  }
  std::string extra;
  if (is >> extra) throw ConfigError("trailing text in Duflo descriptor '" + s + "'");
  return e;
}

ScenarioSpec parse_scenario(const std::string& text, const std::string& source) {
  Parser p(source);
  std::map<std::string, std::map<std::string, Entry>> data;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') p.fail(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!schema().count(section) || section.empty()) p.fail(line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) p.fail(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const auto& allowed = schema().at(section);
    if (!allowed.count(key)) {
      std::string valid;
      for (const auto& k : allowed) valid += " " + k;
      p.fail(line, "unknown key '" + key + "'" + (section.empty() ? "" : " in [" + section + "]") + "; valid:" + valid);
    }
    if (data[section].count(key)) p.fail(line, "duplicate key '" + key + "'");
    data[section][key] = {value, line};
  }

  ScenarioSpec s;
  auto get = [&](const std::string& sec, const std::string& key) -> const Entry* {
    auto it = data.find(sec);
    if (it == data.end()) return nullptr;
    auto jt = it->second.find(key);
    return jt == it->second.end() ? nullptr : &jt->second;
  };
  auto req = [&](const std::string& sec, const std::string& key) -> const Entry& {
    const Entry* e = get(sec, key);
    if (!e) p.fail(line, "missing required key '" + key + "'" + (sec.empty() ? "" : " in [" + sec + "]"));
    return *e;
  };

  s.id = req("", "id").value;
  if (const Entry* e = get("", "seed")) s.seed = p.to_u64(*e, "seed");
  if (const Entry* e = get("", "exponents")) s.exponents = p.to_list(*e, "exponents");
  if (const Entry* e = get("", "trials")) s.trials = static_cast<int>(p.to_int(*e, "trials"));

  const Entry& gname = req("group", "name");
  s.group = gname.value;
  if (s.group != "affine") {
    try {
      (void)parse_group(s.group);
    } catch (const ConfigError& err) {
      p.fail(gname.line, std::string(err.what()) + " affine");
    }
  }
  if (const Entry* e = get("group", "cells")) s.cells = static_cast<int>(p.to_int(*e, "cells"));
  if (const Entry* e = get("group", "level")) s.level = static_cast<int>(p.to_int(*e, "level"));

  if (const Entry* e = get("haar", "normalization")) {
    try {
      s.haar = parse_haar(e->value);
    } catch (const ConfigError& err) {
      p.fail(e->line, err.what());
    }
  } else if (s.group == "affine") {
    s.haar = HaarNormalization::quadrature;
  }

  if (const Entry* e = get("algebra", "kind")) s.algebra = e->value;
  if (const Entry* e = get("algebra", "measure")) s.measure = p.to_list(*e, "measure");
  if (const Entry* e = get("algebra", "validate")) s.validate_measure = p.to_bool(*e, "validate");

  s.action = req("action", "kind").value;
  if (const Entry* e = get("action", "rep")) s.rep = e->value;
  if (const Entry* e = get("action", "subgroup")) s.subgroup = e->value;
  if (const Entry* e = get("action", "inner")) s.inner = e->value;
  if (const Entry* e = get("action", "n")) s.n = static_cast<int>(p.to_int(*e, "n"));
  if (const Entry* e = get("action", "m")) s.m = static_cast<int>(p.to_int(*e, "m"));

  if (const Entry* e = get("tolerances", "rel")) s.tol.rel = p.to_double(*e, "rel");
  if (const Entry* e = get("tolerances", "abs")) s.tol.abs = p.to_double(*e, "abs");
  if (const Entry* e = get("tolerances", "quadrature")) s.quadrature = p.to_double(*e, "quadrature");
  if (!(s.tol.rel > 0.0) || !(s.tol.abs > 0.0) || !(s.quadrature > 0.0)) p.fail(line, "tolerances must be positive");

  if (const Entry* e = get("expect", "duflo")) {
    try {
      s.expect = parse_expected(e->value);
    } catch (const ConfigError& err) {
      p.fail(e->line, err.what());
    }
  }
  return s;
}

std::string format_scenario(const ScenarioSpec& s) {
  std::ostringstream os;
  os << "id = " << s.id << "\n"
     << "seed = " << s.seed << "\n"
     << "exponents = " << fmt_list(s.exponents) << "\n"
     << "trials = " << s.trials << "\n\n"
     << "[group]\nname = " << s.group << "\ncells = " << s.cells << "\nlevel = " << s.level << "\n\n"
     << "[haar]\nnormalization = " << to_string(s.haar) << "\n\n"
     << "[algebra]\nkind = " << s.algebra << "\n";
  if (s.measure) os << "measure = " << fmt_list(*s.measure) << "\n";
  os << "validate = " << (s.validate_measure ? "true" : "false") << "\n\n"
     << "[action]\nkind = " << s.action << "\n";
  if (!s.rep.empty()) os << "rep = " << s.rep << "\n";
  if (!s.subgroup.empty()) os << "subgroup = " << s.subgroup << "\n";
  if (!s.inner.empty()) os << "inner = " << s.inner << "\n";
  os << "n = " << s.n << "\nm = " << s.m << "\n\n"
     << "[tolerances]\nrel = " << fmt(s.tol.rel) << "\nabs = " << fmt(s.tol.abs) << "\nquadrature = " << fmt(s.quadrature)
     << "\n\n"
     << "[expect]\nduflo = " << to_string(s.expect) << "\n";
  return os.str();
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

void save_scenario(const ScenarioSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write scenario file '" + path.string() + "'");
  out << format_scenario(spec);
}

}  // namespace qha
