#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace twotemp::cli {

namespace pt = boost::property_tree;

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::size_t> to_size(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

// One section of the file with typed accessors that record problems instead
// of throwing, so a single pass reports everything.
class Section {
 public:
  Section(std::string name, const pt::ptree* tree, std::vector<std::string>& problems)
      : name_(std::move(name)), tree_(tree), problems_(problems) {}

  bool present() const { return tree_ != nullptr; }
  bool has(const std::string& key) const { return tree_ && tree_->find(key) != tree_->not_found(); }

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    if (!has(key)) return std::nullopt;
    std::string_view value = tree_->find(key)->second.data();
    for (std::size_t i = 1; i < value.size(); ++i) {
      if ((value[i] == ';' || value[i] == '#') && std::isspace(static_cast<unsigned char>(value[i - 1]))) {
        value = value.substr(0, i);
        break;
      }
    }
    return std::string(trim(value));
  }

  std::optional<double> number(const std::string& key) {
    const auto raw = text(key);
    if (!raw) return std::nullopt;
    const auto v = to_double(*raw);
    if (!v) problem(key, "expected a number, got '" + *raw + "'");
    return v;
  }

  double required_number(const std::string& key) {
    if (!has(key)) {
      if (present()) problem(key, "is required");
      text(key);
      return 0.0;
    }
    return number(key).value_or(0.0);
  }

  std::optional<std::size_t> count(const std::string& key) {
    const auto raw = text(key);
    if (!raw) return std::nullopt;
    const auto v = to_size(*raw);
    if (!v) problem(key, "expected a nonnegative integer, got '" + *raw + "'");
    return v;
  }

  // One problem per key; missing keys are reported by required_number.
  void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok && has(key) && !reported_.count(key)) problem(key, what);
  }

  void problem(const std::string& key, const std::string& what) {
    reported_.insert(key);
    problems_.push_back("[" + name_ + "] " + key + " " + what);
  }

  void reject_unknown_keys() {
    if (!tree_) return;
    for (const auto& [key, child] : *tree_) {
      if (!used_.count(key)) problems_.push_back("[" + name_ + "] unknown key '" + key + "'");
    }
  }

 private:
  std::string name_;
  const pt::ptree* tree_;
  std::vector<std::string>& problems_;
  std::set<std::string> used_;
  std::set<std::string> reported_;
};

GasParams read_gas(Section& s, const std::string& k_key, const std::string& cv_key) {
  GasParams g;
  g.k = s.required_number(k_key);
  g.cv = s.required_number(cv_key);
  s.require(g.k > 0.0, k_key, "must be > 0");
  s.require(g.cv > 0.0, cv_key, "must be > 0");
  return g;
}

Range read_range(Section& s, const std::string& key, Range fallback) {
  const auto raw = s.text(key);
  if (!raw) return fallback;
  const auto parts = split(*raw, ':');
  if (parts.size() == 1) {
    if (const auto v = to_double(parts[0])) return {*v, *v, 1};
  } else if (parts.size() == 3) {
    const auto lo = to_double(parts[0]), hi = to_double(parts[1]);
    const auto n = to_size(parts[2]);
    if (lo && hi && n) return {*lo, *hi, *n};
  }
  s.problem(key, "expected 'value' or 'min:max:count', got '" + *raw + "'");
  return fallback;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid config: " + join(problems)), problems_(std::move(problems)) {}

std::vector<FourierMode> parse_modes(std::string_view text) {
  std::vector<FourierMode> modes;
  if (trim(text).empty()) return modes;
  for (std::string_view item : split(text, ',')) {
    const auto parts = split(item, ':');
    const auto k = parts.size() == 3 ? to_size(parts[0]) : std::nullopt;
    const auto amp = parts.size() == 3 ? to_double(parts[1]) : std::nullopt;
    const auto phase = parts.size() == 3 ? to_double(parts[2]) : std::nullopt;
    if (!k || !amp || !phase || *k == 0) {
      throw std::invalid_argument("mode '" + std::string(item) +
                                  "' is not 'k:amplitude:phase' with integer k >= 1");
    }
    modes.push_back({static_cast<double>(*k), *amp, *phase});
  }
  return modes;
}

Config parse_config(std::string_view text) {
  pt::ptree root;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({"line " + std::to_string(e.line()) + ": " + e.message()});
  }

  // The ini reader drops sections without keys; restore them so that an empty
  // [sweep] still selects a sweep and an empty unknown section is still reported.
  {
    std::istringstream lines{std::string(text)};
    std::string line;
    while (std::getline(lines, line)) {
      const std::string_view t = trim(line);
      if (t.size() < 2 || t.front() != '[' || t.back() != ']') continue;
      const std::string name(trim(t.substr(1, t.size() - 2)));
      if (root.find(name) == root.not_found()) root.push_back({name, pt::ptree{}});
    }
  }

  std::vector<std::string> problems;
  const std::set<std::string> known = {"grid",   "gas1",   "gas2",   "reference", "closure",
                                       "time",   "init",   "output", "scheme",    "sweep"};
  std::map<std::string, const pt::ptree*> sections;
  std::vector<std::pair<std::string, const pt::ptree*>> pair_sections;
  for (const auto& [name, child] : root) {
    if (child.empty() && !child.data().empty()) {
      problems.push_back("key '" + name + "' is outside any section");
    } else if (name.rfind("pair:", 0) == 0 && name.size() > 5) {
      pair_sections.emplace_back(name.substr(5), &child);
    } else if (known.count(name)) {
      sections[name] = &child;
    } else {
      problems.push_back("unknown section [" + name + "]");
    }
  }
  auto section = [&](const std::string& name) {
    const auto it = sections.find(name);
    return Section(name, it == sections.end() ? nullptr : it->second, problems);
  };

  Config cfg;

  Section reference = section("reference");
  GasPairModel base;
  base.T_ref = reference.number("T_ref").value_or(1.0);
  base.rho_ref = reference.number("rho_ref").value_or(1.0);
  base.s_ref = reference.number("s_ref").value_or(0.0);
  reference.require(base.T_ref > 0.0, "T_ref", "must be > 0");
  reference.require(base.rho_ref > 0.0, "rho_ref", "must be > 0");
  reference.reject_unknown_keys();

  Section gas1 = section("gas1");
  Section gas2 = section("gas2");
  const bool have_gases = gas1.present() || gas2.present();

  Section output = section("output");
  cfg.output.path = output.text("path").value_or("");
  cfg.output.stride = output.count("stride").value_or(10);
  cfg.output.format = output.text("format").value_or("csv");
  output.require(cfg.output.stride >= 1, "stride", "must be >= 1");
  output.require(cfg.output.format == "csv", "format", "must be 'csv'");
  output.reject_unknown_keys();

  const bool wants_run = sections.count("grid") || sections.count("time") ||
                         sections.count("init") || !sections.count("sweep");
  if (wants_run) {
    Scenario sc;
    sc.model = base;
    sc.model.gas = {read_gas(gas1, "k", "cv"), read_gas(gas2, "k", "cv")};
    if (!gas1.present()) problems.emplace_back("[gas1] section is required");
    if (!gas2.present()) problems.emplace_back("[gas2] section is required");

    Section grid = section("grid");
    if (!grid.present()) problems.emplace_back("[grid] section is required");
    const auto n = grid.count("n");
    const double length = grid.required_number("length");
    if (grid.present() && !grid.has("n")) grid.problem("n", "is required");
    grid.require(!n || *n >= 4, "n", "must be >= 4");
    grid.require(length > 0.0, "length", "must be > 0");
    if (n && *n >= 4 && length > 0.0) sc.grid = Grid1D(*n, length);
    grid.reject_unknown_keys();

    Section closure = section("closure");
    sc.closure = ClosureParams::with_defaults(sc.model);
    const std::string mode = closure.text("mode").value_or("fixed_lambda");
    const bool has_lambda = closure.has("lambda"), has_M = closure.has("M");
    sc.closure.lambda = closure.number("lambda").value_or(0.0);
    sc.closure.M = closure.number("M").value_or(0.0);
    if (has_lambda && has_M) {
      closure.problem("lambda", "and M are mutually exclusive; give exactly one");
    }
    if (mode == "fixed_lambda") {
      sc.closure.mode = ClosureMode::fixed_lambda;
      if (!has_lambda) closure.problem("lambda", "is required in fixed_lambda mode");
      if (has_M && !has_lambda) closure.problem("M", "is only valid in relaxation_m mode");
    } else if (mode == "relaxation_m") {
      sc.closure.mode = ClosureMode::relaxation_m;
      if (!has_M) closure.problem("M", "is required in relaxation_m mode");
      if (has_lambda && !has_M) closure.problem("lambda", "is only valid in fixed_lambda mode");
    } else {
      closure.problem("mode", "must be 'fixed_lambda' or 'relaxation_m', got '" + mode + "'");
    }
    sc.closure.chi = closure.number("chi").value_or(0.0);
    sc.closure.epsilon_T =
        closure.number("epsilon_T").value_or(ClosureParams::default_epsilon_factor * base.T_ref);
    closure.require(sc.closure.lambda >= 0.0, "lambda", "must be >= 0 (nonnegativity)");
    closure.require(sc.closure.M >= 0.0, "M", "must be >= 0 (nonnegativity)");
    closure.require(sc.closure.chi >= 0.0, "chi", "must be >= 0 (nonnegativity)");
    closure.require(sc.closure.epsilon_T > 0.0, "epsilon_T", "must be > 0");
    closure.reject_unknown_keys();

    Section time = section("time");
    if (!time.present()) problems.emplace_back("[time] section is required");
    sc.dt = time.required_number("dt");
    sc.t_end = time.required_number("t_end");
    sc.cfl = time.number("cfl").value_or(0.4);
    time.require(sc.dt > 0.0, "dt", "must be > 0");
    time.require(sc.t_end > 0.0, "t_end", "must be > 0");
    time.require(sc.cfl > 0.0, "cfl", "must be > 0");
    time.reject_unknown_keys();

    Section init = section("init");
    if (!init.present()) problems.emplace_back("[init] section is required");
    auto field = [&](const std::string& key, bool required, double fallback, bool positive) {
      FieldInit f;
      f.background = required ? init.required_number(key) : init.number(key).value_or(fallback);
      if (positive) init.require(f.background > 0.0, key, "must be > 0");
      if (const auto modes = init.text(key + ".modes")) {
        try {
          f.modes = parse_modes(*modes);
        } catch (const std::invalid_argument& e) {
          init.problem(key + ".modes", e.what());
        }
      }
      return f;
    };
    sc.initial.rho1 = field("rho1", true, 0.0, true);
    sc.initial.rho2 = field("rho2", true, 0.0, true);
    sc.initial.v1 = field("v1", false, 0.0, false);
    sc.initial.v2 = field("v2", false, 0.0, false);
    sc.initial.T1 = field("T1", true, 0.0, true);
    sc.initial.T2 = field("T2", true, 0.0, true);
    init.reject_unknown_keys();

    Section scheme = section("scheme");
    const std::string recon = scheme.text("reconstruction").value_or("muscl");
    if (recon == "muscl") {
      sc.scheme.reconstruction = Reconstruction::muscl;
    } else if (recon == "first_order") {
      sc.scheme.reconstruction = Reconstruction::first_order;
    } else {
      scheme.problem("reconstruction", "must be 'muscl' or 'first_order', got '" + recon + "'");
    }
    const std::string slaving = scheme.text("slaving").value_or("false");
    if (slaving == "true" || slaving == "false") {
      sc.scheme.slaving = slaving == "true";
    } else {
      scheme.problem("slaving", "must be 'true' or 'false', got '" + slaving + "'");
    }
    scheme.reject_unknown_keys();

    sc.stride = cfg.output.stride;
    if (problems.empty()) {
      try {
        sc.validate();
      } catch (const std::invalid_argument& e) {
        std::istringstream lines(e.what());
        std::string line;
        std::getline(lines, line);  // header
        while (std::getline(lines, line)) problems.emplace_back(std::string(trim(line)));
      }
    }
    cfg.scenario = sc;
  } else {
    gas1.text("k");
    gas1.text("cv");
    gas2.text("k");
    gas2.text("cv");
  }

  if (sections.count("sweep")) {
    Section sw = section("sweep");
    SweepSpec spec;
    spec.theta = read_range(sw, "theta", spec.theta);
    spec.rho1 = read_range(sw, "rho1", spec.rho1);
    spec.rho2 = read_range(sw, "rho2", spec.rho2);
    spec.T_background = sw.number("T_background").value_or(spec.T_background);
    sw.require(spec.T_background > 0.0, "T_background", "must be > 0");

    std::map<std::string, GasPairModel> named;
    std::vector<std::string> order;
    for (const auto& [name, tree] : pair_sections) {
      Section ps("pair:" + name, tree, problems);
      GasPairModel m = base;
      m.gas = {read_gas(ps, "k1", "cv1"), read_gas(ps, "k2", "cv2")};
      ps.reject_unknown_keys();
      named[name] = m;
      order.push_back(name);
    }
    if (const auto list = sw.text("pairs")) {
      for (std::string_view name : split(*list, ',')) {
        const auto it = named.find(std::string(name));
        if (it == named.end()) {
          sw.problem("pairs", "names an undefined pair '" + std::string(name) + "'");
        } else {
          spec.pairs.push_back({it->first, it->second});
        }
      }
    } else if (!order.empty()) {
      for (const std::string& name : order) spec.pairs.push_back({name, named[name]});
    } else if (have_gases) {
      GasPairModel m = base;
      Section g1 = section("gas1"), g2 = section("gas2");
      m.gas = {read_gas(g1, "k", "cv"), read_gas(g2, "k", "cv")};
      spec.pairs.push_back({"gas1-gas2", m});
    } else {
      sw.problem("pairs", "has no gas pair: add [pair:NAME] sections or [gas1]/[gas2]");
    }
    sw.reject_unknown_keys();
    if (problems.empty()) {
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        std::istringstream lines(e.what());
        std::string line;
        std::getline(lines, line);
        while (std::getline(lines, line)) problems.push_back("[sweep] " + std::string(trim(line)));
      }
    }
    cfg.sweep = spec;
  } else if (!pair_sections.empty()) {
    problems.emplace_back("[pair:*] sections are only used with a [sweep] section");
  }

  gas1.reject_unknown_keys();
  gas2.reject_unknown_keys();

  if (!problems.empty()) throw ConfigError(problems);
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot read config file '" + path.string() + "'"});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace twotemp::cli
