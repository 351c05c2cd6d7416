#include "app.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "config.hpp"
#include "twotemp/avgtemp.hpp"
#include "twotemp/closure.hpp"
#include "twotemp/identity.hpp"
#include "twotemp/potential.hpp"

namespace twotemp::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Raised inside a subcommand to leave with an error line and exit code.
struct Failure {
  ExitCode code;
  std::string kind;
  std::string message;
  std::vector<std::string> details;
};

void report(std::ostream& err, const Failure& f) {
  json j;
  j["error"]["kind"] = f.kind;
  j["error"]["message"] = f.message;
  if (!f.details.empty()) j["error"]["details"] = f.details;
  err << j.dump() << '\n';
}

void append_row(fmt::memory_buffer& buf, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) buf.push_back(',');
    fmt::format_to(std::back_inserter(buf), "{:.17g}", v);
    first = false;
  }
  buf.push_back('\n');
}

void flush(std::ostream& os, const fmt::memory_buffer& buf) {
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Failure{exit_runtime, "io", "cannot write '" + path.string() + "'", {}};
  return os;
}

void close_output(std::ofstream& os, const fs::path& path) {
  os.close();
  if (!os) throw Failure{exit_runtime, "io", "failed writing '" + path.string() + "'", {}};
}

Config load(const std::string& path) {
  try {
    return load_config(path);
  } catch (const ConfigError& e) {
    throw Failure{exit_usage, "config", "invalid config '" + path + "'", e.problems()};
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

json gas_json(const GasPairModel& m) {
  json j;
  j["gas1"] = {{"k", m.gas[0].k}, {"cv", m.gas[0].cv}};
  j["gas2"] = {{"k", m.gas[1].k}, {"cv", m.gas[1].cv}};
  j["reference"] = {{"T_ref", m.T_ref}, {"rho_ref", m.rho_ref}, {"s_ref", m.s_ref}};
  return j;
}

json field_json(const FieldInit& f) {
  json modes = json::array();
  for (const FourierMode& m : f.modes) {
    modes.push_back({{"k", m.wavenumber}, {"amplitude", m.amplitude}, {"phase", m.phase}});
  }
  return {{"background", f.background}, {"modes", modes}};
}

json scenario_json(const Scenario& sc) {
  json j = gas_json(sc.model);
  j["grid"] = {{"n", sc.grid.size()}, {"length", sc.grid.length()}};
  j["closure"] = {
      {"mode", sc.closure.mode == ClosureMode::fixed_lambda ? "fixed_lambda" : "relaxation_m"},
      {"lambda", sc.closure.lambda},
      {"M", sc.closure.M},
      {"chi", sc.closure.chi},
      {"epsilon_T", sc.closure.epsilon_T}};
  j["time"] = {{"dt", sc.dt}, {"t_end", sc.t_end}, {"cfl", sc.cfl}};
  j["init"] = {{"rho1", field_json(sc.initial.rho1)}, {"rho2", field_json(sc.initial.rho2)},
               {"v1", field_json(sc.initial.v1)},     {"v2", field_json(sc.initial.v2)},
               {"T1", field_json(sc.initial.T1)},     {"T2", field_json(sc.initial.T2)}};
  j["scheme"] = {
      {"reconstruction",
       sc.scheme.reconstruction == Reconstruction::muscl ? "muscl" : "first_order"},
      {"slaving", sc.scheme.slaving}};
  j["output"] = {{"stride", sc.stride}, {"format", "csv"}};
  return j;
}

// simulate

struct SimulateArgs {
  std::string config;
  std::string out;
};

int simulate(const SimulateArgs& a, const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  const Config cfg = load(a.config);
  if (!cfg.scenario) {
    throw Failure{exit_usage, "config", "config '" + a.config + "' describes no simulation", {}};
  }
  const std::string dir = !a.out.empty() ? a.out : cfg.output.path;
  if (dir.empty()) {
    throw Failure{exit_usage, "usage", "no output directory: pass --out or set [output] path", {}};
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{exit_runtime, "io", "cannot create '" + dir + "': " + ec.message(), {}};

  const Scenario& sc = *cfg.scenario;
  const Trajectory traj = integrate(sc);

  const auto write = [&](const std::string& name, auto&& writer) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream os = open_output(path);
    writer(os);
    close_output(os, path);
  };
  write("snapshots.csv", [&](std::ostream& os) { write_snapshots(os, traj, sc.grid); });
  write("diagnostics.csv", [&](std::ostream& os) { write_diagnostics(os, traj); });
  write("regularization.csv", [&](std::ostream& os) { write_regularization_log(os, traj); });

  json meta;
  meta["command"] = args;
  meta["config_path"] = a.config;
  meta["config_text"] = read_text(a.config);
  meta["parameters"] = scenario_json(sc);
  meta["status"] = traj.completed ? "completed" : "failed";
  if (!traj.completed) meta["error"] = traj.error;
  meta["steps_taken"] = traj.steps_taken;
  meta["t_last"] = traj.t_last;
  meta["frames"] = traj.frames.size();
  meta["regularized_total"] = traj.regularized_total;
  meta["regularized_logged"] = traj.regularized.size();
  write("run.json", [&](std::ostream& os) { os << meta.dump(2) << '\n'; });

  if (!traj.completed) {
    throw Failure{exit_runtime,
                  "solver",
                  traj.error,
                  {fmt::format("stopped after {} steps at t = {:.17g}; output holds the last valid "
                               "state",
                               traj.steps_taken, traj.t_last)}};
  }
  out << fmt::format("simulate: {} steps to t = {:.17g}, {} frames, {} regularized cells -> {}\n",
                     traj.steps_taken, traj.t_last, traj.frames.size(), traj.regularized_total,
                     dir);
  (void)err;
  return exit_ok;
}

// sweep

struct SweepArgs {
  std::string config;
  std::string out;
};

int sweep(const SweepArgs& a, const std::vector<std::string>& args, std::ostream& out,
          std::ostream& err) {
  const Config cfg = load(a.config);
  if (!cfg.sweep) {
    throw Failure{exit_usage, "config", "config '" + a.config + "' has no [sweep] section", {}};
  }
  const std::string path = !a.out.empty() ? a.out : cfg.output.path;
  if (path.empty()) {
    throw Failure{exit_usage, "usage", "no output file: pass --out or set [output] path", {}};
  }
  const SweepResult result = run_sweep(*cfg.sweep);

  std::ofstream os = open_output(path);
  write_sweep(os, result);
  close_output(os, path);

  json skipped = json::array();
  for (const SkippedPoint& s : result.skipped) {
    json j = {{"pair", s.pair}, {"theta", s.theta}, {"rho1", s.rho1},
              {"rho2", s.rho2}, {"reason", s.reason}};
    json line;
    line["warning"] = j;
    err << line.dump() << '\n';
    skipped.push_back(j);
  }
  json meta;
  meta["command"] = args;
  meta["config_path"] = a.config;
  meta["config_text"] = read_text(a.config);
  meta["rows"] = result.rows.size();
  meta["skipped"] = skipped;
  const fs::path meta_path = path + ".json";
  std::ofstream ms = open_output(meta_path);
  ms << meta.dump(2) << '\n';
  close_output(ms, meta_path);

  out << fmt::format("sweep: {} rows, {} skipped -> {}\n", result.rows.size(),
                     result.skipped.size(), path);
  return exit_ok;
}

// verify-identity

struct IdentityArgs {
  std::string suite = "sinusoidal";
  std::string mode = "analytic";
  std::string potential = "quadratic";
  std::size_t refine = 2;
  double h = 0.02;
  double b = 1.0;
  double coupling = 0.4;
  std::size_t nt = SampleWindow{}.nt;
  std::size_t nx = SampleWindow{}.nx;
  std::string out;
};

ExtendedPotential make_potential(const IdentityArgs& a) {
  GasPairModel gas;
  gas.gas = {GasParams{1.0, 1.5}, GasParams{0.5, 2.5}};
  if (a.potential == "perfect-gas") return perfect_gas_potential(gas, a.b);
  if (a.potential == "coupled") return coupled_potential(gas, a.coupling, a.b);
  return quadratic_potential(QuadraticEnergy{}, a.b);
}

ManufacturedFields make_suite(const IdentityArgs& a) {
  if (a.suite == "constant") return constant_suite();
  if (a.suite == "sinusoidal-no-forces") return sinusoidal_suite_without_forces();
  return sinusoidal_suite();
}

int verify_identity(const IdentityArgs& a, std::ostream& out) {
  const ManufacturedFields fields = make_suite(a);
  const ExtendedPotential potential = make_potential(a);
  SampleWindow window;
  window.nt = a.nt;
  window.nx = a.nx;

  const bool analytic = a.mode == "analytic";
  const std::size_t levels = analytic ? 1 : a.refine + 1;
  std::vector<IdentityReport> reports;
  std::vector<double> hs;
  for (std::size_t k = 0; k < levels; ++k) {
    const double h = a.h / std::pow(2.0, static_cast<double>(k));
    const IdentityMode mode =
        analytic ? IdentityMode::analytic() : IdentityMode::finite_difference(h, h);
    try {
      reports.push_back(gibbs_residual(fields, potential, window, mode));
    } catch (const std::domain_error& e) {
      throw Failure{exit_runtime, "identity", e.what(), {}};
    }
    hs.push_back(analytic ? 0.0 : h);
  }

  out << "suite = " << fields.name << '\n';
  out << "potential = " << potential.name() << '\n';
  out << "mode = " << a.mode << '\n';
  out << "points = " << reports.front().points << '\n';
  bool pass = true;
  if (analytic) {
    const IdentityReport& r = reports.front();
    const double bound = 1e-10 * r.term_magnitude;
    pass = r.residual_max <= bound;
    out << "term_magnitude = " << format_number(r.term_magnitude) << '\n';
    out << "residual_max = " << format_number(r.residual_max) << '\n';
    out << "residual_l2 = " << format_number(r.residual_l2) << '\n';
    out << "bound = " << format_number(bound) << '\n';
    out << "flipped_sign_residual_max = " << format_number(r.flipped_sign_residual_max) << '\n';
    for (std::size_t i = 0; i < r.term_residual.size(); ++i) {
      out << "term_" << static_cast<char>('a' + i) << "_residual = "
          << format_number(r.term_residual[i]) << '\n';
    }
    out << "decomposition_gap = " << format_number(r.decomposition_gap) << '\n';
  } else {
    std::vector<double> norms;
    for (std::size_t k = 0; k < reports.size(); ++k) {
      norms.push_back(reports[k].residual_max);
      out << "level " << k << ": h = " << format_number(hs[k])
          << ", residual_max = " << format_number(reports[k].residual_max)
          << ", residual_l2 = " << format_number(reports[k].residual_l2) << '\n';
    }
    if (norms.size() >= 2) {
      const std::optional<double> order = convergence_order(norms);
      if (order) {
        out << "order = " << format_number(*order) << '\n';
        pass = std::abs(*order - 2.0) <= 0.2;
      } else {
        out << "order = undefined (zero residual)\n";
      }
    }
  }
  out << "status = " << (pass ? "pass" : "fail") << '\n';

  if (!a.out.empty()) {
    std::ofstream os = open_output(a.out);
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "level,h,points,residual_max,residual_l2,term_magnitude\n");
    for (std::size_t k = 0; k < reports.size(); ++k) {
      append_row(buf, {static_cast<double>(k), hs[k], static_cast<double>(reports[k].points),
                       reports[k].residual_max, reports[k].residual_l2, reports[k].term_magnitude});
    }
    flush(os, buf);
    close_output(os, a.out);
  }
  if (!pass) {
    throw Failure{exit_runtime, "identity", "energy identity check failed for " + fields.name, {}};
  }
  return exit_ok;
}

// thermo-eval

struct ThermoArgs {
  double k1 = 0, cv1 = 0, k2 = 0, cv2 = 0;
  double T_ref = 1.0, rho_ref = 1.0, s_ref = 0.0;
  double rho1 = 0, rho2 = 0;
  std::optional<double> T1, T2, s1, s2;
  bool as_json = false;
};

int thermo_eval_cmd(const ThermoArgs& a, std::ostream& out) {
  GasPairModel m;
  m.gas = {GasParams{a.k1, a.cv1}, GasParams{a.k2, a.cv2}};
  m.T_ref = a.T_ref;
  m.rho_ref = a.rho_ref;
  m.s_ref = a.s_ref;
  const bool by_T = a.T1 && a.T2, by_s = a.s1 && a.s2;
  if (by_T == by_s || (a.T1.has_value() != a.T2.has_value()) ||
      (a.s1.has_value() != a.s2.has_value())) {
    throw Failure{exit_usage, "usage", "give either --T1 and --T2 or --s1 and --s2", {}};
  }
  try {
    m.validate();
    const double s1 = by_s ? *a.s1 : entropy_from_temperature(m, Component::first, a.rho1, *a.T1);
    const double s2 = by_s ? *a.s2 : entropy_from_temperature(m, Component::second, a.rho2, *a.T2);
    const ThermoPoint tp = thermo_eval(m, a.rho1, a.rho2, s1, s2);
    const AverageTempResult avg = average_temperature(m, a.rho1, a.rho2, tp.T1, tp.T2);
    const double p0 = pressure_from_temperatures(m, a.rho1, a.rho2, avg.T, avg.T);

    json j;
    j["rho1"] = a.rho1;
    j["rho2"] = a.rho2;
    j["s1"] = s1;
    j["s2"] = s2;
    j["T1"] = tp.T1;
    j["T2"] = tp.T2;
    j["p"] = tp.p;
    j["p_partial1"] = tp.p_partial1;
    j["p_partial2"] = tp.p_partial2;
    j["p_stress1"] = tp.p_stress1;
    j["p_stress2"] = tp.p_stress2;
    j["h1"] = tp.h1;
    j["h2"] = tp.h2;
    j["mu1"] = tp.mu1;
    j["mu2"] = tp.mu2;
    j["e"] = tp.e;
    j["T_avg"] = avg.T;
    j["theta1"] = avg.theta1;
    j["theta2"] = avg.theta2;
    j["cv1_mix"] = avg.cv1_mix;
    j["cv2_mix"] = avg.cv2_mix;
    j["beta"] = beta_split(m, a.rho1, a.rho2);
    j["p0"] = p0;
    j["pi"] = tp.p - p0;
    if (a.as_json) {
      out << j.dump() << '\n';
    } else {
      for (const auto& [key, value] : j.items()) {
        out << key << " = " << format_number(value.get<double>()) << '\n';
      }
    }
  } catch (const std::invalid_argument& e) {
    throw Failure{exit_usage, "input", e.what(), {}};
  } catch (const std::domain_error& e) {
    throw Failure{exit_usage, "input", e.what(), {}};
  }
  return exit_ok;
}

}  // namespace

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

void write_snapshots(std::ostream& os, const Trajectory& traj, const Grid1D& grid) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf),
                 "t,x,rho1,rho2,v1,v2,s1,s2,T1,T2,Tavg,p,p0,pi,divv\n");
  for (const Frame& f : traj.frames) {
    const MixtureState& s = f.state;
    const Diagnostics& d = f.diag;
    for (std::size_t i = 0; i < s.size(); ++i) {
      append_row(buf, {f.t, grid.x(i), s.rho1[i], s.rho2[i], s.v1[i], s.v2[i], s.s1[i], s.s2[i],
                       d.T1[i], d.T2[i], d.Tavg[i], d.p[i], d.p0[i], d.pi[i], d.divv[i]});
    }
  }
  flush(os, buf);
}

void write_diagnostics(std::ostream& os, const Trajectory& traj) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "t,mass1,mass2,momentum,energy,entropy,min_Tgap\n");
  for (const Frame& f : traj.frames) {
    const Diagnostics& d = f.diag;
    append_row(buf, {f.t, d.mass1, d.mass2, d.momentum, d.energy, d.entropy,
                     d.min_temperature_gap});
  }
  flush(os, buf);
}

void write_regularization_log(std::ostream& os, const Trajectory& traj) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "step,t,cell\n");
  for (const RegularizationEvent& e : traj.regularized) {
    fmt::format_to(std::back_inserter(buf), "{},{:.17g},{}\n", e.step, e.t, e.cell);
  }
  flush(os, buf);
}

void write_sweep(std::ostream& os, const SweepResult& result) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf),
                 "pair,theta,rho1,rho2,T1,T2,T_avg,beta,pi_state,pi_formula,lambda_M1,"
                 "theta_constitutive\n");
  for (const SweepRow& r : result.rows) {
    fmt::format_to(std::back_inserter(buf), "{},", r.pair);
    append_row(buf, {r.theta, r.rho1, r.rho2, r.T1, r.T2, r.T_avg, r.beta, r.pi_state,
                     r.pi_formula, r.lambda_M1, r.theta_constitutive});
  }
  flush(os, buf);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-temperature binary mixture toolkit", "twotemp"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Integrate a scenario and write CSV output");
  sim_cmd->add_option("--config", sim.config, "Scenario config file")->required()
      ->check(CLI::ExistingFile);
  sim_cmd->add_option("--out", sim.out, "Output directory (default: [output] path)");

  SweepArgs sw;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Tabulate pressure and closure coefficients");
  sweep_cmd->add_option("--config", sw.config, "Sweep config file")->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sw.out, "Output CSV file (default: [output] path)");

  IdentityArgs id;
  CLI::App* id_cmd =
      app.add_subcommand("verify-identity", "Check the energy identity on manufactured fields");
  id_cmd->add_option("--suite", id.suite, "Field suite")
      ->check(CLI::IsMember({"constant", "sinusoidal", "sinusoidal-no-forces"}))
      ->capture_default_str();
  id_cmd->add_option("--mode", id.mode, "Derivative evaluation")
      ->check(CLI::IsMember({"analytic", "fd"}))
      ->capture_default_str();
  id_cmd->add_option("--potential", id.potential, "Energy potential")
      ->check(CLI::IsMember({"quadratic", "perfect-gas", "coupled"}))
      ->capture_default_str();
  id_cmd->add_option("--refine", id.refine, "Number of step halvings in fd mode")
      ->check(CLI::Range(0, 12))
      ->capture_default_str();
  id_cmd->add_option("--step", id.h, "Initial fd step h")->check(CLI::PositiveNumber)
      ->capture_default_str();
  id_cmd->add_option("--b", id.b, "Constant extra variable b")->capture_default_str();
  id_cmd->add_option("--coupling", id.coupling, "Cross coupling of the coupled potential")
      ->capture_default_str();
  id_cmd->add_option("--nt", id.nt, "Sample times")->check(CLI::Range(1, 100000))
      ->capture_default_str();
  id_cmd->add_option("--nx", id.nx, "Sample positions")->check(CLI::Range(1, 100000))
      ->capture_default_str();
  id_cmd->add_option("--out", id.out, "Optional CSV report");

  ThermoArgs th;
  CLI::App* th_cmd = app.add_subcommand("thermo-eval", "Evaluate the closed thermodynamics");
  th_cmd->add_option("--k1", th.k1, "Gas constant of component 1")->required();
  th_cmd->add_option("--cv1", th.cv1, "Heat capacity of component 1")->required();
  th_cmd->add_option("--k2", th.k2, "Gas constant of component 2")->required();
  th_cmd->add_option("--cv2", th.cv2, "Heat capacity of component 2")->required();
  th_cmd->add_option("--T-ref", th.T_ref, "Reference temperature")->capture_default_str();
  th_cmd->add_option("--rho-ref", th.rho_ref, "Reference density")->capture_default_str();
  th_cmd->add_option("--s-ref", th.s_ref, "Reference entropy")->capture_default_str();
  th_cmd->add_option("--rho1", th.rho1, "Density of component 1")->required();
  th_cmd->add_option("--rho2", th.rho2, "Density of component 2")->required();
  th_cmd->add_option("--T1", th.T1, "Temperature of component 1");
  th_cmd->add_option("--T2", th.T2, "Temperature of component 2");
  th_cmd->add_option("--s1", th.s1, "Specific entropy of component 1");
  th_cmd->add_option("--s2", th.s2, "Specific entropy of component 2");
  th_cmd->add_flag("--json", th.as_json, "Print one JSON object");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    report(err, {exit_usage, "usage", e.what(), {}});
    return exit_usage;
  }

  try {
    if (sim_cmd->parsed()) return simulate(sim, args, out, err);
    if (sweep_cmd->parsed()) return sweep(sw, args, out, err);
    if (id_cmd->parsed()) return verify_identity(id, out);
    return thermo_eval_cmd(th, out);
  } catch (const Failure& f) {
    report(err, f);
    return f.code;
  } catch (const std::invalid_argument& e) {
    report(err, {exit_usage, "input", e.what(), {}});
    return exit_usage;
  } catch (const std::exception& e) {
    report(err, {exit_runtime, "runtime", e.what(), {}});
    return exit_runtime;
  }
}

}  // namespace twotemp::cli
