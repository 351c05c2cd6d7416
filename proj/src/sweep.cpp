#include "twotemp/sweep.hpp"

#include <cmath>
#include <stdexcept>

#include "twotemp/avgtemp.hpp"
#include "twotemp/closure.hpp"

namespace twotemp {

std::vector<double> Range::values() const {
  if (count == 0) throw std::invalid_argument("range: count must be >= 1");
  if (count == 1) return {min};
  std::vector<double> out(count);
  const double step = (max - min) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) out[k] = min + step * static_cast<double>(k);
  out.back() = max;
  return out;
}

void SweepSpec::validate() const {
  std::vector<std::string> problems;
  auto check_range = [&](const Range& r, const char* name, bool positive) {
    if (r.count == 0) problems.push_back(std::string(name) + ": count must be >= 1");
    if (!std::isfinite(r.min) || !std::isfinite(r.max)) {
      problems.push_back(std::string(name) + ": bounds must be finite");
    } else if (r.max < r.min) {
      problems.push_back(std::string(name) + ": max must be >= min");
    } else if (positive && !(r.min > 0.0)) {
      problems.push_back(std::string(name) + ": values must be > 0");
    }
  };
  check_range(theta, "theta", false);
  check_range(rho1, "rho1", true);
  check_range(rho2, "rho2", true);
  if (!(T_background > 0.0)) problems.emplace_back("T_background must be > 0");
  if (pairs.empty()) problems.emplace_back("at least one gas pair is required");
  for (const NamedGasPair& p : pairs) {
    try {
      p.model.validate();
    } catch (const std::exception& e) {
      problems.push_back("pair " + p.name + ": " + e.what());
    }
  }
  if (!problems.empty()) {
    std::string all = "invalid sweep:";
    for (const std::string& p : problems) all += "\n  " + p;
    throw std::invalid_argument(all);
  }
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult out;
  const double T = spec.T_background;
  for (const NamedGasPair& pair : spec.pairs) {
    const GasPairModel& m = pair.model;
    for (double r1 : spec.rho1.values()) {
      for (double r2 : spec.rho2.values()) {
        for (double theta : spec.theta.values()) {
          const double beta = beta_split(m, r1, r2);
          const double T1 = T + beta * theta;
          const double T2 = T + (1.0 + beta) * theta;
          if (!(T1 > 0.0) || !(T2 > 0.0)) {
            out.skipped.push_back({pair.name, theta, r1, r2, "component temperature is nonpositive"});
            continue;
          }
          SweepRow row;
          row.pair = pair.name;
          row.theta = theta;
          row.rho1 = r1;
          row.rho2 = r2;
          row.T1 = T1;
          row.T2 = T2;
          row.beta = beta;
          try {
            row.T_avg = average_temperature(m, r1, r2, T1, T2).T;
            row.pi_state = dynamical_pressure_from_state(m, r1, r2, T1, T2);
          } catch (const std::exception& e) {
            out.skipped.push_back({pair.name, theta, r1, r2, e.what()});
            continue;
          }
          row.pi_formula = dynamical_pressure_perfect_gas(m, r1, r2, T2 - T1);
          row.lambda_M1 = lambda_coefficient(m, r1, r2, 1.0);
          row.theta_constitutive = theta_constitutive(m, r1, r2, 1.0, 1.0);
          out.rows.push_back(row);
        }
      }
    }
  }
  return out;
}

}  // namespace twotemp
