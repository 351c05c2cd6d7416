#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "twotemp/thermo.hpp"

namespace twotemp {

/// count evenly spaced values from min to max; count = 1 gives {min}.
struct Range {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;

  std::vector<double> values() const;
};

struct NamedGasPair {
  std::string name;
  GasPairModel model;
};

/// Each point splits Theta = T2 - T1 around T_background with the beta split,
/// so T_background is the average temperature of every row.
struct SweepSpec {
  Range theta{20.0, 20.0, 1};
  Range rho1{1.0, 1.0, 1};
  Range rho2{2.0, 2.0, 1};
  std::vector<NamedGasPair> pairs;
  double T_background = 300.0;

  /// Throws std::invalid_argument naming every violated constraint.
  void validate() const;
};

struct SweepRow {
  std::string pair;
  double theta = 0, rho1 = 0, rho2 = 0;
  double T1 = 0, T2 = 0;
  double T_avg = 0;
  double beta = 0;
  double pi_state = 0;            // p(T1, T2) - p(T, T)
  double pi_formula = 0;          // closed perfect-gas form
  double lambda_M1 = 0;           // Lambda at M = 1
  double theta_constitutive = 0;  // at M = 1, div v = 1
};

struct SkippedPoint {
  std::string pair;
  double theta = 0, rho1 = 0, rho2 = 0;
  std::string reason;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SkippedPoint> skipped;
};

/// Rows ordered by pair, then rho1, rho2 and theta, each in input order.
SweepResult run_sweep(const SweepSpec& spec);

}  // namespace twotemp
