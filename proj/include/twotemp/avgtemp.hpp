#pragma once

#include "twotemp/thermo.hpp"

namespace twotemp {

/// Local-equilibrium temperature T of a two-temperature state: the common
/// temperature at which the mixture holds the same internal energy at the same
/// densities.
struct AverageTempResult {
  double T = 0.0;
  double theta1 = 0.0;  // T1 - T
  double theta2 = 0.0;  // T2 - T
  // Heat capacities of the specific mixture energy, d(e/rho)/dT_a = rho_a cv_a / rho.
  double cv1_mix = 0.0;
  double cv2_mix = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |e(T,T) - e(T1,T2)|, J/m^3
};

/// Solves rho1 cv1 T + rho2 cv2 T = e(T1, T2) by safeguarded Newton on
/// [min(T1,T2), max(T1,T2)]. Throws std::domain_error on nonpositive input and
/// RootNotConverged after 100 iterations.
AverageTempResult average_temperature(const GasPairModel& model, double rho1, double rho2,
                                      double T1, double T2);

/// Energy-scale tolerance used by average_temperature.
double average_temperature_tolerance(const GasPairModel& model, double rho1, double rho2,
                                     double T1, double T2);

/// rho1 cv1 theta1 + rho2 cv2 theta2; zero up to round-off for constant cv.
double linearized_constraint_residual(const GasPairModel& model, double rho1, double rho2,
                                      const AverageTempResult& result);

/// beta with T1 = T + beta Theta, T2 = T + (1 + beta) Theta, Theta = T2 - T1:
/// beta = -rho2 cv2 / (rho1 cv1 + rho2 cv2).
double beta_split(const GasPairModel& model, double rho1, double rho2);

}  // namespace twotemp
