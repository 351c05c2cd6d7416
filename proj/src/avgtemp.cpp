#include "twotemp/avgtemp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "twotemp/roots.hpp"

namespace twotemp {

double average_temperature_tolerance(const GasPairModel& model, double rho1, double rho2,
                                     double T1, double T2) {
  return 1e-12 * (rho1 * model.gas[0].cv + rho2 * model.gas[1].cv) * std::max(T1, T2);
}

AverageTempResult average_temperature(const GasPairModel& model, double rho1, double rho2,
                                      double T1, double T2) {
  if (!(rho1 > 0.0) || !(rho2 > 0.0) || !(T1 > 0.0) || !(T2 > 0.0)) {
    throw std::domain_error("average_temperature: inputs must be positive");
  }
  const double rho = rho1 + rho2;
  AverageTempResult r;
  if (T1 == T2) {
    r.T = T1;
  } else {
    const double target = volume_energy_from_temperatures(model, rho1, rho2, T1, T2);
    const double heat_capacity = rho1 * model.gas[0].cv + rho2 * model.gas[1].cv;
    auto fdf = [&](double T) {
      return std::pair{volume_energy_from_temperatures(model, rho1, rho2, T, T) - target,
                       heat_capacity};
    };
    const RootResult root =
        safeguarded_newton(fdf, std::min(T1, T2), std::max(T1, T2),
                           average_temperature_tolerance(model, rho1, rho2, T1, T2));
    r.T = root.x;
    r.iterations = root.iterations;
    r.residual = root.residual;
  }
  r.theta1 = T1 - r.T;
  r.theta2 = T2 - r.T;
  r.cv1_mix = rho1 * model.gas[0].cv / rho;
  r.cv2_mix = rho2 * model.gas[1].cv / rho;
  return r;
}

double linearized_constraint_residual(const GasPairModel& model, double rho1, double rho2,
                                      const AverageTempResult& result) {
  return rho1 * model.gas[0].cv * result.theta1 + rho2 * model.gas[1].cv * result.theta2;
}

double beta_split(const GasPairModel& model, double rho1, double rho2) {
  const double c1 = rho1 * model.gas[0].cv;
  const double c2 = rho2 * model.gas[1].cv;
  return -c2 / (c1 + c2);
}

}  // namespace twotemp
