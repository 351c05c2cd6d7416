#include "twotemp/closure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twotemp/avgtemp.hpp"

namespace twotemp {

void ClosureParams::validate() const {
  if (!(lambda >= 0.0)) throw std::invalid_argument("closure: lambda must be >= 0");
  if (!(M >= 0.0)) throw std::invalid_argument("closure: M must be >= 0");
  if (!(chi >= 0.0)) throw std::invalid_argument("closure: chi must be >= 0");
  if (!(epsilon_T > 0.0)) throw std::invalid_argument("closure: epsilon_T must be > 0");
}

double dynamical_pressure_from_state(const GasPairModel& model, double rho1, double rho2,
                                     double T1, double T2) {
  const AverageTempResult avg = average_temperature(model, rho1, rho2, T1, T2);
  return pressure_from_temperatures(model, rho1, rho2, T1, T2) -
         pressure_from_temperatures(model, rho1, rho2, avg.T, avg.T);
}

namespace {

// rho1 rho2 (k2 cv1 - k1 cv2) / (rho1 cv1 + rho2 cv2)
double pi_slope(const GasPairModel& model, double rho1, double rho2) {
  const GasParams& g1 = model.gas[0];
  const GasParams& g2 = model.gas[1];
  return rho1 * rho2 * (g2.k * g1.cv - g1.k * g2.cv) / (rho1 * g1.cv + rho2 * g2.cv);
}

}  // namespace

double dynamical_pressure_perfect_gas(const GasPairModel& model, double rho1, double rho2,
                                      double theta) {
  return pi_slope(model, rho1, rho2) * theta;
}

double thermal_relaxation_coefficient(const GasPairModel& model, double rho1, double rho2,
                                      double M) {
  const double c1 = rho1 * model.gas[0].cv;
  const double c2 = rho2 * model.gas[1].cv;
  return M * (c1 / c2) * (c1 + c2);
}

double lambda_coefficient(const GasPairModel& model, double rho1, double rho2, double M) {
  if (!(M >= 0.0)) throw std::invalid_argument("lambda_coefficient: M must be >= 0");
  const double dgamma = model.gas[0].gamma() - model.gas[1].gamma();
  // pi = A Theta = A L_T dgamma div v = -Lambda div v
  return -pi_slope(model, rho1, rho2) * thermal_relaxation_coefficient(model, rho1, rho2, M) *
         dgamma;
}

double theta_constitutive(const GasPairModel& model, double rho1, double rho2, double M,
                          double divv) {
  const double dgamma = model.gas[0].gamma() - model.gas[1].gamma();
  return thermal_relaxation_coefficient(model, rho1, rho2, M) * dgamma * divv;
}

double effective_lambda(const GasPairModel& model, const ClosureParams& closure, double rho1,
                        double rho2) {
  if (closure.mode == ClosureMode::fixed_lambda) return closure.lambda;
  return lambda_coefficient(model, rho1, rho2, closure.M);
}

EntropySources entropy_sources(double rho1, double rho2, double T1, double T2, double T,
                               double lambda, double divv, double epsilon_T) {
  if (!(T1 > 0.0) || !(T2 > 0.0) || !(T > 0.0)) {
    throw std::domain_error("entropy_sources: nonpositive temperature");
  }
  EntropySources out;
  double gap = T2 - T1;
  if (std::abs(gap) < epsilon_T) {
    gap = gap < 0.0 ? -epsilon_T : epsilon_T;
    out.regularized = true;
  }
  const double drive = lambda * divv * divv / T;
  out.sdot1 = drive * T2 / (rho1 * gap);
  out.sdot2 = -drive * T1 / (rho2 * gap);
  out.q1 = rho1 * T1 * out.sdot1;
  out.q2 = rho2 * T2 * out.sdot2;
  out.production = rho1 * out.sdot1 + rho2 * out.sdot2;
  return out;
}

double momentum_production(double chi, double u) {
  if (!(chi >= 0.0)) throw std::invalid_argument("momentum_production: chi must be >= 0");
  return -chi * u;
}

Field entropy_production_sigma(const DissipationFields& in) {
  const std::size_t n = in.p.size();
  for (FieldView f : {in.p0, in.divv, in.q, in.gradT, in.T, in.m, in.u, in.sigma_d1,
                      in.sigma_d2, in.D1, in.D2}) {
    if (f.size() != n) throw std::invalid_argument("entropy_production_sigma: misaligned fields");
  }
  Field sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    sigma[i] = (in.p[i] - in.p0[i]) * in.divv[i] + in.q[i] / in.T[i] * in.gradT[i] +
               in.m[i] * in.u[i] - in.sigma_d1[i] * in.D1[i] - in.sigma_d2[i] * in.D2[i];
  }
  return sigma;
}

double fick_residual(FieldView mu, FieldView u, FieldView rho1, FieldView rho2, double chi,
                     const Grid1D& grid) {
  const Field dmu = grad(mu, grid);
  if (u.size() != mu.size() || rho1.size() != mu.size() || rho2.size() != mu.size()) {
    throw std::invalid_argument("fick_residual: misaligned fields");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double kappa = (rho1[i] + rho2[i]) * chi / (rho1[i] * rho2[i]);
    worst = std::max(worst, std::abs(dmu[i] + kappa * u[i]));
  }
  return worst;
}

}  // namespace twotemp
