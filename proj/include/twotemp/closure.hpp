#pragma once

#include "twotemp/fields.hpp"
#include "twotemp/thermo.hpp"

namespace twotemp {

enum class ClosureMode { fixed_lambda, relaxation_m };

/// Parameters of the nonequilibrium closure pi = -Lambda div v.
struct ClosureParams {
  ClosureMode mode = ClosureMode::fixed_lambda;
  double lambda = 0.0;     // Pa s, fixed_lambda mode
  double M = 0.0;          // relaxation coefficient, relaxation_m mode
  double chi = 0.0;        // kg/(m^3 s), interphase friction
  double epsilon_T = 0.0;  // K, temperature-gap regularization

  static constexpr double default_epsilon_factor = 1e-8;

  static ClosureParams with_defaults(const GasPairModel& model) {
    ClosureParams p;
    p.epsilon_T = default_epsilon_factor * model.T_ref;
    return p;
  }

  /// Throws std::invalid_argument on a negative coefficient or epsilon_T <= 0.
  void validate() const;
};

/// pi = p(T1, T2) - p(T, T) with T the average temperature.
double dynamical_pressure_from_state(const GasPairModel& model, double rho1, double rho2,
                                     double T1, double T2);

/// Perfect-gas closed form
///   pi = rho1 rho2 (k2 cv1 - k1 cv2) Theta / (rho1 cv1 + rho2 cv2),  Theta = T2 - T1.
double dynamical_pressure_perfect_gas(const GasPairModel& model, double rho1, double rho2,
                                      double theta);

/// L_T = M (rho1 cv1 / (rho2 cv2)) (rho1 cv1 + rho2 cv2).
double thermal_relaxation_coefficient(const GasPairModel& model, double rho1, double rho2,
                                      double M);

/// Lambda implied by Theta = L_T (gamma1 - gamma2) div v; nonnegative for M >= 0.
double lambda_coefficient(const GasPairModel& model, double rho1, double rho2, double M);

/// Theta = L_T (gamma1 - gamma2) div v.
double theta_constitutive(const GasPairModel& model, double rho1, double rho2, double M,
                          double divv);

/// Lambda in effect for a cell: the given value in fixed_lambda mode, the
/// perfect-gas value in relaxation_m mode.
double effective_lambda(const GasPairModel& model, const ClosureParams& closure, double rho1,
                        double rho2);

struct EntropySources {
  double sdot1 = 0.0, sdot2 = 0.0;  // d_a s_a / dt
  double q1 = 0.0, q2 = 0.0;        // rho_a T_a d_a s_a / dt, W/m^3
  double production = 0.0;          // rho1 sdot1 + rho2 sdot2
  bool regularized = false;         // |T2 - T1| < epsilon_T
};

/// Solves
///   rho1 T1 sdot1 + rho2 T2 sdot2 = 0
///   rho1 sdot1 + rho2 sdot2       = (Lambda / T) divv^2
/// The (T2 - T1) denominator is replaced by sign(T2 - T1) epsilon_T when the gap
/// is below epsilon_T, with sign(0) = +1.
EntropySources entropy_sources(double rho1, double rho2, double T1, double T2, double T,
                               double lambda, double divv, double epsilon_T);

/// m = -chi u, applied +m to component 1 and -m to component 2.
double momentum_production(double chi, double u);

/// Pointwise inputs of the dissipative entropy production. The viscous stresses
/// and the heat flux are supplied fields; they are never evolved.
struct DissipationFields {
  FieldView p, p0, divv;
  FieldView q, gradT, T;
  FieldView m, u;
  FieldView sigma_d1, sigma_d2;
  FieldView D1, D2;
};

/// Sigma = (p - p0) div v + (q / T) grad T + m u - sum_a sigma_a D_a, which is
/// nonpositive for admissible constitutive laws. With m = -chi u the friction
/// term is -chi u^2.
Field entropy_production_sigma(const DissipationFields& in);

/// max_i |grad(mu)_i + kappa_i u_i| with kappa = rho chi / (rho1 rho2) and
/// mu = mu1 - mu2.
double fick_residual(FieldView mu, FieldView u, FieldView rho1, FieldView rho2, double chi,
                     const Grid1D& grid);

}  // namespace twotemp
