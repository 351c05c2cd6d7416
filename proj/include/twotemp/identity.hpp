#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "twotemp/jet.hpp"
#include "twotemp/potential.hpp"

namespace twotemp {

/// A smooth space-time field f(t, x) returning its value with analytic
/// first derivatives. Finite-difference mode reads only the value.
using SpaceTimeField = std::function<Jet(double t, double x)>;

/// Closed-form fields for every symbol entering the energy identity.
/// Index 0 is component 1, index 1 is component 2.
struct ManufacturedFields {
  std::string name;
  std::array<SpaceTimeField, 2> rho, v, s, omega;
};

/// f(t, x) = mean + sum_j amp_j sin(2 pi kx_j x - omega_j t + phase_j)
struct Harmonic {
  double amplitude = 0.0;
  double wavenumber = 1.0;  // cycles per unit length
  double frequency = 0.0;   // rad per unit time
  double phase = 0.0;
};
SpaceTimeField harmonic_field(double mean, std::vector<Harmonic> modes);

/// All fields constant in space and time, no external potential.
ManufacturedFields constant_suite();
/// Distinct harmonics per field; densities stay within [1.4, 2.6].
ManufacturedFields sinusoidal_suite();
/// Same as sinusoidal_suite with omega_1 = omega_2 = 0.
ManufacturedFields sinusoidal_suite_without_forces();

/// Values of the fields at one point.
struct LocalValues {
  double rho1 = 1.0, rho2 = 1.0;
  double s1 = 0.0, s2 = 0.0;
  double v1 = 0.0, v2 = 0.0;
  double omega1 = 0.0, omega2 = 0.0;
};

/// R_a = v_a^2/2 - d eta/d rho_a - Omega_a
/// k_a = v_a - ((-1)^a / rho_a) d eta/du
/// rho_a T_a = d eta/d s_a
/// i = -d eta/du,  f = eta - (d eta/du) u
struct LagrangianQuantities {
  double R1 = 0, R2 = 0;
  double k1 = 0, k2 = 0;
  double T1 = 0, T2 = 0;
  double i = 0;
  double f = 0;
  double eta = 0;
};

LagrangianQuantities lagrangian_quantities(const ExtendedPotential& potential,
                                           const LocalValues& point);

/// Jets of the eight fields at one space-time point.
struct PointJets {
  std::array<Jet, 2> rho, v, s, omega;
};

PointJets sample_point(const ManufacturedFields& fields, double t, double x);

/// The quantities of the energy identity at one point:
///   G = E - sum_a (M_a v_a + (k_a v_a - R_a - T_a s_a) B_a) - S
/// The lettered entries are the lettered sub-identities summed over the
/// components, and G = a + b + c + d + e + legendre - heat_split.
struct PointTerms {
  double E = 0;
  std::array<double, 2> M{}, B{}, Q{};
  double S = 0;
  double momentum_work = 0;  // sum M_a v_a
  double mass_work = 0;      // sum (k_a v_a - R_a - T_a s_a) B_a
  double residual = 0;       // G
  double flipped_sign_residual = 0;  // G with +T_a s_a in the mass term
  double term_magnitude = 0;  // max(|E|, |sum M v|, |S|, |mass term|)

  std::array<double, 5> sub_identity{};  // a..e, e in the (di/dt) u reading
  std::array<double, 5> term_scale{};    // largest single term of each
  double term_e_eta = 0;                 // e in the (di/dt) eta reading
  double legendre = 0;    // d f/dt - (di/dt) u - sum(eta_rho rho_t + rho T s_t)
  double heat_split = 0;  // S - sum(rho T d_a s/dt + T s B)
};

/// Analytic evaluation: every composite derivative comes from the chain rule.
PointTerms gibbs_terms(const PointJets& point, const ExtendedPotential& potential);

/// The section-4 energy expression for b = 0, Omega = 0:
///   d/dt(e + sum rho_a v_a^2 / 2) + d/dx(e v + sum (rho_a v_a^2 / 2 + p_a) v_a)
/// with p_a = rho_a de/drho_a - rho_a e / rho.
double simplified_energy_expression(const PointJets& point, const ExtendedPotential& potential);

/// Fills the time derivatives of rho_a, v_a and s1 so that B_a = 0, M_a = 0
/// and S = 0 hold at the point, keeping values, space derivatives, the external
/// potentials and d s2/dt as given.
PointJets balance_time_derivatives(const PointJets& point, const ExtendedPotential& potential);

struct SampleWindow {
  double t0 = 0.0, t1 = 1.0;
  std::size_t nt = 8;
  double x0 = 0.0, x1 = 1.0;
  std::size_t nx = 16;
};

struct IdentityMode {
  enum class Kind { analytic, finite_difference };
  Kind kind = Kind::analytic;
  double h = 0.0;   // spatial step, finite-difference mode
  double dt = 0.0;  // time step, finite-difference mode

  static IdentityMode analytic() { return {}; }
  static IdentityMode finite_difference(double h, double dt) {
    return {Kind::finite_difference, h, dt};
  }
};

enum class ETermReading { relative_velocity, potential };

struct IdentityReport {
  IdentityMode mode;
  std::size_t points = 0;
  double residual_max = 0;
  double residual_l2 = 0;  // root mean square over the sample
  double term_magnitude = 0;
  double flipped_sign_residual_max = 0;
  std::array<double, 5> term_residual{};
  std::array<double, 5> term_scale{};
  double term_e_eta_residual = 0;
  double legendre_residual = 0;
  double heat_split_residual = 0;
  double decomposition_gap = 0;  // max |G - (a + b + c + d + e + legendre - heat_split)|
};

/// Evaluates the energy identity over the window. In finite-difference mode
/// every composite is differenced directly on a (t +- dt, x +- h) stencil.
/// Throws std::domain_error if a nonpositive density is met.
IdentityReport gibbs_residual(const ManufacturedFields& fields, const ExtendedPotential& potential,
                              const SampleWindow& window, const IdentityMode& mode);

/// Max over the window of one lettered sub-identity ('a'..'e').
double term_identity_residual(char identity, const ManufacturedFields& fields,
                              const ExtendedPotential& potential, const SampleWindow& window,
                              const IdentityMode& mode,
                              ETermReading reading = ETermReading::relative_velocity);

/// Least-squares slope of log(norm) against log(h) for norms measured at
/// h, h/2, h/4, ... Returns nullopt when a norm is exactly zero.
std::optional<double> convergence_order(std::span<const double> norms);

}  // namespace twotemp
