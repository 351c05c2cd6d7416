#pragma once

#include <array>
#include <cstddef>

namespace twotemp {

enum class Component { first = 0, second = 1 };

constexpr std::size_t index(Component c) { return static_cast<std::size_t>(c); }

/// Calorically perfect gas: p = k rho T, specific energy cv T.
struct GasParams {
  double k = 1.0;   // specific gas constant, J/(kg K)
  double cv = 1.5;  // specific heat at constant volume, J/(kg K)

  double gamma() const { return 1.0 + k / cv; }
};

/// Two perfect gases sharing one reference state. The volume energy is
/// separable, e = rho1 cv1 T1 + rho2 cv2 T2, with the additive constant zero.
///
/// Specific entropy of each component:
///   s = s_ref + cv ln(T / T_ref) - k ln(rho / rho_ref)
struct GasPairModel {
  std::array<GasParams, 2> gas{};
  double T_ref = 1.0;
  double rho_ref = 1.0;
  double s_ref = 0.0;

  const GasParams& operator[](Component c) const { return gas[index(c)]; }

  /// Throws std::invalid_argument on nonpositive k, cv or reference values.
  void validate() const;
};

double temperature_from_entropy(const GasPairModel& model, Component c, double rho, double s);
double entropy_from_temperature(const GasPairModel& model, Component c, double rho, double T);

/// Specific internal energy of one component, cv T.
double component_specific_energy(const GasPairModel& model, Component c, double T);

/// Volume internal energy e(rho1, rho2, s1, s2).
double volume_energy(const GasPairModel& model, double rho1, double rho2, double s1, double s2);

/// Volume internal energy as a function of component temperatures.
double volume_energy_from_temperatures(const GasPairModel& model, double rho1, double rho2,
                                       double T1, double T2);

/// Total pressure at component temperatures, sum k_a rho_a T_a.
double pressure_from_temperatures(const GasPairModel& model, double rho1, double rho2, double T1,
                                  double T2);

struct ThermoPoint {
  double T1 = 0, T2 = 0;
  // Dalton partial pressures k_a rho_a T_a.
  double p_partial1 = 0, p_partial2 = 0;
  // Stress-definition component pressures rho_a de/drho_a - rho_a e / rho.
  // Differ from the partial pressures componentwise, agree in the sum.
  double p_stress1 = 0, p_stress2 = 0;
  double h1 = 0, h2 = 0;    // de/drho_a at fixed entropies
  double mu1 = 0, mu2 = 0;  // h_a - T_a s_a
  double e = 0;             // volume internal energy
  double p = 0;             // p_partial1 + p_partial2
};

ThermoPoint thermo_eval(const GasPairModel& model, double rho1, double rho2, double s1, double s2);

}  // namespace twotemp
