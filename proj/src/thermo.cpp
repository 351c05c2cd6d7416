#include "twotemp/thermo.hpp"

#include <cmath>
#include <stdexcept>

namespace twotemp {

void GasPairModel::validate() const {
  for (const auto& g : gas) {
    if (!(g.k > 0.0) || !(g.cv > 0.0)) {
      throw std::invalid_argument("gas model: k and cv must be positive");
    }
  }
  if (!(T_ref > 0.0) || !(rho_ref > 0.0)) {
    throw std::invalid_argument("gas model: T_ref and rho_ref must be positive");
  }
  if (!std::isfinite(s_ref)) throw std::invalid_argument("gas model: s_ref must be finite");
}

namespace {

void require_positive_density(double rho) {
  if (!(rho > 0.0)) throw std::domain_error("thermo: nonpositive density");
}

}  // namespace

double temperature_from_entropy(const GasPairModel& model, Component c, double rho, double s) {
  require_positive_density(rho);
  const GasParams& g = model[c];
  return model.T_ref * std::exp((s - model.s_ref + g.k * std::log(rho / model.rho_ref)) / g.cv);
}

double entropy_from_temperature(const GasPairModel& model, Component c, double rho, double T) {
  require_positive_density(rho);
  if (!(T > 0.0)) throw std::domain_error("thermo: nonpositive temperature");
  const GasParams& g = model[c];
  return model.s_ref + g.cv * std::log(T / model.T_ref) - g.k * std::log(rho / model.rho_ref);
}

double component_specific_energy(const GasPairModel& model, Component c, double T) {
  return model[c].cv * T;
}

double volume_energy_from_temperatures(const GasPairModel& model, double rho1, double rho2,
                                       double T1, double T2) {
  return rho1 * component_specific_energy(model, Component::first, T1) +
         rho2 * component_specific_energy(model, Component::second, T2);
}

double volume_energy(const GasPairModel& model, double rho1, double rho2, double s1, double s2) {
  return volume_energy_from_temperatures(
      model, rho1, rho2, temperature_from_entropy(model, Component::first, rho1, s1),
      temperature_from_entropy(model, Component::second, rho2, s2));
}

double pressure_from_temperatures(const GasPairModel& model, double rho1, double rho2, double T1,
                                  double T2) {
  return model.gas[0].k * rho1 * T1 + model.gas[1].k * rho2 * T2;
}

ThermoPoint thermo_eval(const GasPairModel& model, double rho1, double rho2, double s1,
                        double s2) {
  require_positive_density(rho1);
  require_positive_density(rho2);
  const GasParams& g1 = model.gas[0];
  const GasParams& g2 = model.gas[1];

  ThermoPoint tp;
  tp.T1 = temperature_from_entropy(model, Component::first, rho1, s1);
  tp.T2 = temperature_from_entropy(model, Component::second, rho2, s2);
  tp.e = volume_energy_from_temperatures(model, rho1, rho2, tp.T1, tp.T2);
  // T_a grows like rho_a^(k_a/cv_a) at fixed s_a, hence d(rho cv T)/drho = (cv + k) T.
  tp.h1 = (g1.cv + g1.k) * tp.T1;
  tp.h2 = (g2.cv + g2.k) * tp.T2;
  tp.mu1 = tp.h1 - tp.T1 * s1;
  tp.mu2 = tp.h2 - tp.T2 * s2;
  tp.p_partial1 = g1.k * rho1 * tp.T1;
  tp.p_partial2 = g2.k * rho2 * tp.T2;
  const double rho = rho1 + rho2;
  tp.p_stress1 = rho1 * tp.h1 - rho1 * tp.e / rho;
  tp.p_stress2 = rho2 * tp.h2 - rho2 * tp.e / rho;
  tp.p = tp.p_partial1 + tp.p_partial2;
  return tp;
}

}  // namespace twotemp
