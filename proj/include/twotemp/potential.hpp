#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twotemp/jet.hpp"
#include "twotemp/thermo.hpp"

namespace twotemp {

/// Arguments of the volume potential in the order (rho1, rho2, s1, s2).
using PotentialArgs = std::array<double, 4>;

/// Value, gradient and Hessian of a scalar function of PotentialArgs.
struct SecondOrderEval {
  double value = 0.0;
  std::array<double, 4> grad{};
  std::array<std::array<double, 4>, 4> hess{};
};

/// The partials of eta that enter the dynamics, for either plain values or jets.
template <class S>
struct EtaParts {
  S eta{};
  std::array<S, 2> d_rho{};
  std::array<S, 2> d_s{};
  S d_u{};
};

class PotentialCheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Volume potential eta = e(rho1, rho2, s1, s2) - b(rho1, rho2, s1, s2) u^2 with
/// analytic first and second partials of e and b.
///
/// The constructor compares every supplied partial against central finite
/// differences at each probe point and throws PotentialCheckFailed on a
/// mismatch above 1e-6 relative, or if b is negative at a probe.
class ExtendedPotential {
 public:
  using Part = std::function<SecondOrderEval(const PotentialArgs&)>;

  ExtendedPotential(std::string name, Part energy, Part b, std::vector<PotentialArgs> probes);

  const std::string& name() const { return name_; }
  SecondOrderEval energy(const PotentialArgs& a) const { return energy_(a); }
  SecondOrderEval b(const PotentialArgs& a) const { return b_(a); }

  EtaParts<double> evaluate(const PotentialArgs& a, double u) const;
  /// Chain rule through the Hessians of e and b.
  EtaParts<Jet> evaluate(const std::array<Jet, 4>& a, Jet u) const;

  /// Largest relative mismatch found by the construction-time check.
  double self_check_error() const { return self_check_error_; }

 private:
  std::string name_;
  Part energy_;
  Part b_;
  double self_check_error_ = 0.0;
};

struct QuadraticEnergy {
  double a1 = 1.0, a2 = 1.0, a12 = 0.0;  // density curvature and cross term
  double c1 = 1.0, c2 = 1.0;             // rho_a s_a coupling
};

/// e = a1 rho1^2 / 2 + a2 rho2^2 / 2 + a12 rho1 rho2 + c1 rho1 s1 + c2 rho2 s2,
/// b constant.
ExtendedPotential quadratic_potential(const QuadraticEnergy& q, double b0);

/// Separable perfect-gas pair energy from GasPairModel, b constant.
ExtendedPotential perfect_gas_potential(const GasPairModel& model, double b0);

/// Nonseparable energy: perfect gas pair plus g rho1 rho2 (s1 - s2)^2, with
/// b = b0 rho1 rho2 / (rho1 + rho2).
ExtendedPotential coupled_potential(const GasPairModel& model, double g, double b0);

}  // namespace twotemp
