#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "twotemp/closure.hpp"
#include "twotemp/fields.hpp"
#include "twotemp/thermo.hpp"

namespace twotemp {

/// amplitude * sin(2 pi wavenumber x / L + phase)
struct FourierMode {
  double wavenumber = 1.0;
  double amplitude = 0.0;
  double phase = 0.0;
};

struct FieldInit {
  double background = 0.0;
  std::vector<FourierMode> modes;

  Field sample(const Grid1D& grid) const;
};

/// Temperatures are perturbed, entropies follow from them.
struct InitialCondition {
  FieldInit rho1{1.0, {}}, rho2{1.0, {}};
  FieldInit v1{0.0, {}}, v2{0.0, {}};
  FieldInit T1{300.0, {}}, T2{300.0, {}};
};

enum class Reconstruction { first_order, muscl };

struct SchemeOptions {
  Reconstruction reconstruction = Reconstruction::muscl;
  // Overwrite T2 - T1 after every step with the relaxation-mode constitutive
  // value, keeping each cell's internal energy.
  bool slaving = false;
};

struct Scenario {
  Grid1D grid{64, 1.0};
  GasPairModel model;
  ClosureParams closure;
  InitialCondition initial;
  double dt = 1e-4;
  double t_end = 1e-2;
  std::size_t stride = 10;
  double cfl = 0.4;
  SchemeOptions scheme;

  /// Throws std::invalid_argument naming every violated constraint,
  /// including the CFL bound on the initial state.
  void validate() const;
};

MixtureState initial_state(const Scenario& scenario);

/// max over cells and components of |v_a| + sqrt(gamma_a k_a T_a)
double max_wave_speed(const MixtureState& state, const GasPairModel& model);

/// Time derivatives of rho_a, rho_a v_a and rho_a s_a.
struct ConservedRates {
  Field rho1, rho2, mom1, mom2, ent1, ent2;
};

/// Time derivatives of the primitive fields.
struct PrimitiveRates {
  Field rho1, rho2, v1, v2, s1, s2;
};

/// Semi-discrete right-hand side. Mass, momentum and rho_a s_a are advanced by
/// local Lax-Friedrichs fluxes; rho_a T_a grad s_a - rho_a grad h_a and
/// +-m are central-difference sources; rho_a d_a s_a/dt comes from the entropy
/// sources with div of the mass-average velocity. Cells whose temperature gap
/// was regularized while Lambda > 0 are appended to `regularized`.
ConservedRates conserved_rhs(const MixtureState& state, const GasPairModel& model,
                             const ClosureParams& closure, const Grid1D& grid,
                             Reconstruction reconstruction = Reconstruction::muscl,
                             std::vector<std::size_t>* regularized = nullptr);

PrimitiveRates rhs(const MixtureState& state, const GasPairModel& model,
                   const ClosureParams& closure, const Grid1D& grid,
                   Reconstruction reconstruction = Reconstruction::muscl);

enum class StepFailure { cfl, positivity, nonfinite, thermodynamics };

class StepError : public std::runtime_error {
 public:
  StepError(StepFailure kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  StepFailure kind() const { return kind_; }

 private:
  StepFailure kind_;
};

/// One SSP-RK3 step of size dt. Throws StepError.
MixtureState step(const MixtureState& state, const Scenario& scenario, double dt,
                  std::vector<std::size_t>* regularized = nullptr);

struct Diagnostics {
  double mass1 = 0, mass2 = 0;
  double momentum = 0;
  double energy = 0;                    // from e(rho1, rho2, s1, s2)
  double energy_from_temperatures = 0;  // from rho1 cv1 T1 + rho2 cv2 T2
  double entropy = 0;
  double min_temperature_gap = 0;
  Field T1, T2, Tavg, p, p0, pi, theta, divv;
};

Diagnostics diagnostics(const MixtureState& state, const GasPairModel& model, const Grid1D& grid);

struct Frame {
  std::size_t step = 0;
  double t = 0;
  MixtureState state;
  Diagnostics diag;
};

struct RegularizationEvent {
  std::size_t step = 0;
  double t = 0;
  std::size_t cell = 0;
};

struct Trajectory {
  std::vector<Frame> frames;  // t = 0, every stride steps, and the last valid step
  bool completed = false;
  std::string error;         // set when the run stopped early
  std::size_t steps_taken = 0;
  double t_last = 0;
  MixtureState last_valid;
  std::vector<RegularizationEvent> regularized;  // first max_logged events
  std::size_t regularized_total = 0;

  static constexpr std::size_t max_logged = 10000;
};

/// Runs the scenario to t_end. The last step is shortened to land on t_end.
/// A failing step ends the run with completed = false and the last valid state.
/// Throws std::invalid_argument for an invalid scenario.
Trajectory integrate(const Scenario& scenario);

}  // namespace twotemp
