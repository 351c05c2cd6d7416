#include "twotemp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "twotemp/avgtemp.hpp"
#include "twotemp/roots.hpp"

namespace twotemp {

Field FieldInit::sample(const Grid1D& grid) const {
  const double L = grid.length();
  return twotemp::sample(grid, [&](double x) {
    double f = background;
    for (const FourierMode& m : modes) {
      f += m.amplitude * std::sin(2.0 * std::numbers::pi * m.wavenumber * x / L + m.phase);
    }
    return f;
  });
}

MixtureState initial_state(const Scenario& sc) {
  const Grid1D& g = sc.grid;
  MixtureState s{sc.initial.rho1.sample(g), sc.initial.rho2.sample(g), sc.initial.v1.sample(g),
                 sc.initial.v2.sample(g),   Field(g.size()),           Field(g.size())};
  s.validate(g);
  const Field T1 = sc.initial.T1.sample(g);
  const Field T2 = sc.initial.T2.sample(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    s.s1[i] = entropy_from_temperature(sc.model, Component::first, s.rho1[i], T1[i]);
    s.s2[i] = entropy_from_temperature(sc.model, Component::second, s.rho2[i], T2[i]);
  }
  return s;
}

double max_wave_speed(const MixtureState& s, const GasPairModel& model) {
  double a = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (int alpha = 0; alpha < 2; ++alpha) {
      const Component c = alpha == 0 ? Component::first : Component::second;
      const double rho = alpha == 0 ? s.rho1[i] : s.rho2[i];
      const double v = alpha == 0 ? s.v1[i] : s.v2[i];
      const double sa = alpha == 0 ? s.s1[i] : s.s2[i];
      const GasParams& gas = model[c];
      const double T = temperature_from_entropy(model, c, rho, sa);
      a = std::max(a, std::abs(v) + std::sqrt(gas.gamma() * gas.k * T));
    }
  }
  return a;
}

void Scenario::validate() const {
  std::vector<std::string> problems;
  try {
    model.validate();
  } catch (const std::exception& e) {
    problems.emplace_back(e.what());
  }
  try {
    closure.validate();
  } catch (const std::exception& e) {
    problems.emplace_back(e.what());
  }
  if (!(dt > 0.0)) problems.emplace_back("dt must be > 0");
  if (!(t_end > 0.0)) problems.emplace_back("t_end must be > 0");
  if (stride == 0) problems.emplace_back("stride must be >= 1");
  if (!(cfl > 0.0)) problems.emplace_back("cfl must be > 0");
  if (scheme.slaving && closure.mode != ClosureMode::relaxation_m) {
    problems.emplace_back("slaving requires the relaxation_m closure mode");
  }
  if (problems.empty()) {
    try {
      const MixtureState s = initial_state(*this);
      const double limit = cfl * grid.dx() / max_wave_speed(s, model);
      if (dt > limit) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "dt = " << dt << " exceeds the CFL limit " << limit;
        problems.push_back(msg.str());
      }
    } catch (const std::exception& e) {
      problems.emplace_back(std::string("initial state: ") + e.what());
    }
  }
  if (!problems.empty()) {
    std::string all = "invalid scenario:";
    for (const std::string& p : problems) all += "\n  " + p;
    throw std::invalid_argument(all);
  }
}

namespace {

double van_leer(double a, double b) { return a * b > 0.0 ? 2.0 * a * b / (a + b) : 0.0; }

// left[i], right[i]: values on the two sides of face i+1/2.
void face_values(FieldView u, const Grid1D& g, Reconstruction r, Field& left, Field& right) {
  const std::size_t n = g.size();
  left.assign(n, 0.0);
  right.assign(n, 0.0);
  if (r == Reconstruction::first_order) {
    for (std::size_t i = 0; i < n; ++i) {
      left[i] = u[i];
      right[i] = u[g.next(i)];
    }
    return;
  }
  Field slope(n);
  for (std::size_t i = 0; i < n; ++i) {
    slope[i] = van_leer(u[i] - u[g.prev(i)], u[g.next(i)] - u[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = g.next(i);
    left[i] = u[i] + 0.5 * slope[i];
    right[i] = u[j] - 0.5 * slope[j];
  }
}

struct ComponentRates {
  Field d_rho, d_mom, d_ent;
};

ComponentRates component_rates(const GasParams& gas, FieldView rho, FieldView v, FieldView s,
                               FieldView T, const Grid1D& g, Reconstruction r) {
  const std::size_t n = g.size();
  const double dx = g.dx();

  Field a(n), h(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::abs(v[i]) + std::sqrt(gas.gamma() * gas.k * T[i]);
    h[i] = (gas.cv + gas.k) * T[i];
  }

  Field rl, rr, vl, vr, sl, sr;
  face_values(rho, g, r, rl, rr);
  face_values(v, g, r, vl, vr);
  face_values(s, g, r, sl, sr);

  Field f_mass(n), f_mom(n), f_ent(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double af = std::max(a[i], a[g.next(i)]);
    const double ml = rl[i] * vl[i], mr = rr[i] * vr[i];
    const double el = rl[i] * sl[i], er = rr[i] * sr[i];
    f_mass[i] = 0.5 * (ml + mr) - 0.5 * af * (rr[i] - rl[i]);
    f_mom[i] = 0.5 * (ml * vl[i] + mr * vr[i]) - 0.5 * af * (mr - ml);
    f_ent[i] = 0.5 * (el * vl[i] + er * vr[i]) - 0.5 * af * (er - el);
  }

  ComponentRates out{Field(n), Field(n), Field(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = g.prev(i), ip = g.next(i);
    out.d_rho[i] = -(f_mass[i] - f_mass[im]) / dx;
    out.d_ent[i] = -(f_ent[i] - f_ent[im]) / dx;
    const double ds = (s[ip] - s[im]) / (2.0 * dx);
    const double dh = (h[ip] - h[im]) / (2.0 * dx);
    out.d_mom[i] = -(f_mom[i] - f_mom[im]) / dx + rho[i] * T[i] * ds - rho[i] * dh;
  }
  return out;
}

Field component_temperature(const GasPairModel& model, Component c, FieldView rho, FieldView s) {
  Field T(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) T[i] = temperature_from_entropy(model, c, rho[i], s[i]);
  return T;
}

}  // namespace

ConservedRates conserved_rhs(const MixtureState& st, const GasPairModel& model,
                             const ClosureParams& closure, const Grid1D& g, Reconstruction r,
                             std::vector<std::size_t>* regularized) {
  st.validate(g);
  const std::size_t n = g.size();
  const Field T1 = component_temperature(model, Component::first, st.rho1, st.s1);
  const Field T2 = component_temperature(model, Component::second, st.rho2, st.s2);

  ComponentRates c1 = component_rates(model.gas[0], st.rho1, st.v1, st.s1, T1, g, r);
  ComponentRates c2 = component_rates(model.gas[1], st.rho2, st.v2, st.s2, T2, g, r);

  const Field divv = div(mass_average_velocity(st), g);
  for (std::size_t i = 0; i < n; ++i) {
    if (closure.chi > 0.0) {
      const double m = momentum_production(closure.chi, st.v2[i] - st.v1[i]);
      c1.d_mom[i] += m;
      c2.d_mom[i] -= m;
    }
    const double lambda = effective_lambda(model, closure, st.rho1[i], st.rho2[i]);
    if (lambda == 0.0) continue;
    const double T = average_temperature(model, st.rho1[i], st.rho2[i], T1[i], T2[i]).T;
    const EntropySources es = entropy_sources(st.rho1[i], st.rho2[i], T1[i], T2[i], T, lambda,
                                              divv[i], closure.epsilon_T);
    if (es.regularized && regularized) regularized->push_back(i);
    c1.d_ent[i] += st.rho1[i] * es.sdot1;
    c2.d_ent[i] += st.rho2[i] * es.sdot2;
  }
  return {std::move(c1.d_rho), std::move(c2.d_rho), std::move(c1.d_mom),
          std::move(c2.d_mom), std::move(c1.d_ent), std::move(c2.d_ent)};
}

PrimitiveRates rhs(const MixtureState& st, const GasPairModel& model, const ClosureParams& closure,
                   const Grid1D& g, Reconstruction r) {
  const ConservedRates c = conserved_rhs(st, model, closure, g, r);
  const std::size_t n = g.size();
  PrimitiveRates p{c.rho1, c.rho2, Field(n), Field(n), Field(n), Field(n)};
  // d(rho q)/dt = rho dq/dt + q drho/dt
  for (std::size_t i = 0; i < n; ++i) {
    p.v1[i] = (c.mom1[i] - st.v1[i] * c.rho1[i]) / st.rho1[i];
    p.v2[i] = (c.mom2[i] - st.v2[i] * c.rho2[i]) / st.rho2[i];
    p.s1[i] = (c.ent1[i] - st.s1[i] * c.rho1[i]) / st.rho1[i];
    p.s2[i] = (c.ent2[i] - st.s2[i] * c.rho2[i]) / st.rho2[i];
  }
  return p;
}

namespace {

using Conserved = std::array<Field, 6>;

Conserved to_conserved(const MixtureState& s) {
  const std::size_t n = s.size();
  Conserved u{s.rho1, s.rho2, Field(n), Field(n), Field(n), Field(n)};
  for (std::size_t i = 0; i < n; ++i) {
    u[2][i] = s.rho1[i] * s.v1[i];
    u[3][i] = s.rho2[i] * s.v2[i];
    u[4][i] = s.rho1[i] * s.s1[i];
    u[5][i] = s.rho2[i] * s.s2[i];
  }
  return u;
}

MixtureState to_state(const Conserved& u) {
  const std::size_t n = u[0].size();
  MixtureState s{u[0], u[1], Field(n), Field(n), Field(n), Field(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (const Field& f : u) {
      if (!std::isfinite(f[i])) {
        throw StepError(StepFailure::nonfinite, "non-finite value in cell " + std::to_string(i));
      }
    }
    if (!(u[0][i] > 0.0) || !(u[1][i] > 0.0)) {
      throw StepError(StepFailure::positivity,
                      "nonpositive density in cell " + std::to_string(i));
    }
    s.v1[i] = u[2][i] / u[0][i];
    s.v2[i] = u[3][i] / u[1][i];
    s.s1[i] = u[4][i] / u[0][i];
    s.s2[i] = u[5][i] / u[1][i];
  }
  return s;
}

Conserved rates_of(const MixtureState& s, const Scenario& sc, std::vector<std::size_t>* reg) {
  ConservedRates r =
      conserved_rhs(s, sc.model, sc.closure, sc.grid, sc.scheme.reconstruction, reg);
  return {std::move(r.rho1), std::move(r.rho2), std::move(r.mom1),
          std::move(r.mom2), std::move(r.ent1), std::move(r.ent2)};
}

// u + b (w + dt L - u): the convex weights never have to sum to one in floating point
Conserved combine(const Conserved& u, double b, const Conserved& w, double dt, const Conserved& L) {
  Conserved out = w;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::size_t i = 0; i < out[k].size(); ++i) {
      out[k][i] = u[k][i] + b * ((w[k][i] + dt * L[k][i]) - u[k][i]);
    }
  }
  return out;
}

void slave_temperature_gap(MixtureState& s, const Scenario& sc) {
  const GasPairModel& m = sc.model;
  const Field divv = div(mass_average_velocity(s), sc.grid);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r1 = s.rho1[i], r2 = s.rho2[i];
    const double T1 = temperature_from_entropy(m, Component::first, r1, s.s1[i]);
    const double T2 = temperature_from_entropy(m, Component::second, r2, s.s2[i]);
    const double T = average_temperature(m, r1, r2, T1, T2).T;
    const double theta = theta_constitutive(m, r1, r2, sc.closure.M, divv[i]);
    const double beta = beta_split(m, r1, r2);
    const double n1 = T + beta * theta, n2 = T + (1.0 + beta) * theta;
    if (!(n1 > 0.0) || !(n2 > 0.0)) {
      throw StepError(StepFailure::thermodynamics,
                      "slaved temperature is nonpositive in cell " + std::to_string(i));
    }
    s.s1[i] = entropy_from_temperature(m, Component::first, r1, n1);
    s.s2[i] = entropy_from_temperature(m, Component::second, r2, n2);
  }
}

}  // namespace

MixtureState step(const MixtureState& s, const Scenario& sc, double dt,
                  std::vector<std::size_t>* regularized) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  try {
    const double limit = sc.cfl * sc.grid.dx() / max_wave_speed(s, sc.model);
    if (dt > limit * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "CFL violated: dt = " << dt << " > " << limit;
      throw StepError(StepFailure::cfl, msg.str());
    }

    const Conserved u0 = to_conserved(s);
    const Conserved u1 = combine(u0, 1.0, u0, dt, rates_of(s, sc, regularized));
    const MixtureState s1 = to_state(u1);
    const Conserved u2 = combine(u0, 0.25, u1, dt, rates_of(s1, sc, nullptr));
    const MixtureState s2 = to_state(u2);
    MixtureState out = to_state(combine(u0, 2.0 / 3.0, u2, dt, rates_of(s2, sc, nullptr)));
    if (sc.scheme.slaving) slave_temperature_gap(out, sc);
    return out;
  } catch (const StepError&) {
    throw;
  } catch (const RootNotConverged& e) {
    throw StepError(StepFailure::thermodynamics, e.what());
  } catch (const std::domain_error& e) {
    throw StepError(StepFailure::thermodynamics, e.what());
  } catch (const std::invalid_argument& e) {
    throw StepError(StepFailure::positivity, e.what());
  }
}

Diagnostics diagnostics(const MixtureState& s, const GasPairModel& model, const Grid1D& g) {
  s.validate(g);
  const std::size_t n = g.size();
  const double dx = g.dx();
  Diagnostics d;
  d.T1 = component_temperature(model, Component::first, s.rho1, s.s1);
  d.T2 = component_temperature(model, Component::second, s.rho2, s.s2);
  d.Tavg.resize(n);
  d.p.resize(n);
  d.p0.resize(n);
  d.pi.resize(n);
  d.theta.resize(n);
  d.divv = div(mass_average_velocity(s), g);
  d.min_temperature_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = s.rho1[i], r2 = s.rho2[i];
    const double kinetic = 0.5 * (r1 * s.v1[i] * s.v1[i] + r2 * s.v2[i] * s.v2[i]);
    d.mass1 += r1 * dx;
    d.mass2 += r2 * dx;
    d.momentum += (r1 * s.v1[i] + r2 * s.v2[i]) * dx;
    d.energy += (volume_energy(model, r1, r2, s.s1[i], s.s2[i]) + kinetic) * dx;
    d.energy_from_temperatures +=
        (volume_energy_from_temperatures(model, r1, r2, d.T1[i], d.T2[i]) + kinetic) * dx;
    d.entropy += (r1 * s.s1[i] + r2 * s.s2[i]) * dx;
    d.theta[i] = d.T2[i] - d.T1[i];
    d.min_temperature_gap = std::min(d.min_temperature_gap, std::abs(d.theta[i]));
    d.Tavg[i] = average_temperature(model, r1, r2, d.T1[i], d.T2[i]).T;
    d.p[i] = pressure_from_temperatures(model, r1, r2, d.T1[i], d.T2[i]);
    d.p0[i] = pressure_from_temperatures(model, r1, r2, d.Tavg[i], d.Tavg[i]);
    d.pi[i] = d.p[i] - d.p0[i];
  }
  return d;
}

Trajectory integrate(const Scenario& sc) {
  sc.validate();
  Trajectory tr;
  MixtureState state = initial_state(sc);
  tr.frames.push_back({0, 0.0, state, diagnostics(state, sc.model, sc.grid)});
  tr.last_valid = state;

  const auto nsteps =
      static_cast<std::size_t>(std::ceil(sc.t_end / sc.dt * (1.0 - 1e-12)));
  double t = 0.0;
  std::vector<std::size_t> cells;
  for (std::size_t k = 1; k <= nsteps; ++k) {
    const double t_next = k == nsteps ? sc.t_end : static_cast<double>(k) * sc.dt;
    cells.clear();
    auto log_cells = [&] {
      for (std::size_t c : cells) {
        if (tr.regularized.size() < Trajectory::max_logged) tr.regularized.push_back({k, t, c});
      }
      tr.regularized_total += cells.size();
    };
    try {
      state = step(state, sc, t_next - t, &cells);
    } catch (const StepError& e) {
      log_cells();
      std::ostringstream msg;
      msg.precision(17);
      msg << "step " << k << " at t = " << t << ": " << e.what();
      tr.error = msg.str();
      if (tr.frames.back().step != tr.steps_taken) {
        tr.frames.push_back({tr.steps_taken, t, state, diagnostics(state, sc.model, sc.grid)});
      }
      return tr;
    }
    log_cells();
    t = t_next;
    tr.steps_taken = k;
    tr.t_last = t;
    tr.last_valid = state;
    if (k % sc.stride == 0 || k == nsteps) {
      tr.frames.push_back({k, t, state, diagnostics(state, sc.model, sc.grid)});
    }
  }
  tr.completed = true;
  return tr;
}

}  // namespace twotemp
