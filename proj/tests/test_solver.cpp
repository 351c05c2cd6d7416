#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twotemp/avgtemp.hpp"
#include "twotemp/solver.hpp"

using namespace twotemp;

namespace {

GasPairModel gas_model() {
  GasPairModel m;
  m.gas = {GasParams{1.0, 1.5}, GasParams{0.5, 2.5}};
  return m;
}

Scenario acoustic(std::size_t n, double amplitude, double lambda = 0.0) {
  Scenario sc;
  sc.grid = Grid1D(n, 1.0);
  sc.model = gas_model();
  sc.closure = ClosureParams::with_defaults(sc.model);
  sc.closure.lambda = lambda;
  sc.initial.rho1 = {1.0, {{1, amplitude, 0.0}}};
  sc.initial.rho2 = {2.0, {{1, 2.0 * amplitude, 0.3}}};
  sc.initial.v1 = {0.0, {{1, 22.0 * amplitude, 0.0}}};
  sc.initial.v2 = {0.0, {{2, 14.0 * amplitude, 0.1}}};
  sc.initial.T1 = {300.0, {{1, 100.0 * amplitude, 1.0}}};
  sc.initial.T2 = {320.0, {}};
  sc.dt = 0.3 * sc.grid.dx() / 32.0;
  sc.t_end = 50 * sc.dt;
  sc.stride = 1;
  return sc;
}

double max_field(const Field& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double max_state_diff(const MixtureState& a, const MixtureState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max({m, std::abs(a.rho1[i] - b.rho1[i]), std::abs(a.rho2[i] - b.rho2[i]),
                  std::abs(a.v1[i] - b.v1[i]), std::abs(a.v2[i] - b.v2[i]),
                  std::abs(a.s1[i] - b.s1[i]), std::abs(a.s2[i] - b.s2[i])});
  }
  return m;
}

MixtureState mirrored(const MixtureState& s) {
  MixtureState out = s;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    out.rho1[i] = s.rho1[j];
    out.rho2[i] = s.rho2[j];
    out.v1[i] = -s.v1[j];
    out.v2[i] = -s.v2[j];
    out.s1[i] = s.s1[j];
    out.s2[i] = s.s2[j];
  }
  return out;
}

}  // namespace

TEST_CASE("uniform states are stationary") {
  Scenario sc = acoustic(32, 0.0, 0.5);
  SUBCASE("at rest") {}
  SUBCASE("boosted") {
    sc.initial.v1.background = 3.0;
    sc.initial.v2.background = 3.0;
  }
  const MixtureState s = initial_state(sc);
  for (Reconstruction r : {Reconstruction::first_order, Reconstruction::muscl}) {
    const PrimitiveRates d = rhs(s, sc.model, sc.closure, sc.grid, r);
    for (const Field* f : {&d.rho1, &d.rho2, &d.v1, &d.v2, &d.s1, &d.s2}) {
      CHECK(max_field(*f) == 0.0);
    }
  }
  CHECK(max_state_diff(step(s, sc, sc.dt), s) <= 1e-14 * 300.0);
}

TEST_CASE("rhs is local to the stencil") {
  Scenario sc = acoustic(32, 0.0, 0.2);
  sc.closure.chi = 0.5;
  MixtureState s = initial_state(sc);
  const std::size_t center = 15;
  s.rho1[center] *= 1.01;
  s.v2[center] += 0.3;
  for (Reconstruction r : {Reconstruction::first_order, Reconstruction::muscl}) {
    const std::size_t radius = r == Reconstruction::muscl ? 2 : 1;
    const ConservedRates d = conserved_rhs(s, sc.model, sc.closure, sc.grid, r);
    for (std::size_t i = 0; i < 32; ++i) {
      const bool outside = i + radius < center || i > center + radius;
      const double mag = std::abs(d.rho1[i]) + std::abs(d.rho2[i]) + std::abs(d.mom1[i]) +
                         std::abs(d.mom2[i]) + std::abs(d.ent1[i]) + std::abs(d.ent2[i]);
      if (outside) CHECK(mag == 0.0);
      if (i + 1 >= center && i <= center + 1) CHECK(mag > 0.0);
    }
  }
}

TEST_CASE("primitive rates agree with conserved rates") {
  const Scenario sc = acoustic(24, 0.05, 0.3);
  const MixtureState s = initial_state(sc);
  const ConservedRates c = conserved_rhs(s, sc.model, sc.closure, sc.grid);
  const PrimitiveRates p = rhs(s, sc.model, sc.closure, sc.grid);
  for (std::size_t i = 0; i < 24; ++i) {
    CHECK(p.rho1[i] == c.rho1[i]);
    CHECK(s.rho1[i] * p.v1[i] + s.v1[i] * p.rho1[i] == doctest::Approx(c.mom1[i]));
    CHECK(s.rho2[i] * p.s2[i] + s.s2[i] * p.rho2[i] == doctest::Approx(c.ent2[i]));
  }
}

TEST_CASE("SSP-RK3 local error is third order") {
  Scenario sc = acoustic(16, 0.05);
  sc.scheme.reconstruction = Reconstruction::first_order;
  // A background drift keeps |v| away from its kink at zero.
  sc.initial.v1.background = 4.0;
  sc.initial.v2.background = 4.0;
  const MixtureState s = initial_state(sc);
  const double dt0 = 0.3 * sc.grid.dx() / max_wave_speed(s, sc.model);
  auto local_error = [&](double dt) {
    const MixtureState one = step(s, sc, dt);
    const MixtureState two = step(step(s, sc, 0.5 * dt), sc, 0.5 * dt);
    return max_state_diff(one, two);
  };
  const double e1 = local_error(dt0), e2 = local_error(0.5 * dt0), e3 = local_error(0.25 * dt0);
  CHECK(std::log2(e1 / e2) >= 3.0);
  CHECK(std::log2(e2 / e3) >= 3.0);
}

TEST_CASE("mirror symmetry") {
  for (Reconstruction r : {Reconstruction::first_order, Reconstruction::muscl}) {
    Scenario sc = acoustic(32, 0.05, 0.4);
    sc.scheme.reconstruction = r;
    sc.closure.chi = 0.7;
    MixtureState s = initial_state(sc);
    MixtureState m = mirrored(s);
    for (int k = 0; k < 20; ++k) {
      s = step(s, sc, sc.dt);
      m = step(m, sc, sc.dt);
    }
    CHECK(max_state_diff(mirrored(s), m) <= 1e-11);
  }
}

TEST_CASE("CFL and validity checks") {
  Scenario sc = acoustic(32, 0.01);
  CHECK_NOTHROW(sc.validate());
  Scenario fast = sc;
  fast.dt = 10.0 * sc.grid.dx() / 32.0;
  CHECK_THROWS_AS(fast.validate(), std::invalid_argument);
  try {
    step(initial_state(sc), sc, fast.dt);
    FAIL("expected a CFL failure");
  } catch (const StepError& e) {
    CHECK(e.kind() == StepFailure::cfl);
  }
  Scenario slaved = sc;
  slaved.scheme.slaving = true;
  CHECK_THROWS_AS(slaved.validate(), std::invalid_argument);
  Scenario bad = sc;
  bad.initial.rho1.background = -1.0;
  bad.closure.chi = -2.0;
  try {
    bad.validate();
    FAIL("expected invalid scenario");
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    CHECK(what.find("chi") != std::string::npos);
  }
}

TEST_CASE("zero-amplitude run keeps every diagnostic constant") {
  Scenario sc = acoustic(32, 0.0, 0.3);
  sc.t_end = 1000 * sc.dt;
  sc.stride = 50;
  const Trajectory tr = integrate(sc);
  REQUIRE(tr.completed);
  CHECK(tr.steps_taken == 1000);
  CHECK(tr.frames.size() == 21);
  const Diagnostics& d0 = tr.frames.front().diag;
  for (const Frame& f : tr.frames) {
    CHECK(f.diag.mass1 == doctest::Approx(d0.mass1).epsilon(1e-14));
    CHECK(f.diag.mass2 == doctest::Approx(d0.mass2).epsilon(1e-14));
    CHECK(std::abs(f.diag.momentum - d0.momentum) <= 1e-14);
    CHECK(f.diag.energy == doctest::Approx(d0.energy).epsilon(1e-14));
    CHECK(f.diag.entropy == doctest::Approx(d0.entropy).epsilon(1e-14));
  }
  CHECK(tr.t_last == doctest::Approx(sc.t_end).epsilon(1e-14));
}

TEST_CASE("entropy is conserved without sources and grows with them") {
  Scenario sc = acoustic(64, 0.01);
  sc.t_end = 200 * sc.dt;
  const Trajectory ideal = integrate(sc);
  REQUIRE(ideal.completed);
  const double S0 = ideal.frames.front().diag.entropy;
  for (const Frame& f : ideal.frames) {
    CHECK(std::abs(f.diag.entropy - S0) <= 1e-13 * std::abs(S0));
    CHECK(std::abs(f.diag.mass1 - ideal.frames.front().diag.mass1) <= 1e-13);
  }

  sc.closure.lambda = 2.0;
  sc.closure.chi = 1.0;
  const Trajectory dissipative = integrate(sc);
  REQUIRE(dissipative.completed);
  CHECK(dissipative.regularized_total == 0);
  for (std::size_t k = 1; k < dissipative.frames.size(); ++k) {
    const double prev = dissipative.frames[k - 1].diag.entropy;
    CHECK(dissipative.frames[k].diag.entropy - prev >= -1e-12 * std::abs(prev));
  }
  CHECK(dissipative.frames.back().diag.entropy > S0 + 1e-10 * std::abs(S0));
}

TEST_CASE("heat exchange alone keeps the internal energy") {
  const Scenario sc = acoustic(32, 0.02, 0.05);
  const MixtureState s = initial_state(sc);
  const Diagnostics d = diagnostics(s, sc.model, sc.grid);
  const Field divv = d.divv;
  MixtureState next = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const EntropySources es = entropy_sources(s.rho1[i], s.rho2[i], d.T1[i], d.T2[i], d.Tavg[i],
                                              sc.closure.lambda, divv[i], sc.closure.epsilon_T);
    next.s1[i] += sc.dt * es.sdot1;
    next.s2[i] += sc.dt * es.sdot2;
  }
  const double before = diagnostics(s, sc.model, sc.grid).energy;
  const double after = diagnostics(next, sc.model, sc.grid).energy;
  CHECK(std::abs(after - before) <= 1e-10 * before);
  CHECK(diagnostics(next, sc.model, sc.grid).entropy > d.entropy);
}

TEST_CASE("diagnostics") {
  const Scenario uniform = acoustic(16, 0.0);
  const MixtureState s = initial_state(uniform);
  const Diagnostics d = diagnostics(s, uniform.model, uniform.grid);
  CHECK(d.mass1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.mass2 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(d.momentum == 0.0);
  CHECK(d.energy == doctest::Approx(1.5 * 300.0 + 2.0 * 2.5 * 320.0).epsilon(1e-13));
  CHECK(d.min_temperature_gap == doctest::Approx(20.0));
  CHECK(d.pi[3] == doctest::Approx(-70.0 / 6.5).epsilon(1e-9));

  const Scenario wavy = acoustic(40, 0.05);
  MixtureState w = initial_state(wavy);
  const Diagnostics a = diagnostics(w, wavy.model, wavy.grid);
  CHECK(std::abs(a.energy - a.energy_from_temperatures) <= 1e-12 * a.energy);
  for (std::vector<double>* f : {&w.rho1, &w.rho2, &w.v1, &w.v2, &w.s1, &w.s2}) {
    std::rotate(f->begin(), f->begin() + 7, f->end());
  }
  const Diagnostics b = diagnostics(w, wavy.model, wavy.grid);
  CHECK(b.mass1 == doctest::Approx(a.mass1).epsilon(1e-14));
  CHECK(b.momentum == doctest::Approx(a.momentum).epsilon(1e-12));
  CHECK(b.energy == doctest::Approx(a.energy).epsilon(1e-14));
  CHECK(b.entropy == doctest::Approx(a.entropy).epsilon(1e-14));
}

TEST_CASE("Galilean shift") {
  Scenario rest = acoustic(64, 0.01);
  rest.t_end = 64 * rest.dt;
  const double V = rest.grid.dx() / rest.t_end;  // moves one cell over the run
  Scenario moving = rest;
  moving.initial.v1.background += V;
  moving.initial.v2.background += V;
  moving.dt = rest.dt;
  const Trajectory a = integrate(rest);
  const Trajectory b = integrate(moving);
  REQUIRE(a.completed);
  REQUIRE(b.completed);
  const MixtureState& sa = a.last_valid;
  const MixtureState& sb = b.last_valid;
  double worst = 0.0;
  for (std::size_t i = 0; i < 64; ++i) {
    const std::size_t j = (i + 1) % 64;
    worst = std::max({worst, std::abs(sb.rho1[j] - sa.rho1[i]), std::abs(sb.rho2[j] - sa.rho2[i]),
                      std::abs(sb.s1[j] - sa.s1[i]), std::abs(sb.s2[j] - sa.s2[i])});
  }
  CHECK(worst <= 0.05 * 0.01);
  const double mass = a.frames.back().diag.mass1 + a.frames.back().diag.mass2;
  CHECK(b.frames.back().diag.momentum ==
        doctest::Approx(a.frames.back().diag.momentum + V * mass).epsilon(1e-3));
}

TEST_CASE("slaving enforces the constitutive temperature gap") {
  Scenario sc = acoustic(32, 0.02);
  sc.closure.mode = ClosureMode::relaxation_m;
  sc.closure.M = 1e-3;
  sc.scheme.slaving = true;
  sc.t_end = 5 * sc.dt;
  const Trajectory tr = integrate(sc);
  REQUIRE(tr.completed);
  const MixtureState& s = tr.last_valid;
  const Diagnostics d = diagnostics(s, sc.model, sc.grid);
  for (std::size_t i = 0; i < 32; ++i) {
    const double expected = theta_constitutive(sc.model, s.rho1[i], s.rho2[i], sc.closure.M, d.divv[i]);
    CHECK(d.theta[i] == doctest::Approx(expected).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("a stiff run stops cleanly with the last valid state") {
  Scenario sc = acoustic(32, 0.01, 1e3);
  sc.initial.T2 = sc.initial.T1;  // equal temperatures: regularized sources
  sc.t_end = 100 * sc.dt;
  const Trajectory tr = integrate(sc);
  CHECK_FALSE(tr.completed);
  CHECK_FALSE(tr.error.empty());
  CHECK(tr.regularized_total > 0);
  CHECK(tr.regularized.front().cell < 32);
  CHECK(tr.steps_taken < 100);
  CHECK_NOTHROW(tr.last_valid.validate(sc.grid));
  CHECK_NOTHROW(diagnostics(tr.last_valid, sc.model, sc.grid));
}
