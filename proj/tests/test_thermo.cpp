#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "twotemp/thermo.hpp"

using namespace twotemp;

namespace {

GasPairModel canonical_model() {
  GasPairModel m;
  m.gas = {GasParams{1.0, 1.5}, GasParams{0.5, 2.5}};
  return m;
}

GasPairModel random_model(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> k(0.2, 3.0), cv(0.5, 4.0), ref(0.5, 2.0);
  GasPairModel m;
  m.gas = {GasParams{k(rng), cv(rng)}, GasParams{k(rng), cv(rng)}};
  m.T_ref = 300.0 * ref(rng);
  m.rho_ref = ref(rng);
  m.s_ref = ref(rng) - 1.0;
  return m;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("temperature at the reference state") {
  GasPairModel m = canonical_model();
  m.T_ref = 280.0;
  m.rho_ref = 1.7;
  m.s_ref = 0.4;
  CHECK(temperature_from_entropy(m, Component::first, 1.7, 0.4) == doctest::Approx(280.0));
  CHECK(entropy_from_temperature(m, Component::second, 1.7, 280.0) == doctest::Approx(0.4));
}

TEST_CASE("hand-inverted closed form") {
  const GasPairModel m = canonical_model();
  CHECK(temperature_from_entropy(m, Component::first, 1.0, 1.5 * std::log(300.0)) ==
        doctest::Approx(300.0).epsilon(1e-13));
}

TEST_CASE("doubling temperature raises entropy by cv ln 2") {
  const GasPairModel m = canonical_model();
  const double s1 = entropy_from_temperature(m, Component::second, 0.8, 250.0);
  const double s2 = entropy_from_temperature(m, Component::second, 0.8, 500.0);
  CHECK(s2 - s1 == doctest::Approx(2.5 * std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("entropy and temperature maps are inverse") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rho(0.05, 20.0), T(10.0, 3000.0);
  for (int trial = 0; trial < 500; ++trial) {
    const GasPairModel m = random_model(rng);
    const Component c = trial % 2 ? Component::first : Component::second;
    const double r = rho(rng), temp = T(rng);
    const double back = temperature_from_entropy(m, c, r, entropy_from_temperature(m, c, r, temp));
    CHECK(rel(back, temp) < 1e-12);
  }
}

TEST_CASE("nonpositive inputs are rejected") {
  const GasPairModel m = canonical_model();
  CHECK_THROWS_AS(temperature_from_entropy(m, Component::first, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(entropy_from_temperature(m, Component::first, 1.0, -5.0), std::domain_error);
  CHECK_THROWS_AS(thermo_eval(m, 1.0, -1.0, 0.0, 0.0), std::domain_error);
  GasPairModel bad = m;
  bad.gas[1].cv = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("uniform reference state") {
  GasPairModel m = canonical_model();
  m.T_ref = 290.0;
  const ThermoPoint tp = thermo_eval(m, 1.0, 1.0, m.s_ref, m.s_ref);
  CHECK(tp.T1 == doctest::Approx(290.0));
  CHECK(tp.T2 == doctest::Approx(290.0));
  CHECK(tp.p == doctest::Approx((1.0 + 0.5) * 290.0));
}

TEST_CASE("canonical two-temperature point") {
  const GasPairModel m = canonical_model();
  const double s1 = entropy_from_temperature(m, Component::first, 1.0, 300.0);
  const double s2 = entropy_from_temperature(m, Component::second, 2.0, 320.0);
  const ThermoPoint tp = thermo_eval(m, 1.0, 2.0, s1, s2);
  CHECK(tp.T1 == doctest::Approx(300.0).epsilon(1e-13));
  CHECK(tp.T2 == doctest::Approx(320.0).epsilon(1e-13));
  CHECK(tp.p == doctest::Approx(620.0).epsilon(1e-13));
  CHECK(tp.h1 == doctest::Approx(750.0).epsilon(1e-13));
  CHECK(tp.h2 == doctest::Approx(960.0).epsilon(1e-13));
  CHECK(tp.e == doctest::Approx(1.5 * 300.0 + 2.0 * 2.5 * 320.0).epsilon(1e-13));
  CHECK(tp.mu1 == doctest::Approx(750.0 - 300.0 * s1).epsilon(1e-13));
  // Stress-definition pressures differ componentwise but not in the sum.
  CHECK(std::abs(tp.p_stress1 - tp.p_partial1) > 1.0);
  CHECK(tp.p_stress1 + tp.p_stress2 == doctest::Approx(620.0).epsilon(1e-12));
}

TEST_CASE("finite-difference consistency on random states") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> rho(0.1, 10.0), T(50.0, 2000.0);
  for (int trial = 0; trial < 300; ++trial) {
    const GasPairModel m = random_model(rng);
    const double r1 = rho(rng), r2 = rho(rng);
    const double s1 = entropy_from_temperature(m, Component::first, r1, T(rng));
    const double s2 = entropy_from_temperature(m, Component::second, r2, T(rng));
    const ThermoPoint tp = thermo_eval(m, r1, r2, s1, s2);

    auto e = [&](double a, double b, double c, double d) { return volume_energy(m, a, b, c, d); };
    const double hs1 = 1e-6 * std::max(1.0, std::abs(s1));
    const double hs2 = 1e-6 * std::max(1.0, std::abs(s2));
    // rho de/ds_a at fixed densities is rho_a T_a
    CHECK(rel((e(r1, r2, s1 + hs1, s2) - e(r1, r2, s1 - hs1, s2)) / (2 * hs1), r1 * tp.T1) < 1e-6);
    CHECK(rel((e(r1, r2, s1, s2 + hs2) - e(r1, r2, s1, s2 - hs2)) / (2 * hs2), r2 * tp.T2) < 1e-6);
    const double hr1 = 1e-6 * r1, hr2 = 1e-6 * r2;
    CHECK(rel((e(r1 + hr1, r2, s1, s2) - e(r1 - hr1, r2, s1, s2)) / (2 * hr1), tp.h1) < 1e-6);
    CHECK(rel((e(r1, r2 + hr2, s1, s2) - e(r1, r2 - hr2, s1, s2)) / (2 * hr2), tp.h2) < 1e-6);
    CHECK(rel(tp.p_stress1 + tp.p_stress2, tp.p_partial1 + tp.p_partial2) < 1e-10);
  }
}

TEST_CASE("Gibbs relation at equal temperatures") {
  // T ds = d eps - (p0 / rho^2) d rho + (mu2 - mu1) dc, with eps = e / rho and
  // s = (rho1 s1 + rho2 s2) / rho as functions of (rho, c, T).
  const GasPairModel m = canonical_model();
  auto at = [&](double rho, double c, double T) {
    const double r1 = c * rho, r2 = (1 - c) * rho;
    const double s1 = entropy_from_temperature(m, Component::first, r1, T);
    const double s2 = entropy_from_temperature(m, Component::second, r2, T);
    struct Out { double eps, s; ThermoPoint tp; };
    return Out{volume_energy(m, r1, r2, s1, s2) / rho, (r1 * s1 + r2 * s2) / rho,
               thermo_eval(m, r1, r2, s1, s2)};
  };
  const double rho = 3.0, c = 0.35, T = 310.0;
  const auto base = at(rho, c, T);
  const double h = 1e-6;
  for (int dir = 0; dir < 3; ++dir) {
    const double dr = dir == 0 ? h * rho : 0.0;
    const double dc = dir == 1 ? h : 0.0;
    const double dT = dir == 2 ? h * T : 0.0;
    const auto plus = at(rho + dr, c + dc, T + dT);
    const auto minus = at(rho - dr, c - dc, T - dT);
    const double lhs = T * (plus.s - minus.s);
    const double rhs = (plus.eps - minus.eps) - base.tp.p / (rho * rho) * (2 * dr) +
                       (base.tp.mu2 - base.tp.mu1) * (2 * dc);
    CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(std::abs(lhs), base.eps * 2 * h));
  }
}
