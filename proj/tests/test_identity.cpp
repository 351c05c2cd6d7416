#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "twotemp/identity.hpp"

using namespace twotemp;

namespace {

ExtendedPotential quadratic(double b0) { return quadratic_potential(QuadraticEnergy{}, b0); }

GasPairModel gas_model() {
  GasPairModel m;
  m.gas = {GasParams{1.0, 1.5}, GasParams{0.5, 2.5}};
  return m;
}

std::vector<double> fd_norms(const ManufacturedFields& f, const ExtendedPotential& pot,
                             double h0) {
  const SampleWindow w{0.0, 1.0, 4, 0.0, 1.0, 8};
  std::vector<double> out;
  for (int k = 0; k < 3; ++k) {
    const double h = h0 / std::pow(2.0, k);
    out.push_back(gibbs_residual(f, pot, w, IdentityMode::finite_difference(h, h)).residual_max);
  }
  return out;
}

}  // namespace

TEST_CASE("lagrangian quantities") {
  const ExtendedPotential pot = quadratic(1.0);
  SUBCASE("worked example") {
    const LagrangianQuantities q = lagrangian_quantities(pot, {1.0, 2.0, 1.0, 1.0, 0.1, 0.4});
    // eta = 0.5 (1 + 4) + 1 + 2 - 0.09
    CHECK(q.eta == doctest::Approx(5.41).epsilon(1e-14));
    CHECK(q.i == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(q.k1 == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(q.k2 == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(q.T1 == doctest::Approx(1.0));
    CHECK(q.T2 == doctest::Approx(1.0));
    CHECK(q.f == doctest::Approx(5.41 + 0.6 * 0.3).epsilon(1e-14));
    // R_a = v_a^2 / 2 - (rho_a + s_a)
    CHECK(q.R1 == doctest::Approx(-1.995).epsilon(1e-14));
    CHECK(q.R2 == doctest::Approx(-2.92).epsilon(1e-14));
    // Total momentum is unchanged by the u-dependence.
    CHECK(1.0 * q.k1 + 2.0 * q.k2 == doctest::Approx(1.0 * 0.1 + 2.0 * 0.4));
  }
  SUBCASE("no u-dependence") {
    const LagrangianQuantities q = lagrangian_quantities(quadratic(0.0), {1.0, 2.0, 1.0, 1.0, 0.1, 0.4});
    CHECK(q.k1 == doctest::Approx(0.1));
    CHECK(q.k2 == doctest::Approx(0.4));
    CHECK(q.f == doctest::Approx(q.eta));
  }
  SUBCASE("zero relative velocity") {
    const LagrangianQuantities q = lagrangian_quantities(pot, {1.3, 0.7, 0.2, -0.4, 0.25, 0.25});
    CHECK(q.i == 0.0);
    CHECK(q.f == q.eta);
    CHECK(q.k1 == 0.25);
    CHECK(q.k2 == 0.25);
  }
  CHECK_THROWS_AS(lagrangian_quantities(pot, {0.0, 2.0, 1.0, 1.0, 0.1, 0.4}), std::domain_error);
}

TEST_CASE("potential self-check") {
  CHECK(quadratic(1.0).self_check_error() < 1e-6);
  CHECK(perfect_gas_potential(gas_model(), 0.5).self_check_error() < 1e-6);
  CHECK(coupled_potential(gas_model(), 0.3, 0.5).self_check_error() < 1e-6);

  auto energy = [](const PotentialArgs& a) {
    SecondOrderEval r;
    r.value = a[0] * a[0] * a[2];
    r.grad = {2.0 * a[0] * a[2], 0.0, a[0] * a[0], 0.0};
    r.hess[0][0] = 2.0 * a[2];
    r.hess[0][2] = r.hess[2][0] = 3.0 * a[0];  // should be 2 a0
    return r;
  };
  auto zero_b = [](const PotentialArgs&) { return SecondOrderEval{}; };
  CHECK_THROWS_AS(ExtendedPotential("bad", energy, zero_b, {{1.0, 1.0, 1.0, 1.0}}),
                  PotentialCheckFailed);
  auto negative_b = [](const PotentialArgs&) {
    SecondOrderEval r;
    r.value = -1.0;
    return r;
  };
  auto good_energy = [](const PotentialArgs&) { return SecondOrderEval{}; };
  CHECK_THROWS_AS(ExtendedPotential("neg", good_energy, negative_b, {{1.0, 1.0, 1.0, 1.0}}),
                  PotentialCheckFailed);
}

TEST_CASE("constant fields give a zero residual") {
  const IdentityReport r =
      gibbs_residual(constant_suite(), quadratic(1.0), SampleWindow{}, IdentityMode::analytic());
  CHECK(r.residual_max == 0.0);
  CHECK(r.term_magnitude == 0.0);
  CHECK(r.points == 8 * 16);
}

TEST_CASE("analytic residual on sinusoidal fields") {
  const SampleWindow w{};
  const auto check_suite = [&](const ManufacturedFields& f, const ExtendedPotential& pot) {
    const IdentityReport r = gibbs_residual(f, pot, w, IdentityMode::analytic());
    INFO(f.name, " / ", pot.name());
    CHECK(r.term_magnitude > 1e-2);
    CHECK(r.residual_max <= 1e-10 * r.term_magnitude);
    CHECK(r.residual_l2 <= r.residual_max);
    CHECK(r.decomposition_gap <= 1e-10 * r.term_magnitude);
    CHECK(r.legendre_residual <= 1e-10 * r.term_magnitude);
    CHECK(r.heat_split_residual <= 1e-10 * r.term_magnitude);
  };
  check_suite(sinusoidal_suite(), quadratic(1.0));
  check_suite(sinusoidal_suite_without_forces(), quadratic(0.0));
  check_suite(sinusoidal_suite(), perfect_gas_potential(gas_model(), 0.7));
  check_suite(sinusoidal_suite(), coupled_potential(gas_model(), 0.4, 0.9));
}

TEST_CASE("flipping the T s sign in the mass term breaks the identity") {
  const IdentityReport r = gibbs_residual(sinusoidal_suite(), quadratic(1.0), SampleWindow{},
                                          IdentityMode::analytic());
  CHECK(r.flipped_sign_residual_max > 1e-3 * r.term_magnitude);
}

TEST_CASE("sub_identity identities vanish individually") {
  const SampleWindow w{};
  const ExtendedPotential pot = quadratic(1.0);
  const IdentityReport r = gibbs_residual(sinusoidal_suite(), pot, w, IdentityMode::analytic());
  for (int j = 0; j < 5; ++j) {
    INFO("identity ", static_cast<char>('a' + j));
    CHECK(r.term_scale[j] > 0.0);
    CHECK(r.term_residual[j] <= 1e-10 * r.term_scale[j]);
    CHECK(term_identity_residual(static_cast<char>('a' + j), sinusoidal_suite(), pot, w,
                                 IdentityMode::analytic()) == r.term_residual[j]);
  }
  // The eta reading of identity e leaves a residual of order its own scale.
  CHECK(r.term_e_eta_residual > 1e-3 * r.term_scale[4]);
  CHECK(term_identity_residual('e', sinusoidal_suite(), pot, w, IdentityMode::analytic(),
                               ETermReading::potential) == r.term_e_eta_residual);
  // Without forces identity a is trivial.
  CHECK(term_identity_residual('a', sinusoidal_suite_without_forces(), pot, w,
                               IdentityMode::analytic()) == 0.0);
  CHECK_THROWS_AS(term_identity_residual('f', sinusoidal_suite(), pot, w, IdentityMode::analytic()),
                  std::invalid_argument);
}

TEST_CASE("finite-difference residual converges at second order") {
  for (const ExtendedPotential& pot : {quadratic(1.0), coupled_potential(gas_model(), 0.4, 0.9)}) {
    INFO(pot.name());
    const std::vector<double> norms = fd_norms(sinusoidal_suite(), pot, 0.02);
    const auto order = convergence_order(norms);
    REQUIRE(order.has_value());
    CHECK(*order == doctest::Approx(2.0).epsilon(0.1));
    CHECK(norms[0] / norms[1] == doctest::Approx(4.0).epsilon(0.2));
  }
}

TEST_CASE("convergence order") {
  const double quarter[] = {1.0, 0.25, 0.0625};
  CHECK(*convergence_order(quarter) == doctest::Approx(2.0).epsilon(1e-12));
  const double half[] = {1.0, 0.5, 0.25};
  CHECK(*convergence_order(half) == doctest::Approx(1.0).epsilon(1e-12));
  const double exact[] = {1.0, 0.0, 0.0};
  CHECK_FALSE(convergence_order(exact).has_value());
  const double negative[] = {1.0, -0.5};
  CHECK_THROWS_AS(convergence_order(negative), std::invalid_argument);
  const double single[] = {1.0};
  CHECK_THROWS_AS(convergence_order(single), std::invalid_argument);
}

TEST_CASE("balanced motions satisfy the energy equation") {
  const ExtendedPotential pot = coupled_potential(gas_model(), 0.4, 0.9);
  const ManufacturedFields f = sinusoidal_suite();
  for (double x : {0.1, 0.37, 0.8}) {
    const PointJets raw = sample_point(f, 0.3, x);
    const PointTerms before = gibbs_terms(raw, pot);
    REQUIRE(std::abs(before.E) > 1e-3);
    const PointTerms after = gibbs_terms(balance_time_derivatives(raw, pot), pot);
    const double scale = before.term_magnitude;
    CHECK(std::abs(after.B[0]) <= 1e-12 * scale);
    CHECK(std::abs(after.B[1]) <= 1e-12 * scale);
    CHECK(std::abs(after.M[0]) <= 1e-12 * scale);
    CHECK(std::abs(after.M[1]) <= 1e-12 * scale);
    CHECK(std::abs(after.S) <= 1e-12 * scale);
    CHECK(std::abs(after.E) <= 1e-10 * scale);
  }
}

TEST_CASE("simplified energy form without u-dependence and forces") {
  const ExtendedPotential pot = perfect_gas_potential(gas_model(), 0.0);
  const ManufacturedFields f = sinusoidal_suite_without_forces();
  for (double t : {0.0, 0.45}) {
    for (double x : {0.05, 0.5, 0.93}) {
      const PointJets p = sample_point(f, t, x);
      const PointTerms terms = gibbs_terms(p, pot);
      CHECK(simplified_energy_expression(p, pot) ==
            doctest::Approx(terms.E).epsilon(1e-11).scale(terms.term_magnitude));
    }
  }
}

TEST_CASE("nonpositive density in the window") {
  ManufacturedFields f = sinusoidal_suite();
  f.rho[0] = harmonic_field(0.1, {{0.3, 1.0, 1.0, 0.0}});
  CHECK_THROWS_AS(gibbs_residual(f, quadratic(1.0), SampleWindow{}, IdentityMode::analytic()),
                  std::domain_error);
}
