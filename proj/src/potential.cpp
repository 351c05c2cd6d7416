#include "twotemp/potential.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace twotemp {

namespace {

constexpr double kCheckTolerance = 1e-6;

double fd_step(double x) { return 1e-4 * std::max(1.0, std::abs(x)); }

// Largest |fd - analytic| / max(|analytic|...) over gradient and Hessian entries.
double check_part(const ExtendedPotential::Part& part, const PotentialArgs& at) {
  const SecondOrderEval base = part(at);
  double grad_scale = 0.0;
  double hess_scale = 0.0;
  for (int j = 0; j < 4; ++j) {
    grad_scale = std::max(grad_scale, std::abs(base.grad[j]));
    for (int k = 0; k < 4; ++k) hess_scale = std::max(hess_scale, std::abs(base.hess[j][k]));
  }
  grad_scale = std::max(grad_scale, 1e-300);
  hess_scale = std::max(hess_scale, 1e-300);

  double worst = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double h = fd_step(at[j]);
    PotentialArgs plus = at, minus = at;
    plus[j] += h;
    minus[j] -= h;
    const SecondOrderEval fp = part(plus);
    const SecondOrderEval fm = part(minus);
    const double dvalue = (fp.value - fm.value) / (2.0 * h);
    worst = std::max(worst, std::abs(dvalue - base.grad[j]) / grad_scale);
    for (int k = 0; k < 4; ++k) {
      const double dgrad = (fp.grad[k] - fm.grad[k]) / (2.0 * h);
      worst = std::max(worst, std::abs(dgrad - base.hess[k][j]) / hess_scale);
      worst = std::max(worst, std::abs(base.hess[j][k] - base.hess[k][j]) / hess_scale);
    }
  }
  return worst;
}

}  // namespace

ExtendedPotential::ExtendedPotential(std::string name, Part energy, Part b,
                                     std::vector<PotentialArgs> probes)
    : name_(std::move(name)), energy_(std::move(energy)), b_(std::move(b)) {
  for (const PotentialArgs& at : probes) {
    if (b_(at).value < 0.0) {
      throw PotentialCheckFailed(name_ + ": coefficient b is negative at a probe point");
    }
    self_check_error_ = std::max(
        {self_check_error_, check_part(energy_, at), check_part(b_, at)});
  }
  if (self_check_error_ > kCheckTolerance) {
    throw PotentialCheckFailed(name_ + ": analytic partials disagree with finite differences (" +
                               std::to_string(self_check_error_) + ")");
  }
}

EtaParts<double> ExtendedPotential::evaluate(const PotentialArgs& a, double u) const {
  const SecondOrderEval e = energy_(a);
  const SecondOrderEval b = b_(a);
  const double u2 = u * u;
  EtaParts<double> out;
  out.eta = e.value - b.value * u2;
  for (int alpha = 0; alpha < 2; ++alpha) {
    out.d_rho[alpha] = e.grad[alpha] - b.grad[alpha] * u2;
    out.d_s[alpha] = e.grad[2 + alpha] - b.grad[2 + alpha] * u2;
  }
  out.d_u = -2.0 * b.value * u;
  return out;
}

EtaParts<Jet> ExtendedPotential::evaluate(const std::array<Jet, 4>& a, Jet u) const {
  const PotentialArgs at{a[0].v, a[1].v, a[2].v, a[3].v};
  const SecondOrderEval e = energy_(at);
  const SecondOrderEval b = b_(at);
  const double u2 = u.v * u.v;

  // d/dt and d/dx of a function of (args, u) with known partials.
  auto lift = [&](double value, const std::array<double, 4>& d_args, double d_u) {
    Jet out(value);
    for (int k = 0; k < 4; ++k) {
      out.t += d_args[k] * a[k].t;
      out.x += d_args[k] * a[k].x;
    }
    out.t += d_u * u.t;
    out.x += d_u * u.x;
    return out;
  };

  EtaParts<Jet> out;
  {
    std::array<double, 4> d{};
    for (int k = 0; k < 4; ++k) d[k] = e.grad[k] - b.grad[k] * u2;
    out.eta = lift(e.value - b.value * u2, d, -2.0 * b.value * u.v);
  }
  for (int j = 0; j < 4; ++j) {
    std::array<double, 4> d{};
    for (int k = 0; k < 4; ++k) d[k] = e.hess[j][k] - b.hess[j][k] * u2;
    Jet partial = lift(e.grad[j] - b.grad[j] * u2, d, -2.0 * b.grad[j] * u.v);
    if (j < 2) {
      out.d_rho[j] = partial;
    } else {
      out.d_s[j - 2] = partial;
    }
  }
  {
    std::array<double, 4> d{};
    for (int k = 0; k < 4; ++k) d[k] = -2.0 * b.grad[k] * u.v;
    out.d_u = lift(-2.0 * b.value * u.v, d, -2.0 * b.value);
  }
  return out;
}

namespace {

std::vector<PotentialArgs> default_probes() {
  return {{1.0, 2.0, 0.3, -0.2}, {0.7, 1.3, -0.5, 0.4}, {2.1, 0.9, 0.1, 0.6}};
}

ExtendedPotential::Part constant_b(double b0) {
  return [b0](const PotentialArgs&) {
    SecondOrderEval r;
    r.value = b0;
    return r;
  };
}

SecondOrderEval perfect_gas_energy(const GasPairModel& model, const PotentialArgs& a) {
  SecondOrderEval r;
  for (int alpha = 0; alpha < 2; ++alpha) {
    const Component c = alpha == 0 ? Component::first : Component::second;
    const GasParams& g = model[c];
    const double rho = a[alpha];
    const double T = temperature_from_entropy(model, c, rho, a[2 + alpha]);
    const int ir = alpha;
    const int is = 2 + alpha;
    r.value += rho * g.cv * T;
    r.grad[ir] = (g.cv + g.k) * T;
    r.grad[is] = rho * T;
    r.hess[ir][ir] = (g.cv + g.k) * g.k * T / (g.cv * rho);
    r.hess[ir][is] = r.hess[is][ir] = (g.cv + g.k) * T / g.cv;
    r.hess[is][is] = rho * T / g.cv;
  }
  return r;
}

}  // namespace

ExtendedPotential quadratic_potential(const QuadraticEnergy& q, double b0) {
  auto energy = [q](const PotentialArgs& a) {
    const double r1 = a[0], r2 = a[1], s1 = a[2], s2 = a[3];
    SecondOrderEval r;
    r.value = 0.5 * q.a1 * r1 * r1 + 0.5 * q.a2 * r2 * r2 + q.a12 * r1 * r2 + q.c1 * r1 * s1 +
              q.c2 * r2 * s2;
    r.grad = {q.a1 * r1 + q.a12 * r2 + q.c1 * s1, q.a2 * r2 + q.a12 * r1 + q.c2 * s2, q.c1 * r1,
              q.c2 * r2};
    r.hess[0][0] = q.a1;
    r.hess[1][1] = q.a2;
    r.hess[0][1] = r.hess[1][0] = q.a12;
    r.hess[0][2] = r.hess[2][0] = q.c1;
    r.hess[1][3] = r.hess[3][1] = q.c2;
    return r;
  };
  return ExtendedPotential("quadratic", energy, constant_b(b0), default_probes());
}

ExtendedPotential perfect_gas_potential(const GasPairModel& model, double b0) {
  model.validate();
  auto energy = [model](const PotentialArgs& a) { return perfect_gas_energy(model, a); };
  return ExtendedPotential("perfect-gas", energy, constant_b(b0), default_probes());
}

ExtendedPotential coupled_potential(const GasPairModel& model, double g, double b0) {
  model.validate();
  auto energy = [model, g](const PotentialArgs& a) {
    SecondOrderEval r = perfect_gas_energy(model, a);
    const double r1 = a[0], r2 = a[1];
    const double w = a[2] - a[3];
    r.value += g * r1 * r2 * w * w;
    r.grad[0] += g * r2 * w * w;
    r.grad[1] += g * r1 * w * w;
    r.grad[2] += 2.0 * g * r1 * r2 * w;
    r.grad[3] -= 2.0 * g * r1 * r2 * w;
    const double add[4][4] = {
        {0.0, g * w * w, 2.0 * g * r2 * w, -2.0 * g * r2 * w},
        {g * w * w, 0.0, 2.0 * g * r1 * w, -2.0 * g * r1 * w},
        {2.0 * g * r2 * w, 2.0 * g * r1 * w, 2.0 * g * r1 * r2, -2.0 * g * r1 * r2},
        {-2.0 * g * r2 * w, -2.0 * g * r1 * w, -2.0 * g * r1 * r2, 2.0 * g * r1 * r2}};
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) r.hess[j][k] += add[j][k];
    }
    return r;
  };
  auto b = [b0](const PotentialArgs& a) {
    const double r1 = a[0], r2 = a[1], rho = r1 + r2;
    SecondOrderEval r;
    r.value = b0 * r1 * r2 / rho;
    r.grad[0] = b0 * r2 * r2 / (rho * rho);
    r.grad[1] = b0 * r1 * r1 / (rho * rho);
    const double rho3 = rho * rho * rho;
    r.hess[0][0] = -2.0 * b0 * r2 * r2 / rho3;
    r.hess[1][1] = -2.0 * b0 * r1 * r1 / rho3;
    r.hess[0][1] = r.hess[1][0] = 2.0 * b0 * r1 * r2 / rho3;
    return r;
  };
  return ExtendedPotential("coupled", energy, b, default_probes());
}

}  // namespace twotemp
