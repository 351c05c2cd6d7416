#include "twotemp/identity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace twotemp {

SpaceTimeField harmonic_field(double mean, std::vector<Harmonic> modes) {
  return [mean, modes = std::move(modes)](double t, double x) {
    Jet out(mean);
    for (const Harmonic& m : modes) {
      const double kx = 2.0 * std::numbers::pi * m.wavenumber;
      const double arg = kx * x - m.frequency * t + m.phase;
      const double c = std::cos(arg);
      out.v += m.amplitude * std::sin(arg);
      out.t -= m.amplitude * m.frequency * c;
      out.x += m.amplitude * kx * c;
    }
    return out;
  };
}

ManufacturedFields constant_suite() {
  ManufacturedFields f;
  f.name = "constant";
  f.rho = {harmonic_field(1.2, {}), harmonic_field(2.0, {})};
  f.v = {harmonic_field(0.1, {}), harmonic_field(0.4, {})};
  f.s = {harmonic_field(0.3, {}), harmonic_field(-0.2, {})};
  f.omega = {harmonic_field(0.0, {}), harmonic_field(0.0, {})};
  return f;
}

ManufacturedFields sinusoidal_suite() {
  ManufacturedFields f;
  f.name = "sinusoidal";
  f.rho = {harmonic_field(2.0, {{0.3, 1.0, 1.0, 0.0}}),
           harmonic_field(2.0, {{0.25, 2.0, 0.7, 0.4}, {0.05, 1.0, -1.3, 1.1}})};
  f.v = {harmonic_field(0.1, {{0.2, 1.0, 0.5, 0.3}}),
         harmonic_field(0.3, {{0.15, 3.0, 1.2, -0.7}, {0.1, 1.0, 0.0, 0.2}})};
  f.s = {harmonic_field(0.2, {{0.1, 2.0, 0.9, 1.3}}),
         harmonic_field(-0.1, {{0.12, 1.0, -0.6, 0.5}})};
  f.omega = {harmonic_field(0.0, {{0.5, 1.0, 0.8, 0.2}}),
             harmonic_field(0.0, {{0.3, 2.0, -0.4, 0.9}})};
  return f;
}

ManufacturedFields sinusoidal_suite_without_forces() {
  ManufacturedFields f = sinusoidal_suite();
  f.name = "sinusoidal-no-forces";
  f.omega = {harmonic_field(0.0, {}), harmonic_field(0.0, {})};
  return f;
}

namespace {

template <class S>
struct Composite {
  std::array<S, 2> rho{}, v{}, s{}, omega{};
  S u{};
  EtaParts<S> eta{};
  std::array<S, 2> R{}, k{}, T{};
  std::array<S, 2> w{};  // (-1)^a i / rho_a, so that k_a = v_a + w_a
  S i{};
  S f{};
};

template <class S>
Composite<S> build_composite(const std::array<S, 2>& rho, const std::array<S, 2>& v,
                             const std::array<S, 2>& s, const std::array<S, 2>& omega,
                             const ExtendedPotential& potential) {
  if (!(value_of(rho[0]) > 0.0) || !(value_of(rho[1]) > 0.0)) {
    throw std::domain_error("energy identity: nonpositive density");
  }
  Composite<S> c;
  c.rho = rho;
  c.v = v;
  c.s = s;
  c.omega = omega;
  c.u = v[1] - v[0];
  c.eta = potential.evaluate(std::array<S, 4>{rho[0], rho[1], s[0], s[1]}, c.u);
  c.i = -c.eta.d_u;
  c.f = c.eta.eta - c.eta.d_u * c.u;
  for (int a = 0; a < 2; ++a) {
    const double sign = a == 0 ? -1.0 : 1.0;  // (-1)^alpha, alpha = a + 1
    c.R[a] = 0.5 * v[a] * v[a] - c.eta.d_rho[a] - omega[a];
    c.k[a] = v[a] - (sign / rho[a]) * c.eta.d_u;
    c.T[a] = c.eta.d_s[a] / rho[a];
    c.w[a] = sign * c.i / rho[a];
  }
  return c;
}

Composite<Jet> build_composite(const PointJets& p, const ExtendedPotential& potential) {
  return build_composite<Jet>(p.rho, p.v, p.s, p.omega, potential);
}

Composite<double> build_values(const ManufacturedFields& f, double t, double x,
                               const ExtendedPotential& potential) {
  auto at = [&](const std::array<SpaceTimeField, 2>& g) {
    return std::array<double, 2>{g[0](t, x).v, g[1](t, x).v};
  };
  return build_composite<double>(at(f.rho), at(f.v), at(f.s), at(f.omega), potential);
}

Composite<double> values_of(const Composite<Jet>& c, const ExtendedPotential& potential) {
  auto val = [](const std::array<Jet, 2>& a) { return std::array<double, 2>{a[0].v, a[1].v}; };
  return build_composite<double>(val(c.rho), val(c.v), val(c.s), val(c.omega), potential);
}

// Differentiates a composite expression by the chain rule.
struct AnalyticDerivative {
  const Composite<Jet>& c;
  template <class G>
  Jet operator()(G&& g) const {
    return g(c);
  }
};

// Differentiates a composite expression by central differences of its values.
struct StencilDerivative {
  const Composite<double>& center;
  const Composite<double>& t_plus;
  const Composite<double>& t_minus;
  const Composite<double>& x_plus;
  const Composite<double>& x_minus;
  double dt;
  double h;
  template <class G>
  Jet operator()(G&& g) const {
    return {g(center), (g(t_plus) - g(t_minus)) / (2.0 * dt), (g(x_plus) - g(x_minus)) / (2.0 * h)};
  }
};

struct TermSum {
  double value = 0.0;
  double scale = 0.0;
  void add(double term) {
    value += term;
    scale = std::max(scale, std::abs(term));
  }
};

template <class Derivative>
PointTerms assemble(const Derivative& D, const Composite<double>& c) {
  PointTerms out;
  TermSum E;
  std::array<TermSum, 5> app;
  TermSum e_eta, legendre, heat;

  const Jet f = D([](const auto& q) { return q.f; });
  const Jet i = D([](const auto& q) { return q.i; });
  E.add(f.t);
  legendre.add(f.t);
  legendre.add(-i.t * c.u);

  for (int a = 0; a < 2; ++a) {
    const double rho = c.rho[a], v = c.v[a], s = c.s[a], om = c.omega[a];
    const double T = c.T[a], k = c.k[a], R = c.R[a], w = c.w[a];

    const Jet d_rho = D([a](const auto& q) { return q.rho[a]; });
    const Jet d_v = D([a](const auto& q) { return q.v[a]; });
    const Jet d_s = D([a](const auto& q) { return q.s[a]; });
    const Jet d_om = D([a](const auto& q) { return q.omega[a]; });
    const Jet d_k = D([a](const auto& q) { return q.k[a]; });
    const Jet d_R = D([a](const auto& q) { return q.R[a]; });
    const Jet d_w = D([a](const auto& q) { return q.w[a]; });
    const Jet d_eta_rho = D([a](const auto& q) { return q.eta.d_rho[a]; });
    const double eta_rho = c.eta.d_rho[a];

    const double B = d_rho.t + D([a](const auto& q) { return q.rho[a] * q.v[a]; }).x;
    const double M = rho * (d_k.t + v * d_k.x) + rho * k * d_v.x - rho * d_R.x - rho * T * d_s.x;
    const double Q = (D([a](const auto& q) { return q.rho[a] * q.s[a]; }).t +
                      D([a](const auto& q) { return q.rho[a] * q.s[a] * q.v[a]; }).x) *
                     T;
    out.B[a] = B;
    out.M[a] = M;
    out.Q[a] = Q;
    out.S += Q;
    out.momentum_work += M * v;
    out.mass_work += (k * v - R - T * s) * B;
    out.flipped_sign_residual -= (k * v - R + T * s) * B;

    E.add(D([a](const auto& q) {
            return q.rho[a] * (0.5 * q.v[a] * q.v[a] + q.omega[a]);
          }).t);
    E.add(D([a](const auto& q) {
            return q.rho[a] * q.v[a] * (q.k[a] * q.v[a] - q.R[a]);
          }).x);
    E.add(-rho * d_om.t);

    // a. external potentials
    app[0].add(D([a](const auto& q) { return q.rho[a] * q.omega[a]; }).t);
    app[0].add(D([a](const auto& q) { return q.rho[a] * q.omega[a] * q.v[a]; }).x);
    app[0].add(-rho * d_om.x * v);
    app[0].add(-B * om);
    app[0].add(-rho * d_om.t);

    // b. velocities
    const double vv = v * v - 0.5 * v * v;
    app[1].add(D([a](const auto& q) { return 0.5 * q.rho[a] * q.v[a] * q.v[a]; }).t);
    app[1].add(D([a](const auto& q) {
                 return q.rho[a] * q.v[a] * (q.v[a] * q.v[a] - 0.5 * q.v[a] * q.v[a]);
               }).x);
    app[1].add(-B * vv);
    const double d_half_v2 = D([a](const auto& q) { return 0.5 * q.v[a] * q.v[a]; }).x;
    app[1].add(-(rho * (d_v.t + v * d_v.x) + rho * v * d_v.x - rho * d_half_v2) * v);

    // c. density partials of eta
    app[2].add(eta_rho * d_rho.t);
    app[2].add(D([a](const auto& q) { return q.eta.d_rho[a] * q.rho[a] * q.v[a]; }).x);
    app[2].add(-rho * d_eta_rho.x * v);
    app[2].add(-eta_rho * B);

    // d. entropies
    const double material_s = d_s.t + v * d_s.x;
    app[3].add(rho * T * d_s.t);
    app[3].add(rho * T * d_s.x * v);
    app[3].add(-rho * T * material_s);

    // e. relative-velocity momentum, component part
    const double e_terms[] = {
        D([a](const auto& q) { return q.w[a] * q.v[a] * q.rho[a] * q.v[a]; }).x,
        -(rho * (d_w.t + v * d_w.x) + rho * w * d_v.x) * v,
        -w * v * B};
    for (double term : e_terms) {
      app[4].add(term);
      e_eta.add(term);
    }

    legendre.add(-(eta_rho * d_rho.t + rho * T * d_s.t));
    heat.add(-(rho * T * material_s + T * s * B));
  }
  app[4].add(i.t * c.u);
  e_eta.add(i.t * c.eta.eta);
  heat.add(out.S);

  out.E = E.value;
  out.residual = out.E - out.momentum_work - out.mass_work - out.S;
  out.flipped_sign_residual += out.E - out.momentum_work - out.S;
  out.term_magnitude = std::max({std::abs(out.E), std::abs(out.momentum_work), std::abs(out.S),
                                 std::abs(out.mass_work)});
  for (int id = 0; id < 5; ++id) {
    out.sub_identity[id] = app[id].value;
    out.term_scale[id] = app[id].scale;
  }
  out.term_e_eta = e_eta.value;
  out.legendre = legendre.value;
  out.heat_split = heat.value;
  return out;
}

PointTerms terms_at(const ManufacturedFields& fields, const ExtendedPotential& potential,
                    double t, double x, const IdentityMode& mode) {
  if (mode.kind == IdentityMode::Kind::analytic) {
    const Composite<Jet> c = build_composite(sample_point(fields, t, x), potential);
    return assemble(AnalyticDerivative{c}, values_of(c, potential));
  }
  if (!(mode.h > 0.0) || !(mode.dt > 0.0)) {
    throw std::invalid_argument("energy identity: finite-difference steps must be positive");
  }
  const Composite<double> center = build_values(fields, t, x, potential);
  const Composite<double> tp = build_values(fields, t + mode.dt, x, potential);
  const Composite<double> tm = build_values(fields, t - mode.dt, x, potential);
  const Composite<double> xp = build_values(fields, t, x + mode.h, potential);
  const Composite<double> xm = build_values(fields, t, x - mode.h, potential);
  return assemble(StencilDerivative{center, tp, tm, xp, xm, mode.dt, mode.h}, center);
}

template <class Fn>
void for_each_point(const SampleWindow& w, Fn&& fn) {
  if (w.nt == 0 || w.nx == 0) throw std::invalid_argument("sample window: empty");
  for (std::size_t it = 0; it < w.nt; ++it) {
    const double t =
        w.nt == 1 ? w.t0 : w.t0 + (w.t1 - w.t0) * static_cast<double>(it) /
                                      static_cast<double>(w.nt - 1);
    for (std::size_t ix = 0; ix < w.nx; ++ix) {
      const double x =
          w.x0 + (w.x1 - w.x0) * (static_cast<double>(ix) + 0.5) / static_cast<double>(w.nx);
      fn(t, x);
    }
  }
}

}  // namespace

LagrangianQuantities lagrangian_quantities(const ExtendedPotential& potential,
                                           const LocalValues& p) {
  const Composite<double> c =
      build_composite<double>({p.rho1, p.rho2}, {p.v1, p.v2}, {p.s1, p.s2},
                              {p.omega1, p.omega2}, potential);
  return {c.R[0], c.R[1], c.k[0], c.k[1], c.T[0], c.T[1], c.i, c.f, c.eta.eta};
}

PointJets sample_point(const ManufacturedFields& f, double t, double x) {
  PointJets p;
  for (int a = 0; a < 2; ++a) {
    p.rho[a] = f.rho[a](t, x);
    p.v[a] = f.v[a](t, x);
    p.s[a] = f.s[a](t, x);
    p.omega[a] = f.omega[a](t, x);
  }
  return p;
}

PointTerms gibbs_terms(const PointJets& point, const ExtendedPotential& potential) {
  const Composite<Jet> c = build_composite(point, potential);
  return assemble(AnalyticDerivative{c}, values_of(c, potential));
}

double simplified_energy_expression(const PointJets& p, const ExtendedPotential& potential) {
  const Composite<Jet> c = build_composite(p, potential);
  const Jet rho = c.rho[0] + c.rho[1];
  const Jet v_mass = (c.rho[0] * c.v[0] + c.rho[1] * c.v[1]) / rho;
  const Jet e = c.eta.eta;
  Jet density = e;
  Jet flux = e * v_mass;
  for (int a = 0; a < 2; ++a) {
    const Jet kinetic = 0.5 * c.rho[a] * c.v[a] * c.v[a];
    const Jet p_a = c.rho[a] * c.eta.d_rho[a] - c.rho[a] * e / rho;
    density = density + kinetic;
    flux = flux + (kinetic + p_a) * c.v[a];
  }
  return density.t + flux.x;
}

PointJets balance_time_derivatives(const PointJets& point, const ExtendedPotential& potential) {
  // B_a, M_a and S are affine in the unknown rates z = (rho1_t, rho2_t, v1_t, v2_t, s1_t).
  auto set_rates = [&](const Eigen::Matrix<double, 5, 1>& z) {
    PointJets p = point;
    p.rho[0].t = z(0);
    p.rho[1].t = z(1);
    p.v[0].t = z(2);
    p.v[1].t = z(3);
    p.s[0].t = z(4);
    return p;
  };
  auto balances = [&](const PointJets& p) {
    const PointTerms terms = gibbs_terms(p, potential);
    Eigen::Matrix<double, 5, 1> r;
    r << terms.B[0], terms.B[1], terms.M[0], terms.M[1], terms.S;
    return r;
  };
  const Eigen::Matrix<double, 5, 1> zero = Eigen::Matrix<double, 5, 1>::Zero();
  const Eigen::Matrix<double, 5, 1> r0 = balances(set_rates(zero));
  Eigen::Matrix<double, 5, 5> A;
  for (int j = 0; j < 5; ++j) {
    Eigen::Matrix<double, 5, 1> unit = zero;
    unit(j) = 1.0;
    A.col(j) = balances(set_rates(unit)) - r0;
  }
  const Eigen::FullPivLU<Eigen::Matrix<double, 5, 5>> lu(A);
  if (!lu.isInvertible()) {
    throw std::domain_error("balance_time_derivatives: singular balance system");
  }
  return set_rates(lu.solve(-r0));
}

IdentityReport gibbs_residual(const ManufacturedFields& fields, const ExtendedPotential& potential,
                              const SampleWindow& window, const IdentityMode& mode) {
  IdentityReport rep;
  rep.mode = mode;
  double sum_sq = 0.0;
  for_each_point(window, [&](double t, double x) {
    const PointTerms p = terms_at(fields, potential, t, x, mode);
    ++rep.points;
    rep.residual_max = std::max(rep.residual_max, std::abs(p.residual));
    sum_sq += p.residual * p.residual;
    rep.term_magnitude = std::max(rep.term_magnitude, p.term_magnitude);
    rep.flipped_sign_residual_max =
        std::max(rep.flipped_sign_residual_max, std::abs(p.flipped_sign_residual));
    double lettered = 0.0;
    for (int id = 0; id < 5; ++id) {
      rep.term_residual[id] = std::max(rep.term_residual[id], std::abs(p.sub_identity[id]));
      rep.term_scale[id] = std::max(rep.term_scale[id], p.term_scale[id]);
      lettered += p.sub_identity[id];
    }
    rep.term_e_eta_residual = std::max(rep.term_e_eta_residual, std::abs(p.term_e_eta));
    rep.legendre_residual = std::max(rep.legendre_residual, std::abs(p.legendre));
    rep.heat_split_residual = std::max(rep.heat_split_residual, std::abs(p.heat_split));
    rep.decomposition_gap = std::max(
        rep.decomposition_gap, std::abs(p.residual - (lettered + p.legendre - p.heat_split)));
  });
  rep.residual_l2 = std::sqrt(sum_sq / static_cast<double>(rep.points));
  return rep;
}

double term_identity_residual(char identity, const ManufacturedFields& fields,
                              const ExtendedPotential& potential, const SampleWindow& window,
                              const IdentityMode& mode, ETermReading reading) {
  if (identity < 'a' || identity > 'e') {
    throw std::invalid_argument("term_identity_residual: identity must be one of a..e");
  }
  const int id = identity - 'a';
  double worst = 0.0;
  for_each_point(window, [&](double t, double x) {
    const PointTerms p = terms_at(fields, potential, t, x, mode);
    const double r =
        (id == 4 && reading == ETermReading::potential) ? p.term_e_eta : p.sub_identity[id];
    worst = std::max(worst, std::abs(r));
  });
  return worst;
}

std::optional<double> convergence_order(std::span<const double> norms) {
  if (norms.size() < 2) throw std::invalid_argument("convergence_order: need at least two norms");
  for (double n : norms) {
    if (!std::isfinite(n) || n < 0.0) {
      throw std::invalid_argument("convergence_order: norms must be finite and nonnegative");
    }
    if (n == 0.0) return std::nullopt;
  }
  // log h_k = log h - k log 2; the slope is independent of h.
  const double m = static_cast<double>(norms.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < norms.size(); ++k) {
    const double x = -static_cast<double>(k) * std::numbers::ln2;
    const double y = std::log(norms[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace twotemp
