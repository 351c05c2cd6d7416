#pragma once

namespace twotemp {

/// A value carried together with its first partial derivatives in t and x.
/// Arithmetic applies the product and quotient rules, so composite space-time
/// expressions built from jets carry exact first derivatives.
struct Jet {
  double v = 0.0;
  double t = 0.0;
  double x = 0.0;

  constexpr Jet() = default;
  constexpr Jet(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  constexpr Jet(double value, double dt, double dx) : v(value), t(dt), x(dx) {}
};

constexpr Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.t + b.t, a.x + b.x}; }
constexpr Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.t - b.t, a.x - b.x}; }
constexpr Jet operator-(Jet a) { return {-a.v, -a.t, -a.x}; }
constexpr Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.t * b.v + a.v * b.t, a.x * b.v + a.v * b.x};
}
constexpr Jet operator/(Jet a, Jet b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  return {q, (a.t - q * b.t) * inv, (a.x - q * b.x) * inv};
}
constexpr Jet operator+(double a, Jet b) { return Jet(a) + b; }
constexpr Jet operator+(Jet a, double b) { return a + Jet(b); }
constexpr Jet operator-(double a, Jet b) { return Jet(a) - b; }
constexpr Jet operator-(Jet a, double b) { return a - Jet(b); }
constexpr Jet operator*(double a, Jet b) { return {a * b.v, a * b.t, a * b.x}; }
constexpr Jet operator*(Jet a, double b) { return b * a; }
constexpr Jet operator/(Jet a, double b) { return a * (1.0 / b); }
constexpr Jet operator/(double a, Jet b) { return Jet(a) / b; }

constexpr double value_of(double a) { return a; }
constexpr double value_of(const Jet& a) { return a.v; }

}  // namespace twotemp
