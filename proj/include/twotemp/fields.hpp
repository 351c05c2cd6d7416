#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace twotemp {

/// Uniform periodic 1-D grid. Cell i is centered at (i + 1/2) * dx.
class Grid1D {
 public:
  Grid1D(std::size_t n, double length);

  std::size_t size() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / static_cast<double>(n_); }
  double x(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dx(); }

  std::size_t next(std::size_t i) const { return i + 1 == n_ ? 0 : i + 1; }
  std::size_t prev(std::size_t i) const { return i == 0 ? n_ - 1 : i - 1; }

  static constexpr std::size_t min_cells = 4;

 private:
  std::size_t n_;
  double length_;
};

using Field = std::vector<double>;
using FieldView = std::span<const double>;

/// Central difference (f[i+1] - f[i-1]) / (2 dx) with periodic wrap.
Field grad(FieldView f, const Grid1D& grid);

/// In one dimension the divergence coincides with the gradient.
Field div(FieldView f, const Grid1D& grid);

/// Pointwise f_t + v * f_x.
Field material_derivative(FieldView f_t, FieldView f_x, FieldView v);

/// Discrete integral sum_i f[i] * dx.
double integrate(FieldView f, const Grid1D& grid);

/// Samples fn at every cell center.
template <class Fn>
Field sample(const Grid1D& grid, Fn&& fn) {
  Field out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = fn(grid.x(i));
  return out;
}

/// Primitive fields of a binary mixture on a shared grid.
struct MixtureState {
  Field rho1, rho2;  // kg/m^3
  Field v1, v2;      // m/s
  Field s1, s2;      // J/(kg K)

  std::size_t size() const { return rho1.size(); }

  /// Throws std::invalid_argument unless every field has n entries, all are
  /// finite and both densities are strictly positive.
  void validate(const Grid1D& grid) const;
};

Field total_density(const MixtureState& state);
/// c = rho1 / rho
Field concentration(const MixtureState& state);
/// Mass-average velocity from rho v = rho1 v1 + rho2 v2.
Field mass_average_velocity(const MixtureState& state);
/// u = v2 - v1
Field relative_velocity(const MixtureState& state);
/// j = rho1 (v1 - v)
Field diffusion_flux(const MixtureState& state);

}  // namespace twotemp
