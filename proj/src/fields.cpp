#include "twotemp/fields.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace twotemp {

Grid1D::Grid1D(std::size_t n, double length) : n_(n), length_(length) {
  if (n < min_cells) {
    throw std::invalid_argument("grid: need at least 4 cells, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("grid: length must be positive and finite");
  }
}

namespace {

void require_size(FieldView f, std::size_t n, const char* what) {
  if (f.size() != n) {
    throw std::invalid_argument(std::string(what) + ": field size " + std::to_string(f.size()) +
                                " does not match " + std::to_string(n));
  }
}

}  // namespace

Field grad(FieldView f, const Grid1D& grid) {
  require_size(f, grid.size(), "grad");
  const double inv2dx = 0.5 / grid.dx();
  Field out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = (f[grid.next(i)] - f[grid.prev(i)]) * inv2dx;
  }
  return out;
}

Field div(FieldView f, const Grid1D& grid) { return grad(f, grid); }

Field material_derivative(FieldView f_t, FieldView f_x, FieldView v) {
  require_size(f_x, f_t.size(), "material_derivative");
  require_size(v, f_t.size(), "material_derivative");
  Field out(f_t.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f_t[i] + v[i] * f_x[i];
  return out;
}

double integrate(FieldView f, const Grid1D& grid) {
  require_size(f, grid.size(), "integrate");
  double sum = 0.0;
  for (double value : f) sum += value;
  return sum * grid.dx();
}

void MixtureState::validate(const Grid1D& grid) const {
  const std::size_t n = grid.size();
  const std::pair<const Field*, const char*> fields[] = {
      {&rho1, "rho1"}, {&rho2, "rho2"}, {&v1, "v1"}, {&v2, "v2"}, {&s1, "s1"}, {&s2, "s2"}};
  for (const auto& [field, name] : fields) {
    require_size(*field, n, name);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite((*field)[i])) {
        throw std::invalid_argument(std::string("state: non-finite ") + name + " at cell " +
                                    std::to_string(i));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rho1[i] <= 0.0 || rho2[i] <= 0.0) {
      throw std::invalid_argument("state: nonpositive density at cell " + std::to_string(i));
    }
  }
}

Field total_density(const MixtureState& state) {
  Field out(state.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = state.rho1[i] + state.rho2[i];
  return out;
}

Field concentration(const MixtureState& state) {
  Field out(state.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = state.rho1[i] / (state.rho1[i] + state.rho2[i]);
  }
  return out;
}

Field mass_average_velocity(const MixtureState& state) {
  Field out(state.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (state.rho1[i] * state.v1[i] + state.rho2[i] * state.v2[i]) /
             (state.rho1[i] + state.rho2[i]);
  }
  return out;
}

Field relative_velocity(const MixtureState& state) {
  Field out(state.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = state.v2[i] - state.v1[i];
  return out;
}

Field diffusion_flux(const MixtureState& state) {
  const Field v = mass_average_velocity(state);
  Field out(state.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = state.rho1[i] * (state.v1[i] - v[i]);
  return out;
}

}  // namespace twotemp
