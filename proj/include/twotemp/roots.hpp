#pragma once

#include <cmath>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace twotemp {

struct RootResult {
  double x = 0.0;
  double residual = 0.0;  // |f(x)| at return
  int iterations = 0;
};

class RootNotConverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton iteration kept inside [lo, hi]: a step that leaves the bracket or
/// fails to halve the residual is replaced by bisection. fdf(x) returns
/// {f(x), f'(x)}. Stops once |f| <= ftol.
template <class Fn>
RootResult safeguarded_newton(Fn&& fdf, double lo, double hi, double ftol, int max_iter = 100) {
  auto [flo, dlo] = fdf(lo);
  auto [fhi, dhi] = fdf(hi);
  if (std::abs(flo) <= ftol) return {lo, std::abs(flo), 0};
  if (std::abs(fhi) <= ftol) return {hi, std::abs(fhi), 0};
  if (flo * fhi > 0.0) throw RootNotConverged("safeguarded_newton: root not bracketed");
  if (flo > 0.0) std::swap(lo, hi);  // keep f(lo) < 0 < f(hi)

  double x = 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo);
  double dx = dx_old;
  auto [f, df] = fdf(x);
  for (int it = 1; it <= max_iter; ++it) {
    if (std::abs(f) <= ftol) return {x, std::abs(f), it - 1};
    const bool newton_leaves = ((x - hi) * df - f) * ((x - lo) * df - f) > 0.0;
    if (newton_leaves || std::abs(2.0 * f) > std::abs(dx_old * df)) {
      dx_old = dx;
      dx = 0.5 * (hi - lo);
      x = lo + dx;
    } else {
      dx_old = dx;
      dx = f / df;
      x -= dx;
    }
    std::tie(f, df) = fdf(x);
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
  }
  if (std::abs(f) <= ftol) return {x, std::abs(f), max_iter};
  throw RootNotConverged("safeguarded_newton: no convergence within iteration limit");
}

}  // namespace twotemp
