#pragma once

#include <complex>
#include <cstddef>
#include <functional>

#include "crossing/coupling.hpp"
#include "crossing/grid.hpp"
#include "crossing/poly.hpp"

namespace crossing {

/// (e^{i theta} + e^{i (-1)^{m+1} theta}) / 2.
cplx mu_m(int m, double theta);

/// Euler Gamma on (0, 4].
double gamma_real(double x);

/// Real phase F with F'(y) vanishing to order exactly m at the critical point 0.
struct PhaseSpec {
  std::function<double(double)> F;
  /// deriv(k, y) = F^{(k)}(y) for 1 <= k <= m + 2.
  std::function<double(int, double)> deriv;
  int m = 1;
  double critical_point = 0.0;

  /// F given as a polynomial with F(0) = 0; m is read off from F'.
  static PhaseSpec polynomial(const Poly1& F);
  /// F(y) = scale * y^{m+1} / (m+1)!, so F^{(m+1)}(0) = scale.
  static PhaseSpec monomial(int m, double scale = 1.0);

  double top_derivative() const { return deriv(m + 1, critical_point); }
  PhaseSpec negated() const;

  /// Throws InvalidPhase unless the vanishing order is m at 0 and F' has no
  /// other zero on [a, b] (checked on a sample grid).
  void validate(double a, double b) const;
};

/// Complex amplitude a with derivative, vanishing outside [lo, hi].
struct AmplitudeSpec {
  std::function<cplx(double)> a;
  std::function<cplx(double)> da;
  double lo = 0.0;
  double hi = 0.0;

  static AmplitudeSpec from_coupling(const Coupling& c);
  /// a = value on [lo, hi] and zero elsewhere.
  static AmplitudeSpec constant(cplx value, double lo, double hi);
  AmplitudeSpec conjugated() const;

  /// Throws Domain if a or a' is non-finite on the support or a is nonzero at
  /// sampled exterior points.
  void validate() const;
  double sup_norm(int samples = 2001) const;
};

struct OscOptions {
  double abs_tol = 0.0;   ///< 0 selects max(1e-10, 1e-8 * |a|_inf * |interval|)
  std::size_t max_points = 200'000'000;
};

struct OscResult {
  cplx value;
  double error = 0.0;
  std::size_t points = 0;
};

/// Adaptive Gauss-Kronrod (7/15) evaluation of int_a^b amp(y) e^{iF(y)/h} dy.
/// Initial panels are no wider than 15/16 of the local period 2 pi h / |F'|.
OscResult osc_integral_numeric(const PhaseSpec& phase, const AmplitudeSpec& amp, double h, double a, double b,
                               const OscOptions& opt = {});

/// Leading term of the integral over a range straddling the critical point.
cplx osc_leading_term(const PhaseSpec& phase, cplx a0, double h);

/// (2 pi h)^{-1/2} int e^{-x^2/2h} v(x) dx over the grid of v.
cplx gaussian_pairing(const GridFunction& v, double h);

}  // namespace crossing
