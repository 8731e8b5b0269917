#include "crossing/symbolcalc.hpp"

#include <cmath>
#include <numbers>

#include "crossing/error.hpp"
#include "crossing/oscquad.hpp"

namespace crossing {

namespace {

using std::numbers::pi;

bool integer_coefficients(const Poly2& p) {
  for (const auto& [k, c] : p.coeffs())
    if (c != std::floor(c) || std::abs(c) > 9.0e15) return false;
  return true;
}

double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

int sgn(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

cplx omega_entry(int m, int s, double bracket, double grad_ratio) {
  const double e = 1.0 / (m + 1);
  return 2.0 * mu_m(m, -sgn(s * bracket) * pi / (2.0 * (m + 1))) * gamma_real((m + 2.0) / (m + 1.0)) *
         std::pow(grad_ratio * factorial(m + 1) / std::abs(bracket), e);
}

}  // namespace

Poly2 poisson_bracket(const Poly2& a, const Poly2& b) { return a.dxi() * b.dx() - a.dx() * b.dxi(); }

Poly2 iterated_bracket(const Poly2& p1, const Poly2& p2, int k) {
  if (k < 1) throw Error(ErrorCode::Domain, "bracket power must be positive");
  Poly2 r = p2;
  for (int i = 0; i < k; ++i) r = poisson_bracket(p1, r);
  return r;
}

ContactOrder contact_order(const Poly2& p1, const Poly2& p2, int max_m) {
  if (max_m < 1) throw Error(ErrorCode::Domain, "max_m must be positive");
  const bool exact = integer_coefficients(p1) && integer_coefficients(p2);
  Poly2 r = p2;
  for (int k = 1; k <= max_m; ++k) {
    r = poisson_bracket(p1, r);
    const double v = r.coeff(0, 0);
    const bool nonzero = exact ? v != 0.0 : std::abs(v) > 1e-12 * std::max(1.0, r.max_abs_coeff());
    if (nonzero) return {k, v};
  }
  throw Error(ErrorCode::NoFiniteContact, "H_{p1}^k p2 vanishes at the crossing for all k <= " + std::to_string(max_m));
}

Vec2 gradient_at_origin(const Poly2& p) { return {p.coeff(1, 0), p.coeff(0, 1)}; }

double theta_from_gradient(const Vec2& g) {
  if (g[0] == 0.0 && g[1] == 0.0) throw Error(ErrorCode::ZeroGradient, "symbol gradient vanishes at the crossing");
  if (g[1] == 0.0) return -pi / 2.0;
  return -std::atan(g[0] / g[1]);
}

double theta_of(const Poly2& p) { return theta_from_gradient(gradient_at_origin(p)); }

int sign_s(const CrossingData& d) {
  auto inner = [](const Vec2& g, double th) { return g[1] * std::cos(th) - g[0] * std::sin(th); };
  const double a = inner(d.grad1, d.theta1);
  const double b = inner(d.grad2, d.theta2);
  if (a == 0.0 || b == 0.0) throw Error(ErrorCode::DegenerateS, "Hamiltonian field orthogonal to tau(Theta)");
  return sgn(a) * sgn(b);
}

CrossingData crossing_data(const Poly2& p1, const Poly2& p2, cplx q1_0, cplx q2_0, int max_m) {
  CrossingData d;
  d.grad1 = gradient_at_origin(p1);
  d.grad2 = gradient_at_origin(p2);
  d.theta1 = theta_from_gradient(d.grad1);
  d.theta2 = theta_from_gradient(d.grad2);
  const ContactOrder co = contact_order(p1, p2, max_m);
  d.m = co.m;
  d.bracket_m = co.bracket;
  d.bracket_m_21 = iterated_bracket(p2, p1, co.m).coeff(0, 0);
  d.s = sign_s(d);
  d.q1_0 = q1_0;
  d.q2_0 = q2_0;
  d.c_prime = norm(d.grad1) / norm(d.grad2);
  return d;
}

CrossingData reduced_model_data(int m, double f_m_0, cplx r1_0, cplx r2_0) {
  if (m < 1 || f_m_0 == 0.0) throw Error(ErrorCode::Domain, "reduced model needs m >= 1 and f^{(m)}(0) != 0");
  CrossingData d;
  d.m = m;
  d.bracket_m = -f_m_0;
  d.bracket_m_21 = f_m_0;
  d.grad1 = {0.0, 1.0};
  d.grad2 = {0.0, 1.0};
  d.theta1 = d.theta2 = 0.0;
  d.s = 1;
  d.q1_0 = r1_0;
  d.q2_0 = r2_0;
  d.c_prime = 1.0;
  return d;
}

NormalFormConstants normal_form_constants(const Poly2&, const Poly2&, const CrossingData& d) {
  if (d.m < 2) throw Error(ErrorCode::TransversalUnsupported, "c is not intrinsic for a transversal crossing");
  NormalFormConstants k;
  k.c = d.s * d.c_prime;
  k.f_m_0 = -k.c * d.bracket_m;
  return k;
}

Omega12 omega_general(const CrossingData& d) {
  if (d.m < 1 || d.bracket_m == 0.0 || d.bracket_m_21 == 0.0)
    throw Error(ErrorCode::Domain, "crossing data has no finite contact");
  const double n1 = norm(d.grad1);
  const double n2 = norm(d.grad2);
  if (n1 == 0.0 || n2 == 0.0) throw Error(ErrorCode::ZeroGradient, "symbol gradient vanishes at the crossing");
  return {omega_entry(d.m, d.s, d.bracket_m, n2 / n1), omega_entry(d.m, d.s, d.bracket_m_21, n1 / n2)};
}

TransferMatrix transfer_predicted_general(const CrossingData& d, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::Domain, "h must be positive");
  const Omega12 w = omega_general(d);
  const cplx k = -cplx(0.0, 1.0) * std::pow(h, 1.0 / (d.m + 1));
  TransferMatrix T = TransferMatrix::identity(h);
  T(0, 1) = k * w.omega1 * d.q1_0;
  T(1, 0) = k * w.omega2 * d.q2_0;
  return T;
}

cplx wkb_pairing_constant(const Poly2& p) {
  const Vec2 g = gradient_at_origin(p);
  const double th = theta_from_gradient(g);
  return std::polar(std::sqrt(std::abs(g[1]) / norm(g)), th / 2.0);
}

}  // namespace crossing
