#pragma once

#include <array>

#include "crossing/grid.hpp"
#include "crossing/poly.hpp"
#include "crossing/transfer.hpp"

namespace crossing {

using Vec2 = std::array<double, 2>;

/// H_a b = d_xi a * d_x b - d_x a * d_xi b.
Poly2 poisson_bracket(const Poly2& a, const Poly2& b);

/// H_{p1}^k p2.
Poly2 iterated_bracket(const Poly2& p1, const Poly2& p2, int k);

struct ContactOrder {
  int m = 0;
  double bracket = 0.0;  ///< H_{p1}^m p2 (0, 0)
};

/// Smallest m <= max_m with H_{p1}^m p2 (0, 0) != 0. The zero test is exact
/// when every coefficient is an integer, relative to 1e-12 otherwise.
ContactOrder contact_order(const Poly2& p1, const Poly2& p2, int max_m = 12);

/// (d_x p, d_xi p) at the origin.
Vec2 gradient_at_origin(const Poly2& p);

double theta_from_gradient(const Vec2& grad);
/// -arctan(d_x p / d_xi p) at the origin, or -pi/2 when d_xi p vanishes there.
double theta_of(const Poly2& p);

/// Geometry of a crossing at the origin of phase space.
struct CrossingData {
  int m = 0;
  double bracket_m = 0.0;     ///< H_{p1}^m p2 (0, 0)
  double bracket_m_21 = 0.0;  ///< H_{p2}^m p1 (0, 0)
  Vec2 grad1{};
  Vec2 grad2{};
  double theta1 = 0.0;
  double theta2 = 0.0;
  int s = 0;
  cplx q1_0{};
  cplx q2_0{};
  double c_prime = 0.0;  ///< |grad p1| / |grad p2|
};

/// Data for symbols already centred at the crossing.
CrossingData crossing_data(const Poly2& p1, const Poly2& p2, cplx q1_0, cplx q2_0, int max_m = 12);

/// Data of the reduced pair (xi, xi - f(x)) with its canonical normalisation:
/// equal gradients, s = +1 and H_{p1}^m p2 (0, 0) = -f^{(m)}(0).
CrossingData reduced_model_data(int m, double f_m_0, cplx r1_0, cplx r2_0);

/// sgn of the product of (H_{p_j}(0,0), tau(Theta(p_j))) over j = 1, 2.
int sign_s(const CrossingData& d);

struct NormalFormConstants {
  double c = 0.0;
  double f_m_0 = 0.0;  ///< f^{(m)}(0) of the reduced pair
};

/// Tangential case only (m >= 2).
NormalFormConstants normal_form_constants(const Poly2& p1, const Poly2& p2, const CrossingData& d);

struct Omega12 {
  cplx omega1;
  cplx omega2;
};

Omega12 omega_general(const CrossingData& d);

/// I - i h^{1/(m+1)} [[0, w1 q1(0,0)], [w2 q2(0,0), 0]].
TransferMatrix transfer_predicted_general(const CrossingData& d, double h);

/// Gaussian-pairing value of the WKB solution of p normalised to 1 at the
/// origin: e^{i Theta/2} |d_xi p / |grad p||^{1/2}.
cplx wkb_pairing_constant(const Poly2& p);

}  // namespace crossing
