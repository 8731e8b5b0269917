#include "crossing/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "crossing/error.hpp"
#include "crossing/grid.hpp"
#include "crossing/oscquad.hpp"

namespace crossing {

namespace {

using std::numbers::pi;
constexpr cplx I(0.0, 1.0);

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double sgn(double v) { return v > 0 ? 1.0 : -1.0; }

Poly2 symbol(const Poly1& V, double E0) {
  return Poly2::xi() * Poly2::xi() + Poly2::from_x(V) - Poly2::constant(E0);
}

}  // namespace

int SchrodingerProblem::n() const {
  const int k = (V2 - V1).vanishing_order();
  if (k < 0) throw Error(ErrorCode::NoFiniteContact, "V2 - V1 vanishes identically");
  if (k == 0) throw Error(ErrorCode::CaseMismatch, "V2 - V1 must vanish at 0");
  return k;
}

double SchrodingerProblem::xi0() const { return std::sqrt(std::max(E0, 0.0)); }

void SchrodingerProblem::validate_case_i() const {
  if (!(E0 > 0.0)) throw Error(ErrorCode::CaseMismatch, "case (i) needs E0 > 0");
  if (V1(0.0) != 0.0 || V2(0.0) != 0.0) throw Error(ErrorCode::CaseMismatch, "potentials must vanish at 0");
  (void)n();
  if (!(x_in < 0.0 && 0.0 < x_out)) throw Error(ErrorCode::Domain, "interval must straddle 0");
  if (!(h > 0.0)) throw Error(ErrorCode::Domain, "h must be positive");
  constexpr int samples = 2001;
  for (int i = 0; i < samples; ++i) {
    const double x = x_in + (x_out - x_in) * i / (samples - 1);
    if (!(E0 - V1(x) > 0.0) || !(E0 - V2(x) > 0.0))
      throw Error(ErrorCode::CaseMismatch, "E0 - V_j must stay positive on the interval (turning point at x=" +
                                               std::to_string(x) + ")");
  }
}

void SchrodingerProblem::validate_case_ii() const {
  if (E0 != 0.0) throw Error(ErrorCode::CaseMismatch, "case (ii) needs E0 = 0");
  if (V1(0.0) != 0.0 || V2(0.0) != 0.0) throw Error(ErrorCode::CaseMismatch, "potentials must vanish at 0");
  (void)n();
  if (V1.derivative_at_zero(1) == 0.0 || V2.derivative_at_zero(1) == 0.0)
    throw Error(ErrorCode::CaseMismatch, "case (ii) needs V_j'(0) != 0");
}

CrossingData build_crossing_data(const SchrodingerProblem& prob, CrossingPoint which) {
  double shift = 0.0;
  if (which == CrossingPoint::Caustic) {
    prob.validate_case_ii();
  } else {
    if (!(prob.E0 > 0.0)) throw Error(ErrorCode::CaseMismatch, "crossings at +-xi0 need E0 > 0");
    if (prob.V1(0.0) != 0.0 || prob.V2(0.0) != 0.0)
      throw Error(ErrorCode::CaseMismatch, "potentials must vanish at 0");
    (void)prob.n();
    shift = which == CrossingPoint::Plus ? prob.xi0() : -prob.xi0();
  }
  const Poly2 p1 = symbol(prob.V1, prob.E0).shifted(0.0, shift);
  const Poly2 p2 = symbol(prob.V2, prob.E0).shifted(0.0, shift);
  const cplx w0 = prob.W.at_zero();
  return crossing_data(p1, p2, w0, w0, 2 * prob.n() + 2);
}

Omega12 omega_case_i(const SchrodingerProblem& prob) {
  const int n = prob.n();
  const double D = (prob.V2 - prob.V1).derivative_at_zero(n);
  const double xi0 = prob.xi0();
  const double g1 = std::hypot(prob.V1.derivative_at_zero(1), 2.0 * xi0);
  const double g2 = std::hypot(prob.V2.derivative_at_zero(1), 2.0 * xi0);
  const double rho = g2 / g1;
  const double e = 1.0 / (n + 1);
  const double core = gamma_real((n + 2.0) / (n + 1.0)) * std::pow(2.0 * factorial(n + 1) / std::abs(D), e);
  const double th = sgn(D) * pi / (2.0 * (n + 1));
  const double xin = std::pow(xi0, n);
  return {mu_m(n, -th) * core * std::pow(rho / xin, e), mu_m(n, th) * core * std::pow(1.0 / (rho * xin), e)};
}

Omega12 omega_case_ii(const SchrodingerProblem& prob) {
  prob.validate_case_ii();
  const int n = prob.n();
  const double D = std::abs((prob.V2 - prob.V1).derivative_at_zero(n));
  const double d1 = std::abs(prob.V1.derivative_at_zero(1));
  const double d2 = std::abs(prob.V2.derivative_at_zero(1));
  const double e = 1.0 / (2 * n + 1);
  const double k = 2.0 * gamma_real((2.0 * n + 2.0) / (2.0 * n + 1.0)) * std::cos(pi / (2.0 * (2 * n + 1)));
  auto w = [&](double dj, double dother) {
    return k * std::pow(dother / dj * (2 * n + 1) * factorial(n) / (std::pow(dj, n) * D), e);
  };
  return {cplx(w(d1, d2)), cplx(w(d2, d1))};
}

TransferMatrix predict_transfer_case_i(const SchrodingerProblem& prob, CrossingPoint which) {
  if (which == CrossingPoint::Caustic) throw Error(ErrorCode::CaseMismatch, "caustic crossing is case (ii)");
  if (!(prob.E0 > 0.0)) throw Error(ErrorCode::CaseMismatch, "case (i) needs E0 > 0");
  if (!(prob.h > 0.0)) throw Error(ErrorCode::Domain, "h must be positive");
  Omega12 w = omega_case_i(prob);
  if (which == CrossingPoint::Minus) w = {std::conj(w.omega1), std::conj(w.omega2)};
  const cplx k = -I * std::pow(prob.h, 1.0 / (prob.n() + 1));
  const double w0 = prob.W.at_zero();
  TransferMatrix T = TransferMatrix::identity(prob.h);
  T(0, 1) = k * w.omega1 * w0;
  T(1, 0) = k * w.omega2 * w0;
  return T;
}

TransferMatrix predict_transfer_case_ii(const SchrodingerProblem& prob) {
  if (!(prob.h > 0.0)) throw Error(ErrorCode::Domain, "h must be positive");
  const Omega12 w = omega_case_ii(prob);
  const cplx k = -I * std::pow(prob.h, 1.0 / (2 * prob.n() + 1));
  const double w0 = prob.W.at_zero();
  TransferMatrix T = TransferMatrix::identity(prob.h);
  T(0, 1) = k * w.omega1 * w0;
  T(1, 0) = k * w.omega2 * w0;
  return T;
}

WkbBasis::WkbBasis(const SchrodingerProblem& prob) : prob_(&prob) {
  if (!(prob.E0 > 0.0)) throw Error(ErrorCode::TurningPointInRange, "WKB basis needs E0 > 0");
  const Poly1* V[2] = {&prob.V1, &prob.V2};
  for (int j = 0; j < 2; ++j) {
    const double d = V[j]->derivative_at_zero(1);
    c_[j] = std::pow(1.0 + d * d / (4.0 * prob.E0), 0.25);
  }
}

double WkbBasis::phase_derivative(int j, double x) const {
  const Poly1& V = j == 0 ? prob_->V1 : prob_->V2;
  const double k = prob_->E0 - V(x);
  if (!(k > 0.0)) throw Error(ErrorCode::IllConditioned, "turning point at x=" + std::to_string(x));
  return std::sqrt(k);
}

double WkbBasis::phase(int j, double x) const {
  if (x == 0.0) return 0.0;
  return integrate_smooth([&](double y) { return phase_derivative(j, y); }, 0.0, x, 8, 20);
}

double WkbBasis::amplitude(int j, double x) const {
  const Poly1& V = j == 0 ? prob_->V1 : prob_->V2;
  return c_[j] * std::pow(1.0 - V(x) / prob_->E0, -0.25);
}

std::array<std::array<cplx, 2>, 2> WkbBasis::branch_matrix(int j, double x, double h) const {
  const double s = amplitude(j, x);
  const double dp = phase_derivative(j, x);
  const cplx ep = std::polar(s, phase(j, x) / h);
  const cplx em = std::conj(ep);
  return {{{ep, em}, {I * dp * ep, -I * dp * em}}};
}

std::array<cplx, 2> branch_decompose(const WkbBasis& basis, int j, double x, cplx u, cplx hu_prime, double h) {
  const auto M = basis.branch_matrix(j, x, h);
  const cplx det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
  const double scale = std::abs(M[0][0]) * std::abs(M[1][1]) + std::abs(M[0][1]) * std::abs(M[1][0]);
  if (!(std::abs(det) > 1e-8 * scale)) throw Error(ErrorCode::IllConditioned, "branch matrix is singular");
  return {(M[1][1] * u - M[0][1] * hu_prime) / det, (M[0][0] * hu_prime - M[1][0] * u) / det};
}

SchrodingerSolution solve_schrodinger_ode(const SchrodingerProblem& prob, const BranchData& initial, double x_start,
                                          double x_end, int samples, double tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<cplx>;
  if (prob.E0 == 0.0) throw Error(ErrorCode::TurningPointInRange, "case (ii) has a turning point at 0");
  prob.validate_case_i();
  if (samples < 2) throw Error(ErrorCode::Domain, "need at least two samples");
  const WkbBasis basis(prob);
  State y(4);
  for (int j = 0; j < 2; ++j) {
    const auto M = basis.branch_matrix(j, x_start, prob.h);
    y[2 * j] = M[0][0] * initial[j][0] + M[0][1] * initial[j][1];
    y[2 * j + 1] = M[1][0] * initial[j][0] + M[1][1] * initial[j][1];
  }
  const double h = prob.h;
  auto rhs = [&](const State& s, State& ds, double x) {
    const double w = prob.W(x);
    ds[0] = s[1] / h;
    ds[1] = ((prob.V1(x) - prob.E0) * s[0]) / h + w * s[2];
    ds[2] = s[3] / h;
    ds[3] = ((prob.V2(x) - prob.E0) * s[2]) / h + w * s[0];
  };
  SchrodingerSolution sol;
  std::vector<double> times(samples);
  for (int i = 0; i < samples; ++i) times[i] = x_start + (x_end - x_start) * i / (samples - 1);
  times.back() = x_end;
  auto observer = [&](const State& s, double x) {
    sol.x.push_back(x);
    sol.y.push_back({s[0], s[1], s[2], s[3]});
  };
  try {
    odeint::integrate_times(odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>()), rhs, y,
                            times.begin(), times.end(), (x_end - x_start) * 1e-5, observer,
                            odeint::max_step_checker(1000000));
  } catch (const std::exception& e) {
    throw Error(ErrorCode::StepFailure, e.what());
  }
  if (sol.x.size() != times.size()) throw Error(ErrorCode::StepFailure, "integrator stopped early");
  return sol;
}

NumericTransfer numeric_transfer_case_i(const SchrodingerProblem& prob, CrossingPoint which, double eps, double tol) {
  if (which == CrossingPoint::Caustic)
    throw Error(ErrorCode::TurningPointInRange, "caustic crossing is not solvable in x-space branches");
  prob.validate_case_i();
  if (eps < 0.0) throw Error(ErrorCode::Domain, "eps must be non-negative");
  const bool plus = which == CrossingPoint::Plus;
  const double start = plus ? prob.x_in : prob.x_out;
  const double stop = plus ? prob.x_out - eps : prob.x_in + eps;
  for (double x : {start, stop})
    if (prob.W(x) != 0.0 || (x > prob.W.support_lo() && x < prob.W.support_hi()))
      throw Error(ErrorCode::WindowInsideSupport, "start/readout point inside the coupling support");
  const WkbBasis basis(prob);
  const int incoming = plus ? 0 : 1;
  NumericTransfer out{TransferMatrix::identity(prob.h, TransferMatrix::Kind::Extracted),
                      TransferMatrix::identity(prob.h, TransferMatrix::Kind::Extracted)};
  for (int col = 0; col < 2; ++col) {
    BranchData init{};
    init[col][incoming] = 1.0;
    const auto sol = solve_schrodinger_ode(prob, init, start, stop, 2, tol);
    const auto& y = sol.y.back();
    for (int j = 0; j < 2; ++j) {
      const auto a = branch_decompose(basis, j, stop, y[2 * j], y[2 * j + 1], prob.h);
      out.T(j, col) = a[incoming];
      out.reflected(j, col) = a[1 - incoming];
    }
  }
  return out;
}

}  // namespace crossing
