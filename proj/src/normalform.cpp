#include "crossing/normalform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "crossing/error.hpp"
#include "crossing/oscquad.hpp"

namespace crossing {

namespace {

using std::numbers::pi;
constexpr cplx I(0.0, 1.0);

double coupling_lo(const NormalFormProblem& p) { return std::min(p.r1.support_lo(), p.r2.support_lo()); }
double coupling_hi(const NormalFormProblem& p) { return std::max(p.r1.support_hi(), p.r2.support_hi()); }

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

GridFunction like(const RealGridFunction& F) { return GridFunction{F.x0, F.dx, std::vector<cplx>(F.size())}; }

GridFunction ones(const RealGridFunction& F) {
  GridFunction g = like(F);
  std::fill(g.values.begin(), g.values.end(), cplx(1.0));
  return g;
}

GridFunction gamma_apply(const NormalFormProblem& prob, const RealGridFunction& F, const GridFunction& v,
                         const Coupling& r, double sign) {
  if (v.size() != F.size()) throw Error(ErrorCode::Domain, "function is not on the problem grid");
  std::vector<cplx> integrand(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double rv = r(F.x(i));
    integrand[i] = rv == 0.0 ? cplx(0.0) : std::polar(rv, sign * F.values[i] / prob.h) * v.values[i];
  }
  GridFunction out = like(F);
  out.values = cumulative_integral(integrand, F.dx);
  return out;
}

GridFunction axpy(cplx a, const GridFunction& x, const GridFunction& y) {
  GridFunction out = y;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += a * x.values[i];
  return out;
}

}  // namespace

NormalFormProblem NormalFormProblem::polynomial(const Poly1& f, Coupling r1, Coupling r2, double x0, double x1,
                                                double h) {
  NormalFormProblem p;
  const int m = f.vanishing_order();
  if (m < 1) throw Error(ErrorCode::InvalidPhase, "f must vanish at 0 to some order m >= 1");
  p.m = m;
  p.f = [f](double x) { return f(x); };
  p.fderiv = [f](int k, double x) { return f.derivative(k)(x); };
  p.r1 = r1;
  p.r2 = r2;
  p.x0 = x0;
  p.x1 = x1;
  p.h = h;
  return p;
}

void NormalFormProblem::validate() const {
  if (!f || !fderiv) throw Error(ErrorCode::Domain, "f callables missing");
  if (!(h > 0.0)) throw Error(ErrorCode::Domain, "h must be positive");
  if (!(x0 < 0.0 && 0.0 < x1)) throw Error(ErrorCode::Domain, "interval must straddle 0");
  if (points_per_period < 16) throw Error(ErrorCode::GridTooCoarse, "at least 16 points per local period required");
  if (m < 1) throw Error(ErrorCode::InvalidPhase, "m must be positive");
  const double top = fderiv(m, 0.0);
  if (top == 0.0 || !std::isfinite(top)) throw Error(ErrorCode::InvalidPhase, "f^{(m)}(0) must be nonzero");
  for (int k = 0; k < m; ++k)
    if (std::abs(fderiv(k, 0.0)) > 1e-10 * std::max(1.0, std::abs(top)))
      throw Error(ErrorCode::InvalidPhase, "f^{(" + std::to_string(k) + ")}(0) does not vanish");
  for (const Coupling* r : {&r1, &r2}) {
    if (r->is_zero()) continue;
    if (!r->is_compact() || r->support_lo() <= x0 || r->support_hi() >= x1)
      throw Error(ErrorCode::Domain, "coupling support must lie inside (x0, x1)");
    constexpr int n = 2001;
    const double a = r->support_lo(), b = r->support_hi();
    const double guard = 1e-9 * (b - a);
    double xp = a, fp = f(a);
    for (int i = 1; i < n; ++i) {
      const double x = a + (b - a) * i / (n - 1);
      const double fx = f(x);
      const bool same_side = (xp > guard && x > guard) || (xp < -guard && x < -guard);
      if (same_side && (fx == 0.0 || fp == 0.0 || (fx < 0.0) != (fp < 0.0)))
        throw Error(ErrorCode::InvalidPhase, "f vanishes on the coupling support away from 0");
      xp = x;
      fp = fx;
    }
  }
}

UniformGrid NormalFormProblem::grid() const {
  double fmax = 0.0;
  const double a = std::max(x0, coupling_lo(*this));
  const double b = std::min(x1, coupling_hi(*this));
  if (a < b) {
    constexpr int n = 4001;
    for (int i = 0; i < n; ++i) fmax = std::max(fmax, std::abs(f(a + (b - a) * i / (n - 1))));
  }
  double dx = (x1 - x0) / 4000.0;
  if (fmax > 0.0) dx = std::min(dx, 2.0 * pi * h / (points_per_period * fmax));
  const auto n = static_cast<std::size_t>(std::ceil((x1 - x0) / dx)) + 1;
  return UniformGrid{x0, x1, n};
}

GridFunction ModelSolution::w(double h) const {
  GridFunction out = u2;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] *= std::polar(1.0, -F.values[i] / h);
  return out;
}

RealGridFunction antiderivative_F(const NormalFormProblem& prob) {
  const UniformGrid g = prob.grid();
  std::vector<double> fs(g.n);
  for (std::size_t i = 0; i < g.n; ++i) fs[i] = prob.f(g.x(i));
  RealGridFunction F{g.a, g.dx(), cumulative_integral(fs, g.dx())};
  // shift so that F(0) = 0
  const double offset = integrate_smooth(prob.f, prob.x0, 0.0, 32, 20);
  for (auto& v : F.values) v -= offset;
  return F;
}

GridFunction gamma_plus(const NormalFormProblem& prob, const RealGridFunction& F, const GridFunction& v) {
  return gamma_apply(prob, F, v, prob.r1, 1.0);
}

GridFunction gamma_minus(const NormalFormProblem& prob, const RealGridFunction& F, const GridFunction& v) {
  return gamma_apply(prob, F, v, prob.r2, -1.0);
}

GridFunction gamma_plus(const NormalFormProblem& prob, const GridFunction& v) {
  return gamma_plus(prob, antiderivative_F(prob), v);
}

GridFunction gamma_minus(const NormalFormProblem& prob, const GridFunction& v) {
  return gamma_minus(prob, antiderivative_F(prob), v);
}

std::pair<GridFunction, GridFunction> k_operators(const NormalFormProblem& prob, const GridFunction& v) {
  const RealGridFunction F = antiderivative_F(prob);
  GridFunction k1 = gamma_plus(prob, F, gamma_minus(prob, F, v));
  GridFunction k2 = gamma_minus(prob, F, gamma_plus(prob, F, v));
  for (auto& z : k1.values) z = -z;
  for (auto& z : k2.values) z = -z;
  return {std::move(k1), std::move(k2)};
}

ModelSolution neumann_solve(const NormalFormProblem& prob, cplx alpha1, cplx alpha2, int terms) {
  prob.validate();
  if (terms < 1) throw Error(ErrorCode::Domain, "terms must be >= 1");
  const RealGridFunction F = antiderivative_F(prob);
  const GridFunction one = ones(F);
  const GridFunction gp1 = gamma_plus(prob, F, one);
  const GridFunction gm1 = gamma_minus(prob, F, one);

  auto K1 = [&](const GridFunction& v) {
    GridFunction r = gamma_plus(prob, F, gamma_minus(prob, F, v));
    for (auto& z : r.values) z = -z;
    return r;
  };
  auto K2 = [&](const GridFunction& v) {
    GridFunction r = gamma_minus(prob, F, gamma_plus(prob, F, v));
    for (auto& z : r.values) z = -z;
    return r;
  };

  double kappa = std::max(K1(one).sup_norm(), K2(one).sup_norm());
  if (kappa >= 0.5) throw Error(ErrorCode::NotContractive, "K(1) estimate " + std::to_string(kappa) + " >= 1/2");

  // data: a1 - i a2 Gamma_+(1), a2 - i a1 Gamma_-(1)
  GridFunction g1 = axpy(-I * alpha2, gp1, GridFunction{F.x0, F.dx, std::vector<cplx>(F.size(), alpha1)});
  GridFunction g2 = axpy(-I * alpha1, gm1, GridFunction{F.x0, F.dx, std::vector<cplx>(F.size(), alpha2)});

  auto series = [&](const GridFunction& g, auto&& K) {
    GridFunction sum = g, term = g;
    for (int k = 1; k <= terms; ++k) {
      const double before = term.sup_norm();
      term = K(term);
      const double after = term.sup_norm();
      if (before > 0.0) kappa = std::max(kappa, after / before);
      sum = axpy(1.0, term, sum);
    }
    return sum;
  };
  ModelSolution sol;
  sol.u1 = series(g1, K1);
  const GridFunction w = series(g2, K2);
  if (kappa >= 0.5) throw Error(ErrorCode::NotContractive, "observed contraction ratio " + std::to_string(kappa));
  sol.u2 = w;
  for (std::size_t i = 0; i < w.size(); ++i) sol.u2.values[i] *= std::polar(1.0, F.values[i] / prob.h);
  sol.kappa = kappa;
  sol.residual_bound = std::pow(kappa, terms + 1) / (1.0 - kappa) * std::max(g1.sup_norm(), g2.sup_norm());
  sol.F = F;
  return sol;
}

ModelSolution ode_oracle(const NormalFormProblem& prob, cplx alpha1, cplx alpha2, double tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<cplx>;
  prob.validate();
  ModelSolution sol;
  sol.F = antiderivative_F(prob);
  const std::size_t n = sol.F.size();
  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) times[i] = sol.F.x(i);
  times.back() = prob.x1;

  const double h = prob.h;
  auto rhs = [&](const State& y, State& dy, double x) {
    const double r1 = prob.r1(x), r2 = prob.r2(x);
    dy[0] = -I * r1 * y[1];
    dy[1] = I * (prob.f(x) / h) * y[1] - I * r2 * y[0];
  };
  sol.u1 = GridFunction{sol.F.x0, sol.F.dx, std::vector<cplx>(n)};
  sol.u2 = sol.u1;
  std::size_t k = 0;
  auto observer = [&](const State& y, double) {
    sol.u1.values[k] = y[0];
    sol.u2.values[k] = y[1];
    ++k;
  };
  State y{alpha1, alpha2 * std::polar(1.0, sol.F.values[0] / h)};
  try {
    odeint::integrate_times(odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>()), rhs, y,
                            times.begin(), times.end(), sol.F.dx, observer, odeint::max_step_checker(100000));
  } catch (const std::exception& e) {
    throw Error(ErrorCode::StepFailure, e.what());
  }
  if (k != n) throw Error(ErrorCode::StepFailure, "integrator stopped early");
  const double n0 = std::norm(sol.u1.values[0]) + std::norm(sol.u2.values[0]);
  for (std::size_t i = 0; i < n; ++i)
    sol.norm_drift = std::max(sol.norm_drift, std::abs(std::norm(sol.u1.values[i]) + std::norm(sol.u2.values[i]) - n0));
  return sol;
}

TransferMatrix extract_transfer(const NormalFormProblem& prob, const ModelSolution& e1, const ModelSolution& e2,
                                const ExtractionOptions& opt) {
  if (opt.window < 1) throw Error(ErrorCode::Domain, "window must contain at least one point");
  const RealGridFunction& F = e1.F;
  if (e2.F.size() != F.size()) throw Error(ErrorCode::Domain, "solutions live on different grids");
  const double xp = opt.x_plus.value_or(prob.x1 - opt.eps);
  const std::size_t c = F.index_of(xp);
  const std::size_t half = static_cast<std::size_t>(opt.window / 2);
  if (c < half || c + half >= F.size()) throw Error(ErrorCode::Domain, "extraction window leaves the grid");
  const std::size_t lo = c - half, hi = c + (opt.window - 1 - half);
  const double xlo = F.x(lo), xhi = F.x(hi);
  if (xlo <= 0.0 || !prob.r1.vanishes_on(xlo, xhi) || !prob.r2.vanishes_on(xlo, xhi))
    throw Error(ErrorCode::WindowInsideSupport, "extraction window [" + std::to_string(xlo) + ", " +
                                                    std::to_string(xhi) + "] meets the coupling support");
  TransferMatrix T = TransferMatrix::identity(prob.h, TransferMatrix::Kind::Extracted);
  const ModelSolution* cols[2] = {&e1, &e2};
  for (int j = 0; j < 2; ++j) {
    cplx a1{}, a2{};
    for (std::size_t i = lo; i <= hi; ++i) {
      a1 += cols[j]->u1.values[i];
      a2 += cols[j]->u2.values[i] * std::polar(1.0, -F.values[i] / prob.h);
    }
    const double cnt = static_cast<double>(hi - lo + 1);
    T(0, j) = a1 / cnt;
    T(1, j) = a2 / cnt;
  }
  return T;
}

cplx model_omega(int m, double f_m_0) {
  if (m < 1 || f_m_0 == 0.0) throw Error(ErrorCode::Domain, "model omega needs m >= 1 and f^{(m)}(0) != 0");
  const double e = 1.0 / (m + 1);
  const double sg = f_m_0 > 0 ? 1.0 : -1.0;
  return 2.0 * mu_m(m, sg * pi / (2.0 * (m + 1))) * gamma_real((m + 2.0) / (m + 1.0)) *
         std::pow(factorial(m + 1) / std::abs(f_m_0), e);
}

TransferMatrix predict_model_transfer(const NormalFormProblem& prob) {
  const cplx w = model_omega(prob.m, prob.f_m_0());
  const cplx k = -I * std::pow(prob.h, 1.0 / (prob.m + 1));
  TransferMatrix T = TransferMatrix::identity(prob.h);
  T(0, 1) = k * prob.r1.at_zero() * w;
  T(1, 0) = k * prob.r2.at_zero() * std::conj(w);
  return T;
}

}  // namespace crossing
