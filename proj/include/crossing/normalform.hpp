#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "crossing/coupling.hpp"
#include "crossing/grid.hpp"
#include "crossing/poly.hpp"
#include "crossing/transfer.hpp"

namespace crossing {

/// Reduced system on [x0, x1]:
///   u1' = -i r1 u2,   u2' = (i/h) f u2 - i r2 u1,
/// with f vanishing to order exactly m at 0.
struct NormalFormProblem {
  std::function<double(double)> f;
  /// deriv(k, x) = f^{(k)}(x), k <= m.
  std::function<double(int, double)> fderiv;
  int m = 1;
  Coupling r1;
  Coupling r2;
  double x0 = -1.0;
  double x1 = 1.0;
  double h = 1e-2;
  /// Grid samples per local period 2 pi h / |f| over the coupling support.
  int points_per_period = 64;

  static NormalFormProblem polynomial(const Poly1& f, Coupling r1, Coupling r2, double x0, double x1, double h);

  double f_m_0() const { return fderiv(m, 0.0); }
  /// Throws Domain / InvalidPhase / GridTooCoarse when the invariants fail.
  void validate() const;
  UniformGrid grid() const;
};

struct ModelSolution {
  GridFunction u1;
  GridFunction u2;
  RealGridFunction F;
  double residual_bound = 0.0;  ///< Neumann truncation bound, 0 for the ODE oracle
  double kappa = 0.0;           ///< contraction estimate (Neumann only)
  double norm_drift = 0.0;      ///< max | |u1|^2 + |u2|^2 - initial |, ODE oracle only

  /// e^{-iF/h} u2 on the grid.
  GridFunction w(double h) const;
};

/// F(x) = int_0^x f on the problem grid.
RealGridFunction antiderivative_F(const NormalFormProblem& prob);

/// Gamma_+ v (x) = int_{x0}^x e^{iF/h} r1 v,  Gamma_- v (x) = int_{x0}^x e^{-iF/h} r2 v.
GridFunction gamma_plus(const NormalFormProblem& prob, const RealGridFunction& F, const GridFunction& v);
GridFunction gamma_minus(const NormalFormProblem& prob, const RealGridFunction& F, const GridFunction& v);
GridFunction gamma_plus(const NormalFormProblem& prob, const GridFunction& v);
GridFunction gamma_minus(const NormalFormProblem& prob, const GridFunction& v);

/// (K1 v, K2 v) with K1 = -Gamma_+ Gamma_-, K2 = -Gamma_- Gamma_+.
std::pair<GridFunction, GridFunction> k_operators(const NormalFormProblem& prob, const GridFunction& v);

/// Truncated Neumann series for (I + Gamma_+ Gamma_-) u1 = a1 - i a2 Gamma_+(1)
/// and (I + Gamma_- Gamma_+) w = a2 - i a1 Gamma_-(1), powers 0..terms.
ModelSolution neumann_solve(const NormalFormProblem& prob, cplx alpha1, cplx alpha2, int terms = 8);

/// Adaptive Runge-Kutta-Fehlberg 7(8) on the original system, tolerance tol.
ModelSolution ode_oracle(const NormalFormProblem& prob, cplx alpha1, cplx alpha2, double tol = 1e-11);

struct ExtractionOptions {
  double eps = 0.05;                ///< x+ = x1 - eps unless x_plus is given
  std::optional<double> x_plus;
  int window = 65;                  ///< grid points averaged around x+
};

/// Columns are the outgoing coefficients of the solves with alpha = (1,0), (0,1).
TransferMatrix extract_transfer(const NormalFormProblem& prob, const ModelSolution& e1, const ModelSolution& e2,
                                const ExtractionOptions& opt = {});

/// Leading-order prediction I - i h^{1/(m+1)} [[0, r1(0) w], [r2(0) conj(w), 0]].
TransferMatrix predict_model_transfer(const NormalFormProblem& prob);

/// Model omega = 2 mu_m(sgn f^{(m)}(0) pi / 2(m+1)) Gamma((m+2)/(m+1)) ((m+1)!/|f^{(m)}(0)|)^{1/(m+1)}.
cplx model_omega(int m, double f_m_0);

}  // namespace crossing
