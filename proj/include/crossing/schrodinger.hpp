#pragma once

#include <array>
#include <utility>
#include <vector>

#include "crossing/coupling.hpp"
#include "crossing/poly.hpp"
#include "crossing/symbolcalc.hpp"
#include "crossing/transfer.hpp"

namespace crossing {

/// (h D_x)^2 u_j + (V_j - E0) u_j + h W u_{3-j} = 0 on [x_in, x_out].
/// Case (i): E0 > 0 with crossings at (0, +-sqrt(E0)); case (ii): E0 = 0 with
/// a caustic crossing at (0, 0). Potentials vanish at 0.
struct SchrodingerProblem {
  Poly1 V1;
  Poly1 V2;
  Coupling W;
  double E0 = 1.0;
  double x_in = -1.0;
  double x_out = 1.0;
  double h = 1e-3;

  int n() const;  ///< vanishing order of V2 - V1 at 0
  double xi0() const;
  bool is_case_i() const { return E0 > 0.0; }
  /// Throws CaseMismatch / NoFiniteContact when the problem is not of the named case.
  void validate_case_i() const;
  void validate_case_ii() const;
};

enum class CrossingPoint { Plus, Minus, Caustic };

/// p_j = xi^2 + V_j - E0, recentred at the crossing; q_j(0,0) = W(0).
CrossingData build_crossing_data(const SchrodingerProblem& prob, CrossingPoint which);

/// Closed-form prefactors of the case (i) transfer matrix at (0, +xi0):
/// omega1 = mu_n(-sgn D pi/2(n+1)) Gamma((n+2)/(n+1)) (2 (n+1)!/|D|)^{1/(n+1)} (rho / xi0^n)^{1/(n+1)}
/// and omega2 = conj of the same angle with rho -> 1/rho, where
/// D = (V2 - V1)^{(n)}(0) and rho = |grad p2| / |grad p1| at the crossing.
Omega12 omega_case_i(const SchrodingerProblem& prob);

/// Case (ii) prefactors, both real.
Omega12 omega_case_ii(const SchrodingerProblem& prob);

TransferMatrix predict_transfer_case_i(const SchrodingerProblem& prob, CrossingPoint which);
TransferMatrix predict_transfer_case_ii(const SchrodingerProblem& prob);

/// WKB data for equation j (0 or 1): phase int_0^x sqrt(E0 - V_j), amplitude
/// c_j (1 - V_j/E0)^{-1/4} with c_j = (1 + V_j'(0)^2 / 4E0)^{1/4}.
class WkbBasis {
 public:
  explicit WkbBasis(const SchrodingerProblem& prob);
  double phase(int j, double x) const;
  double phase_derivative(int j, double x) const;
  double amplitude(int j, double x) const;
  double normalization(int j) const { return c_[j]; }
  /// Columns (sigma e^{+i phi/h}, i phi' sigma e^{+i phi/h}) and the - branch.
  std::array<std::array<cplx, 2>, 2> branch_matrix(int j, double x, double h) const;

 private:
  const SchrodingerProblem* prob_;
  std::array<double, 2> c_{};
};

/// Samples of (u1, h u1', u2, h u2').
struct SchrodingerSolution {
  std::vector<double> x;
  std::vector<std::array<cplx, 4>> y;
};

/// Branch coefficients alpha[j] = (alpha_{j,+}, alpha_{j,-}) at x_start.
using BranchData = std::array<std::array<cplx, 2>, 2>;

/// Integrates from x_start to x_end (either direction) with RKF 7(8);
/// returns `samples` equally spaced observations including both ends.
SchrodingerSolution solve_schrodinger_ode(const SchrodingerProblem& prob, const BranchData& initial, double x_start,
                                          double x_end, int samples = 2, double tol = 1e-11);

/// Solves [u; h u'] = M(x) [alpha_+; alpha_-] for equation j.
std::array<cplx, 2> branch_decompose(const WkbBasis& basis, int j, double x, cplx u, cplx hu_prime, double h);

struct NumericTransfer {
  TransferMatrix T;          ///< outgoing coefficients on the incoming branch
  TransferMatrix reflected;  ///< coefficients on the opposite branch at the exit
};

/// Plus: incoming + branches at x_in, read + branches at x_out - eps.
/// Minus: incoming - branches at x_out, integrated backwards, read - branches
/// at x_in + eps.
NumericTransfer numeric_transfer_case_i(const SchrodingerProblem& prob, CrossingPoint which, double eps = 0.0,
                                        double tol = 1e-11);

}  // namespace crossing
