#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crossing/corpus.hpp"
#include "crossing/error.hpp"
#include "crossing/normalform.hpp"

using namespace crossing;
using std::numbers::pi;

namespace {

NormalFormProblem monomial(int m, double h, Coupling r = Coupling::bump(1.0, 0.5)) {
  std::vector<double> c(m + 1, 0.0);
  c[m] = 1.0;
  return NormalFormProblem::polynomial(Poly1(c), r, r, -1.0, 1.0, h);
}

GridFunction constant_on(const RealGridFunction& F, cplx v) {
  return GridFunction{F.x0, F.dx, std::vector<cplx>(F.size(), v)};
}

double sup_diff(const GridFunction& a, const GridFunction& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

}  // namespace

TEST(AntiderivativeF, Polynomials) {
  for (int m : {1, 2}) {
    const auto p = monomial(m, 1e-2);
    const auto F = antiderivative_F(p);
    double err = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) err = std::max(err, std::abs(F.values[i] - std::pow(F.x(i), m + 1) / (m + 1)));
    EXPECT_LT(err, 1e-12) << m;
  }
}

TEST(AntiderivativeF, ConstantWhereFVanishes) {
  NormalFormProblem p = monomial(1, 1e-2, Coupling::zero());
  p.f = [](double x) { return x > 0.5 ? std::pow(x - 0.5, 3) : 0.0; };
  const auto F = antiderivative_F(p);
  for (std::size_t i = 0; i < F.size(); ++i)
    if (F.x(i) <= 0.5) EXPECT_LT(std::abs(F.values[i]), 1e-14);
}

TEST(GammaOperators, ZeroInput) {
  const auto p = monomial(1, 1e-2);
  const auto F = antiderivative_F(p);
  const auto z = constant_on(F, 0.0);
  EXPECT_EQ(gamma_plus(p, F, z).sup_norm(), 0.0);
  EXPECT_EQ(gamma_minus(p, F, z).sup_norm(), 0.0);
  const auto [k1, k2] = k_operators(p, z);
  EXPECT_EQ(k1.sup_norm(), 0.0);
  EXPECT_EQ(k2.sup_norm(), 0.0);
}

TEST(GammaOperators, FresnelValueAndIncomingQuiescence) {
  const double h = 1e-4;
  const auto p = monomial(1, h);
  const auto F = antiderivative_F(p);
  const auto gm = gamma_minus(p, F, constant_on(F, 1.0));
  const cplx expected = std::sqrt(2 * pi * h) * std::polar(1.0, -pi / 4);
  const cplx out = gm.values.back();
  EXPECT_LT(std::abs(out - expected), 2.0 * h);
  for (std::size_t i = 0; i < gm.size(); ++i)
    if (gm.x(i) <= -0.5) EXPECT_EQ(gm.values[i], cplx(0.0));
  const auto gp = gamma_plus(p, F, constant_on(F, 1.0));
  EXPECT_LT(std::abs(gp.values.back() - std::conj(expected)), 2.0 * h);
}

TEST(KOperators, NormBounds) {
  // ||K(1)|| ~ C h log(1/h) and ||K v|| ~ C h^{1/2} ||v|| with C stable over the sweep
  std::vector<double> c1, c2;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<double, 6> a{}, b{};
  for (int k = 0; k < 6; ++k) a[k] = u(rng), b[k] = u(rng);
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const auto p = monomial(1, h);
    const auto F = antiderivative_F(p);
    const auto [k1, k2] = k_operators(p, constant_on(F, 1.0));
    c1.push_back(std::max(k1.sup_norm(), k2.sup_norm()) / (h * std::log(1.0 / h)));
    // resonant input e^{iF/h} times a random smooth profile saturates the bound
    GridFunction v = constant_on(F, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (int k = 0; k < 6; ++k) v.values[i] += cplx(a[k], b[k]) * std::cos((k + 1) * v.x(i) + a[k]);
      v.values[i] *= std::polar(1.0, F.values[i] / h);
    }
    const auto [kv, kv2] = k_operators(p, v);
    c2.push_back(kv.sup_norm() / (std::sqrt(h) * v.sup_norm()));
  }
  for (const auto& c : {c1, c2}) {
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    EXPECT_LT(*hi, 10.0);
    EXPECT_LT(*hi / *lo, 3.0) << c[0] << " " << c[1] << " " << c[2];
  }
}

TEST(NeumannSolve, DecoupledIsExact) {
  const auto p = monomial(2, 1e-2, Coupling::zero());
  const cplx a(0.3, -1.0), b(2.0, 0.5);
  const auto s = neumann_solve(p, a, b);
  for (std::size_t i = 0; i < s.u1.size(); ++i) {
    EXPECT_EQ(s.u1.values[i], a);
    EXPECT_LT(std::abs(s.u2.values[i] - b * std::polar(1.0, s.F.values[i] / p.h)), 1e-14);
  }
  EXPECT_EQ(s.residual_bound, 0.0);
}

TEST(NeumannSolve, FirstOrderTermOfU2) {
  const double h = 1e-4;
  const auto p = monomial(1, h);
  const auto s = neumann_solve(p, 1.0, 0.0);
  const auto gm = gamma_minus(p, s.F, constant_on(s.F, 1.0));
  const auto w = s.w(h);
  double d = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) d = std::max(d, std::abs(w.values[i] - (-cplx(0, 1) * gm.values[i])));
  EXPECT_LT(d, 5.0 * h * std::log(1.0 / h));
}

TEST(NeumannSolve, NotContractive) {
  const auto p = monomial(1, 1e-1, Coupling::bump(4.0, 0.5));
  EXPECT_THROW(neumann_solve(p, 1.0, 0.0), Error);
  EXPECT_THROW(neumann_solve(monomial(1, 1e-2), 1.0, 0.0, 0), Error);
}

TEST(NeumannSolve, AgreesWithOdeOracleOnCorpus) {
  int compared = 0;
  for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) {
    for (const auto& [name, p] : corpus::model_problems(h)) {
      for (auto [a1, a2] : {std::pair<cplx, cplx>{1.0, 0.0}, {0.0, 1.0}, {cplx(0.5, 0.5), cplx(-1.0, 0.25)}}) {
        ModelSolution n;
        try {
          n = neumann_solve(p, a1, a2, 8);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::NotContractive);
          EXPECT_EQ(h, 1e-1) << name;
          continue;
        }
        ++compared;
        const auto o = ode_oracle(p, a1, a2);
        const double d = std::max(sup_diff(n.u1, o.u1), sup_diff(n.u2, o.u2));
        EXPECT_LT(d, std::max(1e-7, 5.0 * n.residual_bound)) << name << " h=" << h;
      }
    }
  }
  EXPECT_GE(compared, 54);
}

TEST(OdeOracle, DecoupledAndNormConservation) {
  const auto z = ode_oracle(monomial(1, 1e-2, Coupling::zero()), 1.0, 1.0);
  for (std::size_t i = 0; i < z.u1.size(); ++i) {
    EXPECT_LT(std::abs(z.u1.values[i] - 1.0), 1e-10);
    EXPECT_LT(std::abs(z.u2.values[i] - std::polar(1.0, z.F.values[i] / 1e-2)), 1e-10);
  }
  const auto s = ode_oracle(monomial(1, 1e-3), cplx(0.6, 0.1), cplx(-0.2, 0.7));
  EXPECT_LT(s.norm_drift, 1e-8);
}

TEST(OdeOracle, Linearity) {
  const auto p = corpus::model_problems(1e-2)[3].problem;
  const auto e1 = ode_oracle(p, 1.0, 0.0), e2 = ode_oracle(p, 0.0, 1.0);
  const cplx a(0.3, -0.8), b(1.1, 0.4);
  const auto s = ode_oracle(p, a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < s.u1.size(); ++i) {
    d = std::max(d, std::abs(s.u1.values[i] - a * e1.u1.values[i] - b * e2.u1.values[i]));
    d = std::max(d, std::abs(s.u2.values[i] - a * e1.u2.values[i] - b * e2.u2.values[i]));
  }
  EXPECT_LT(d, 1e-10);
}

TEST(ExtractTransfer, IdentityWhenDecoupled) {
  const auto p = monomial(1, 1e-2, Coupling::zero());
  const auto T = extract_transfer(p, neumann_solve(p, 1.0, 0.0), neumann_solve(p, 0.0, 1.0));
  EXPECT_LT(T.max_abs_diff(TransferMatrix::identity(1e-2)), 1e-14);
  EXPECT_EQ(T.kind, TransferMatrix::Kind::Extracted);
}

TEST(ExtractTransfer, WindowInsideSupport) {
  const auto p = monomial(1, 1e-2);
  const auto e1 = neumann_solve(p, 1.0, 0.0), e2 = neumann_solve(p, 0.0, 1.0);
  ExtractionOptions opt;
  opt.x_plus = 0.45;
  try {
    extract_transfer(p, e1, e2, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowInsideSupport);
  }
}

TEST(ExtractTransfer, ConsistentUnderWindowAndPosition) {
  const auto p = monomial(2, 1e-3);
  const auto e1 = ode_oracle(p, 1.0, 0.0), e2 = ode_oracle(p, 0.0, 1.0);
  const auto T = extract_transfer(p, e1, e2);
  ExtractionOptions wide;
  wide.window = 129;
  EXPECT_LT(extract_transfer(p, e1, e2, wide).max_abs_diff(T), 1e-6);
  ExtractionOptions moved;
  moved.x_plus = 0.7;
  EXPECT_LT(extract_transfer(p, e1, e2, moved).max_abs_diff(T), 1e-6);
}

TEST(ExtractTransfer, TransversalAsymptotics) {
  const double h = 1e-4;
  const auto p = monomial(1, h);
  const auto T = extract_transfer(p, neumann_solve(p, 1.0, 0.0), neumann_solve(p, 0.0, 1.0));
  const cplx omega = std::sqrt(2 * pi) * std::polar(1.0, pi / 4);
  const cplx t21 = -cplx(0, 1) * std::sqrt(h) * std::conj(omega);
  EXPECT_LT(std::abs(T(1, 0) / t21 - 1.0), 1e-2);
  EXPECT_NEAR(std::arg(T(1, 0)), -3 * pi / 4, 5e-3);
  EXPECT_LT(std::abs(T(0, 0) - 1.0), 5.0 * h * std::log(1.0 / h));
  EXPECT_LT(predict_model_transfer(p).max_abs_diff(T), 1e-3);
}

TEST(ModelOmega, Values) {
  EXPECT_LT(std::abs(model_omega(1, 1.0) - std::sqrt(2 * pi) * std::polar(1.0, pi / 4)), 1e-14);
  EXPECT_NEAR(model_omega(2, 2.0).real(), 2.23070705182449574143, 1e-12);
  EXPECT_EQ(model_omega(2, 2.0).imag(), 0.0);
  EXPECT_THROW(model_omega(1, 0.0), Error);
}

TEST(NormalFormProblem, Validation) {
  auto p = monomial(1, 1e-2);
  EXPECT_NO_THROW(p.validate());
  p.points_per_period = 8;
  EXPECT_THROW(p.validate(), Error);
  auto q = NormalFormProblem::polynomial(Poly1{0.0, 1.0}, Coupling::bump(1.0, 1.5), Coupling::zero(), -1.0, 1.0, 1e-2);
  EXPECT_THROW(q.validate(), Error);
  // f = x (x - 0.3) vanishes inside the support
  auto r = NormalFormProblem::polynomial(Poly1{0.0, -0.3, 1.0}, Coupling::bump(1.0, 0.5), Coupling::zero(), -1.0, 1.0, 1e-2);
  EXPECT_THROW(r.validate(), Error);
}
