// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "crossing/corpus.hpp"
#include "crossing/error.hpp"
#include "crossing/normalform.hpp"
#include "crossing/oscquad.hpp"
#include "crossing/schrodinger.hpp"
#include "crossing/sweep.hpp"
#include "crossing/symbolcalc.hpp"

using namespace crossing;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const cplx kOmega1 = std::sqrt(2 * pi) * std::polar(1.0, pi / 4);
constexpr double kTwoPiAi0 = 2.230707051824496;

Outcome stationary_phase_m1() {
  Outcome o;
  const auto ph = PhaseSpec::monomial(1, 1.0);
  double lead = 0.0;
  std::vector<double> c;
  for (double h : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const cplx ref = kOmega1 * std::sqrt(h);
    const cplx lt = osc_leading_term(ph, 1.0, h);
    lead = std::max(lead, std::abs(lt - ref) / std::abs(ref));
    const auto r = osc_integral_numeric(ph, AmplitudeSpec::constant(1.0, -1.0, 1.0), h, -1.0, 1.0);
    c.push_back(std::abs(r.value - lt) / std::abs(lt) / std::sqrt(h));
  }
  o.check(lead <= 1e-12, fmt("leading term rel err %.1e <= 1e-12", lead));
  const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
  const double mid = 0.5 * (*lo + *hi);
  const double spread = (*hi - *lo) / (2 * mid);
  o.check(spread <= 0.2, fmt("rel err / h^1/2 in [%.4f, %.4f], spread %.3f <= 0.2", *lo, *hi, spread));
  return o;
}

Outcome airy_m2() {
  Outcome o;
  const double lhs = std::sqrt(3.0) * gamma_real(4.0 / 3.0) * std::cbrt(3.0);
  const double rhs = 2 * pi / (std::pow(3.0, 2.0 / 3.0) * gamma_real(2.0 / 3.0));
  o.check(std::abs(lhs - rhs) <= 1e-10, fmt("identity %.16f vs %.16f", lhs, rhs));
  const double h = 1e-5;
  const auto r = osc_integral_numeric(PhaseSpec::monomial(2, 2.0), AmplitudeSpec::from_coupling(Coupling::bump(1.0, 1.0)),
                                      h, -1.0, 1.0);
  const double rel = std::abs(r.value / (kTwoPiAi0 * std::cbrt(h)) - 1.0);
  o.check(rel <= 3e-2, fmt("numeric vs 2.2307 h^1/3 rel %.2e <= 3e-2", rel));
  return o;
}

void add_verdicts(Outcome& o, const SweepReport& rep, std::initializer_list<const char*> names) {
  for (const char* n : names)
    for (const auto& v : rep.verdicts)
      if (v.name == n) o.check(v.pass, fmt((std::string(n) + " %.4g in [%.4g, %.4g]").c_str(), v.value, v.lo, v.hi));
}

double worst_angle(const SweepReport& rep, int i, int j, double target) {
  double w = 0.0;
  for (const auto& r : rep.rows) w = std::max(w, std::abs(std::arg(r.extracted(i, j) * std::polar(1.0, -target))));
  return w;
}

Outcome model_m1(const SweepReport& rep) {
  Outcome o;
  add_verdicts(o, rep, {"rows.ok", "t21.exponent", "t21.prefactor"});
  const auto* f = rep.fit("t21");
  if (f) {
    const double rel = std::abs(f->prefactor / std::sqrt(2 * pi) - 1.0);
    o.check(rel <= 0.1, fmt("prefactor %.5f vs sqrt(2 pi) rel %.3f <= 0.1", f->prefactor, rel));
  }
  const double a = worst_angle(rep, 1, 0, -3 * pi / 4);
  o.check(a <= 0.1, fmt("max |arg t21 + 3pi/4| %.4f <= 0.1", a));
  return o;
}

Outcome model_m2(const SweepReport& rep) {
  Outcome o;
  add_verdicts(o, rep, {"rows.ok", "t21.exponent", "t12.exponent"});
  const double w = std::abs(model_omega(2, 2.0));
  for (const char* n : {"t21", "t12"})
    if (const auto* f = rep.fit(n)) {
      const double rel = std::abs(f->prefactor / w - 1.0);
      o.check(rel <= 0.1, fmt((std::string(n) + " prefactor %.5f vs %.5f rel %.3f <= 0.1").c_str(), f->prefactor, w, rel));
    }
  const double a21 = worst_angle(rep, 1, 0, -pi / 2), a12 = worst_angle(rep, 0, 1, -pi / 2);
  o.check(std::max(a21, a12) <= 0.05, fmt("max |arg(i t)| t21 %.2e, t12 %.2e <= 0.05", a21, a12));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  double worst = 0.0;
  for (const auto& [name, p] : corpus::model_problems(1e-2))
    for (auto [a1, a2] : {std::pair<cplx, cplx>{1.0, 0.0}, {0.0, 1.0}}) {
      const auto n = neumann_solve(p, a1, a2, 8);
      const auto e = ode_oracle(p, a1, a2);
      for (std::size_t i = 0; i < n.u1.size(); ++i)
        worst = std::max({worst, std::abs(n.u1.values[i] - e.u1.values[i]), std::abs(n.u2.values[i] - e.u2.values[i])});
    }
  o.check(worst <= 1e-7, fmt("sup |neumann - ode| %.2e <= 1e-7 over 6 problems", worst));
  return o;
}

Outcome diagonal_remainder(const SweepReport& m1, const SweepReport& m2) {
  Outcome o;
  for (const auto* rep : {&m1, &m2})
    for (const char* n : {"t11-1", "t22-1"})
      if (const auto* f = rep->fit(n)) {
        const double e = 2.0 / (rep->m + 1);
        o.check(f->fit.exponent >= e - 0.1 && f->fit.exponent <= e + 0.15,
                "m=" + std::to_string(rep->m) + " " + n +
                    fmt(" exponent %.4f in [%.4f, %.4f]", f->fit.exponent, e - 0.1, e + 0.15));
      } else {
        o.check(false, std::string("missing fit ") + n);
      }
  return o;
}

Poly2 random_integer_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, 3);
  Poly2 p;
  for (int t = 0; t < 4; ++t) p += Poly2::monomial(deg(rng), deg(rng), coef(rng));
  return p;
}

Outcome bracket_identities() {
  Outcome o;
  std::mt19937 rng(1729);
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    const Poly2 a = random_integer_poly(rng), b = random_integer_poly(rng), c = random_integer_poly(rng);
    bad += !(poisson_bracket(a, b) == -poisson_bracket(b, a));
    bad += !(poisson_bracket(a, b * c) == poisson_bracket(a, b) * c + b * poisson_bracket(a, c));
  }
  o.check(bad == 0, fmt("antisymmetry/Leibniz exact failures %g of 200", bad));

  bad = 0;
  for (int n = 1; n <= 3; ++n) {
    std::vector<double> d(n + 1, 0.0);
    d[n] = 3.0;
    SchrodingerProblem p;
    p.V1 = Poly1{0.0, 1.0, -1.0};
    p.V2 = p.V1 + Poly1(d);
    p.E0 = 4.0;
    p.W = Coupling::constant(1.0);
    const double D = (p.V2 - p.V1).derivative_at_zero(n);
    const auto cd = build_crossing_data(p, CrossingPoint::Plus);
    bad += !(cd.m == n && cd.bracket_m == std::pow(2.0 * p.xi0(), n) * D);
  }
  o.check(bad == 0, fmt("H^n p2 (0, xi0) = 2^n xi0^n D exact failures %g of 3", bad));

  double worst = 0.0;
  int sign_bad = 0, count = 0;
  for (const auto& tc : corpus::tangential_symbols()) {
    const auto d = crossing_data(tc.p1, tc.p2, 1.0, 1.0);
    if (d.m < 2) continue;
    const double c = d.s * d.c_prime;
    worst = std::max(worst, std::abs(d.bracket_m / (-std::pow(c, d.m - 1) * d.bracket_m_21) - 1.0));
    const auto k = normal_form_constants(tc.p1, tc.p2, d);
    sign_bad += (k.c > 0 ? 1 : -1) != d.s;
    ++count;
  }
  o.check(worst <= 1e-10 && count > 0, fmt("bracket symmetry rel err %.1e <= 1e-10 on %g cases", worst, count));
  o.check(sign_bad == 0, fmt("sgn c = s failures %g of %g", sign_bad, count));
  return o;
}

Outcome formula_paths() {
  Outcome o;
  double worst = 0.0;
  for (double h : {1e-2, 1e-3})
    for (const auto& [name, p] : corpus::schrodinger_case_i(h))
      for (auto which : {CrossingPoint::Plus, CrossingPoint::Minus})
        worst = std::max(worst,
                         predict_transfer_case_i(p, which).max_abs_diff(transfer_predicted_general(build_crossing_data(p, which), h)));
  o.check(worst <= 1e-10, fmt("max entry difference %.1e <= 1e-10", worst));
  return o;
}

Outcome schrodinger_numeric() {
  Outcome o;
  const auto rel = [](const TransferMatrix& n, const TransferMatrix& p) {
    return std::max(std::abs(n(0, 1) / p(0, 1) - 1.0), std::abs(n(1, 0) / p(1, 0) - 1.0));
  };
  const auto p3 = corpus::schrodinger_n1(1e-3);
  const double plus = rel(numeric_transfer_case_i(p3, CrossingPoint::Plus).T, predict_transfer_case_i(p3, CrossingPoint::Plus));
  o.check(plus <= 0.15, fmt("h=1e-3 off-diagonal rel err %.4f <= 0.15", plus));
  const double minus =
      rel(numeric_transfer_case_i(p3, CrossingPoint::Minus).T, predict_transfer_case_i(p3, CrossingPoint::Minus));
  o.check(minus <= 0.15, fmt("minus crossing conjugate placement rel err %.4f <= 0.15", minus));

  std::vector<std::pair<double, double>> t21, t12;
  for (double h : geometric_grid(1e-2, std::pow(10.0, -3.5), 7)) {
    const auto T = numeric_transfer_case_i(corpus::schrodinger_n1(h), CrossingPoint::Plus).T;
    t21.emplace_back(h, std::abs(T(1, 0)));
    t12.emplace_back(h, std::abs(T(0, 1)));
  }
  for (auto* pts : {&t21, &t12}) {
    const double e = fit_power_law(*pts, false).exponent;
    o.check(std::abs(e - 0.5) <= 0.03, fmt(pts == &t21 ? "t21 exponent %.4f" : "t12 exponent %.4f", e));
  }
  return o;
}

Outcome gaussian() {
  Outcome o;
  const double h = 1e-3;
  const double half = 12 * std::sqrt(h);
  const std::size_t n = 6001;
  for (double lam : {-2.0, 0.0, 1.0}) {
    GridFunction v{-half, 2 * half / (n - 1), std::vector<cplx>(n)};
    for (std::size_t i = 0; i < n; ++i) v.values[i] = std::polar(1.0, lam * v.x(i) * v.x(i) / (2 * h));
    const double err = std::abs(gaussian_pairing(v, h) - std::pow(cplx(1.0, -lam), -0.5));
    o.check(err <= 1e-3, fmt("lambda %g err %.1e <= 1e-3", lam, err));
  }
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  const auto run = [&](int id, const char* title, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s criterion %2d %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", id, title, s, o.detail.c_str());
    std::fflush(stdout);
  };

  SweepReport m1, m2;
  const auto sweep = [](int m, double hmin) {
    auto rep = run_sweep(corpus::model_monomial(m, 1e-2), geometric_grid(1e-2, hmin, 12));
    evaluate_verdicts(rep, {});
    return rep;
  };

  run(1, "stationary phase m=1", stationary_phase_m1);
  run(2, "Airy constant m=2", airy_m2);
  run(3, "model transfer m=1", [&] { return model_m1(m1 = sweep(1, 1e-4)); });
  run(4, "model transfer m=2", [&] { return model_m2(m2 = sweep(2, 1e-5)); });
  run(5, "Neumann vs ODE oracle", oracle_equivalence);
  run(6, "diagonal remainder", [&] { return diagonal_remainder(m1, m2); });
  run(7, "bracket identities", bracket_identities);
  run(8, "formula paths agree", formula_paths);
  run(9, "Schrodinger case (i) n=1", schrodinger_numeric);
  run(10, "Gaussian pairing", gaussian);
  return failed;
}
