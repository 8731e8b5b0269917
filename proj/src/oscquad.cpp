#include "crossing/oscquad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "crossing/error.hpp"

namespace crossing {

namespace {

using std::numbers::pi;

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
  cplx value;
  double error;
};

template <class G>
PanelResult gk15(const G& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const cplx fc = g(c);
  cplx k = kWgk[7] * fc;
  cplx gs = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double d = r * kXgk[j];
    const cplx s = g(c - d) + g(c + d);
    k += kWgk[j] * s;
    if (j % 2 == 1) gs += kWg[j / 2] * s;
  }
  return {k * r, std::abs((k - gs) * r)};
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

cplx mu_m(int m, double theta) {
  const double sign = (m % 2 == 0) ? -1.0 : 1.0;  // (-1)^{m+1}
  return 0.5 * (std::polar(1.0, theta) + std::polar(1.0, sign * theta));
}

double gamma_real(double x) {
  if (!(x > 0.0) || !(x <= 4.0)) throw Error(ErrorCode::Domain, "gamma_real needs 0 < x <= 4");
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  auto lanczos = [](double z) {  // Gamma(z + 1) for z >= -0.5
    double s = p[0];
    for (int k = 1; k < 9; ++k) s += p[k] / (z + k);
    const double t = z + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * s;
  };
  if (x < 0.5) return pi / (std::sin(pi * x) * lanczos(-x));
  return lanczos(x - 1.0);
}

PhaseSpec PhaseSpec::polynomial(const Poly1& F) {
  if (std::abs(F(0.0)) > 0.0) throw Error(ErrorCode::InvalidPhase, "polynomial phase must vanish at 0");
  const Poly1 dF = F.derivative();
  const int m = dF.vanishing_order();
  if (m < 1) throw Error(ErrorCode::InvalidPhase, "F' must vanish at 0 to order m >= 1");
  std::vector<Poly1> ders;
  for (int k = 0; k <= m + 2; ++k) ders.push_back(F.derivative(k));
  PhaseSpec ph;
  ph.m = m;
  ph.F = [F](double y) { return F(y); };
  ph.deriv = [ders, F](int k, double y) {
    return k < static_cast<int>(ders.size()) ? ders[k](y) : F.derivative(k)(y);
  };
  return ph;
}

PhaseSpec PhaseSpec::monomial(int m, double scale) {
  if (m < 1) throw Error(ErrorCode::InvalidPhase, "m must be positive");
  std::vector<double> c(m + 2, 0.0);
  c[m + 1] = scale / factorial(m + 1);
  return polynomial(Poly1(std::move(c)));
}

PhaseSpec PhaseSpec::negated() const {
  PhaseSpec ph = *this;
  ph.F = [f = F](double y) { return -f(y); };
  ph.deriv = [d = deriv](int k, double y) { return -d(k, y); };
  return ph;
}

void PhaseSpec::validate(double a, double b) const {
  if (m < 1) throw Error(ErrorCode::InvalidPhase, "m must be positive");
  if (!F || !deriv) throw Error(ErrorCode::InvalidPhase, "phase callables missing");
  const double top = deriv(m + 1, critical_point);
  if (!std::isfinite(top) || top == 0.0) throw Error(ErrorCode::InvalidPhase, "F^{(m+1)}(0) must be nonzero");
  const double scale = std::max(1.0, std::abs(top));
  for (int k = 1; k <= m; ++k)
    if (std::abs(deriv(k, critical_point)) > 1e-10 * scale)
      throw Error(ErrorCode::InvalidPhase, "F^{(" + std::to_string(k) + ")}(0) does not vanish");
  if (!(a < b)) return;
  constexpr int n = 4001;
  double prev = 0.0;
  double prev_y = a;
  for (int i = 0; i < n; ++i) {
    const double y = a + (b - a) * i / (n - 1);
    if (std::abs(y - critical_point) <= 1e-12 * (b - a)) {
      prev = 0.0;
      continue;
    }
    const double d = deriv(1, y);
    if (d == 0.0 || (prev != 0.0 && (d > 0) != (prev > 0) && (prev_y - critical_point) * (y - critical_point) > 0))
      throw Error(ErrorCode::InvalidPhase, "F' vanishes away from the critical point near y=" + std::to_string(y));
    prev = d;
    prev_y = y;
  }
}

AmplitudeSpec AmplitudeSpec::from_coupling(const Coupling& c) {
  AmplitudeSpec s;
  s.a = [c](double y) { return cplx(c(y)); };
  s.da = [c](double y) {
    const double e = 1e-6 * std::max(1.0, c.outer());
    return cplx((c(y + e) - c(y - e)) / (2.0 * e));
  };
  if (c.is_zero()) {
    s.lo = s.hi = 0.0;
  } else {
    s.lo = c.support_lo();
    s.hi = c.support_hi();
  }
  return s;
}

AmplitudeSpec AmplitudeSpec::constant(cplx value, double lo, double hi) {
  AmplitudeSpec s;
  s.a = [=](double y) { return (y >= lo && y <= hi) ? value : cplx(0.0); };
  s.da = [](double) { return cplx(0.0); };
  s.lo = lo;
  s.hi = hi;
  return s;
}

AmplitudeSpec AmplitudeSpec::conjugated() const {
  AmplitudeSpec s = *this;
  s.a = [f = a](double y) { return std::conj(f(y)); };
  s.da = [f = da](double y) { return std::conj(f(y)); };
  return s;
}

void AmplitudeSpec::validate() const {
  if (!a) throw Error(ErrorCode::Domain, "amplitude callable missing");
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw Error(ErrorCode::Domain, "amplitude support must be a finite interval");
  constexpr int n = 1001;
  for (int i = 0; i < n; ++i) {
    const double y = lo + (hi - lo) * i / (n - 1);
    const cplx v = a(y);
    const cplx d = da ? da(y) : cplx(0.0);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || !std::isfinite(d.real()) || !std::isfinite(d.imag()))
      throw Error(ErrorCode::Domain, "amplitude not finite at y=" + std::to_string(y));
  }
  const double w = std::max(hi - lo, 1.0);
  for (double off : {1e-3, 0.1, 0.5, 1.0, 10.0})
    if (a(lo - off * w) != cplx(0.0) || a(hi + off * w) != cplx(0.0))
      throw Error(ErrorCode::Domain, "amplitude nonzero outside its support");
}

double AmplitudeSpec::sup_norm(int samples) const {
  double s = 0.0;
  for (int i = 0; i < samples; ++i) s = std::max(s, std::abs(a(lo + (hi - lo) * i / (samples - 1))));
  return s;
}

OscResult osc_integral_numeric(const PhaseSpec& phase, const AmplitudeSpec& amp, double h, double a, double b,
                               const OscOptions& opt) {
  if (!(h > 0.0)) throw Error(ErrorCode::Domain, "h must be positive");
  if (!(a < b)) throw Error(ErrorCode::Domain, "empty interval");
  if (amp.lo < a || amp.hi > b) throw Error(ErrorCode::Domain, "interval must contain the amplitude support");
  OscResult res{};
  const double lo = std::max(a, amp.lo);
  const double hi = std::min(b, amp.hi);
  if (!(lo < hi)) return res;

  const double norm = amp.sup_norm();
  if (norm == 0.0) return res;
  const double tol = opt.abs_tol > 0.0 ? opt.abs_tol : std::max(1e-10, 1e-8 * norm * (b - a));

  auto g = [&](double y) {
    const double th = phase.F(y) / h;
    return amp.a(y) * cplx(std::cos(th), std::sin(th));
  };

  // Initial partition: breaks at the critical point, widths tied to the local period.
  std::vector<double> breaks{lo};
  const double cp = phase.critical_point;
  const double cap = (hi - lo) / 16.0;
  auto local_width = [&](double y) {
    const double d = std::abs(phase.deriv(1, y));
    return d > 0.0 ? std::min(cap, (15.0 / 16.0) * 2.0 * pi * h / d) : cap;
  };
  auto march = [&](double l, double r) {
    double y = l;
    while (r - y > 1e-14 * (hi - lo)) {
      double w = local_width(y);
      w = std::min(w, local_width(std::min(r, y + w)));
      if (r - y < 1.5 * w) w = r - y;
      y += w;
      breaks.push_back(std::min(y, r));
      if (breaks.size() * 15 > opt.max_points)
        throw Error(ErrorCode::BudgetExceeded, "initial partition exceeds the point budget");
    }
    breaks.back() = r;
  };
  if (cp > lo && cp < hi) {
    march(lo, cp);
    march(cp, hi);
  } else {
    march(lo, hi);
  }

  std::vector<std::pair<double, double>> stack;
  for (std::size_t i = breaks.size() - 1; i > 0; --i) stack.emplace_back(breaks[i - 1], breaks[i]);
  const double width_total = hi - lo;
  while (!stack.empty()) {
    auto [l, r] = stack.back();
    stack.pop_back();
    const PanelResult p = gk15(g, l, r);
    res.points += 15;
    if (res.points > opt.max_points) throw Error(ErrorCode::BudgetExceeded, "point budget exhausted before tolerance");
    const double ptol = tol * (r - l) / width_total;
    if (p.error <= ptol || (r - l) < 1e-13 * width_total) {
      res.value += p.value;
      res.error += p.error;
    } else {
      const double mid = 0.5 * (l + r);
      stack.emplace_back(mid, r);
      stack.emplace_back(l, mid);
    }
  }
  return res;
}

cplx osc_leading_term(const PhaseSpec& phase, cplx a0, double h) {
  const int m = phase.m;
  const double top = phase.top_derivative();
  if (top == 0.0) throw Error(ErrorCode::InvalidPhase, "F^{(m+1)}(0) must be nonzero");
  const double e = 1.0 / (m + 1);
  const double sg = top > 0 ? 1.0 : -1.0;
  return 2.0 * mu_m(m, sg * pi / (2.0 * (m + 1))) * gamma_real((m + 2.0) / (m + 1.0)) *
         std::pow(factorial(m + 1) / std::abs(top), e) * a0 * std::pow(h, e);
}

cplx gaussian_pairing(const GridFunction& v, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::Domain, "h must be positive");
  const double s = std::sqrt(h);
  if (v.size() < 2 || v.x0 > -8.0 * s || v.x_end() < 8.0 * s)
    throw Error(ErrorCode::GridTooCoarse, "grid must cover [-8 sqrt(h), 8 sqrt(h)]");
  if (v.dx > s / 8.0) throw Error(ErrorCode::GridTooCoarse, "grid does not resolve the Gaussian weight");
  const std::size_t i0 = v.index_of(-12.0 * s);
  const std::size_t i1 = v.index_of(12.0 * s);
  const double max_step = 2.0 * pi / 16.0;
  for (std::size_t i = i0; i < i1; ++i) {
    const cplx p = v.values[i];
    const cplx q = v.values[i + 1];
    if (std::abs(p) > 0.0 && std::abs(q) > 0.0 && std::abs(std::arg(q / p)) > max_step)
      throw Error(ErrorCode::GridTooCoarse, "grid does not resolve the oscillation of v");
  }
  std::vector<cplx> w(i1 - i0 + 1);
  for (std::size_t i = i0; i <= i1; ++i) {
    const double x = v.x(i);
    w[i - i0] = std::exp(-x * x / (2.0 * h)) * v.values[i];
  }
  return integrate_samples(w, v.dx) / std::sqrt(2.0 * pi * h);
}

}  // namespace crossing
