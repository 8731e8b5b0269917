#include "crossing/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crossing {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Poly1::Poly1(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Poly1::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Poly1::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly1 Poly1::derivative(int k) const {
  std::vector<double> c = coeffs_;
  for (int step = 0; step < k; ++step) {
    if (c.empty()) break;
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    c = std::move(d);
  }
  return Poly1(std::move(c));
}

double Poly1::derivative_at_zero(int k) const noexcept {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return fact * coeffs_[static_cast<std::size_t>(k)];
}

int Poly1::vanishing_order() const noexcept {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0.0) return static_cast<int>(i);
  return -1;
}

Poly1 operator+(const Poly1& a, const Poly1& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Poly1(std::move(c));
}

Poly1 operator-(const Poly1& a, const Poly1& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return Poly1(std::move(c));
}

Poly2::Poly2(CoeffMap coeffs) {
  for (const auto& [k, c] : coeffs) add_term(k.first, k.second, c);
}

Poly2 Poly2::constant(double c) { return monomial(0, 0, c); }
Poly2 Poly2::x() { return monomial(1, 0); }
Poly2 Poly2::xi() { return monomial(0, 1); }

Poly2 Poly2::monomial(int i, int j, double c) {
  Poly2 p;
  p.add_term(i, j, c);
  return p;
}

Poly2 Poly2::from_x(const Poly1& p) {
  Poly2 out;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) out.add_term(static_cast<int>(i), 0, p.coeffs()[i]);
  return out;
}

void Poly2::add_term(int i, int j, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = coeffs_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) coeffs_.erase(it);
  }
}

double Poly2::coeff(int i, int j) const noexcept {
  auto it = coeffs_.find({i, j});
  return it == coeffs_.end() ? 0.0 : it->second;
}

int Poly2::total_degree() const noexcept {
  int d = -1;
  for (const auto& [k, c] : coeffs_) d = std::max(d, k.first + k.second);
  return d;
}

double Poly2::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Poly2::operator()(double x, double xi) const noexcept {
  double acc = 0.0;
  for (const auto& [k, c] : coeffs_) acc += c * ipow(x, k.first) * ipow(xi, k.second);
  return acc;
}

Poly2 Poly2::dx() const {
  Poly2 out;
  for (const auto& [k, c] : coeffs_)
    if (k.first > 0) out.add_term(k.first - 1, k.second, c * k.first);
  return out;
}

Poly2 Poly2::dxi() const {
  Poly2 out;
  for (const auto& [k, c] : coeffs_)
    if (k.second > 0) out.add_term(k.first, k.second - 1, c * k.second);
  return out;
}

Poly2 Poly2::shifted(double a, double b) const {
  Poly2 out;
  for (const auto& [k, c] : coeffs_) {
    const auto [i, j] = k;
    for (int p = 0; p <= i; ++p) {
      const double cx = binomial(i, p) * ipow(a, i - p);
      if (cx == 0.0) continue;
      for (int q = 0; q <= j; ++q) {
        const double cxi = binomial(j, q) * ipow(b, j - q);
        out.add_term(p, q, c * cx * cxi);
      }
    }
  }
  return out;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [k, c] : o.coeffs_) add_term(k.first, k.second, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [k, c] : o.coeffs_) add_term(k.first, k.second, -c);
  return *this;
}

Poly2& Poly2::operator*=(double s) {
  if (s == 0.0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= s;
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 out;
  for (const auto& [ka, ca] : a.coeffs_)
    for (const auto& [kb, cb] : b.coeffs_) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return out;
}

std::string Poly2::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    os << std::abs(c);
    if (k.first > 0) os << "*x^" << k.first;
    if (k.second > 0) os << "*xi^" << k.second;
  }
  return os.str();
}

}  // namespace crossing
