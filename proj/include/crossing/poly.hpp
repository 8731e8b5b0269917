#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace crossing {

/// Real polynomial in one variable, coefficients in increasing degree.
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(std::vector<double> coeffs);
  Poly1(std::initializer_list<double> coeffs) : Poly1(std::vector<double>(coeffs)) {}

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  double operator()(double x) const noexcept;
  Poly1 derivative(int k = 1) const;
  /// k-th derivative at the origin, k! * c_k.
  double derivative_at_zero(int k) const noexcept;
  /// Smallest k with a nonzero coefficient; -1 for the zero polynomial.
  int vanishing_order() const noexcept;

  friend Poly1 operator+(const Poly1& a, const Poly1& b);
  friend Poly1 operator-(const Poly1& a, const Poly1& b);
  friend bool operator==(const Poly1&, const Poly1&) = default;

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// Bivariate polynomial symbol p(x, xi) stored as a sparse map
/// (x-degree, xi-degree) -> coefficient. Zero coefficients are never stored,
/// so equality of two Poly2 values is equality of their coefficient maps.
class Poly2 {
 public:
  using Key = std::pair<int, int>;
  using CoeffMap = std::map<Key, double>;

  Poly2() = default;
  explicit Poly2(CoeffMap coeffs);
  static Poly2 constant(double c);
  static Poly2 x();
  static Poly2 xi();
  static Poly2 monomial(int i, int j, double c = 1.0);
  /// Lifts a polynomial in x to a symbol independent of xi.
  static Poly2 from_x(const Poly1& p);

  const CoeffMap& coeffs() const noexcept { return coeffs_; }
  double coeff(int i, int j) const noexcept;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int total_degree() const noexcept;
  double max_abs_coeff() const noexcept;

  double operator()(double x, double xi) const noexcept;
  Poly2 dx() const;
  Poly2 dxi() const;
  /// p(x + a, xi + b); exact for integer data since it only uses binomials.
  Poly2 shifted(double a, double b) const;

  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  Poly2& operator*=(double s);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator-(Poly2 a) { return a *= -1.0; }
  friend Poly2 operator*(Poly2 a, double s) { return a *= s; }
  friend Poly2 operator*(double s, Poly2 a) { return a *= s; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2&, const Poly2&) = default;

  std::string to_string() const;

 private:
  void add_term(int i, int j, double c);
  CoeffMap coeffs_;
};

}  // namespace crossing
