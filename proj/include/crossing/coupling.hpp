#pragma once

#include <limits>
#include <string>

namespace crossing {

/// Real coupling profile used as a multiplication operator: the r_j of the
/// reduced system and the W of the Schrodinger system.
class Coupling {
 public:
  enum class Shape { Zero, Constant, Bump, Plateau };

  Coupling() = default;
  static Coupling zero() { return Coupling(); }
  static Coupling constant(double amplitude);
  /// amplitude * exp(1 - 1/(1 - ((x - center)/radius)^2)) inside the radius.
  static Coupling bump(double amplitude, double radius, double center = 0.0);
  /// Equal to amplitude for |x - center| <= inner, smoothly decaying to zero
  /// at |x - center| = outer; every derivative vanishes on the flat part.
  static Coupling plateau(double amplitude, double inner, double outer, double center = 0.0);

  double operator()(double x) const noexcept;
  double at_zero() const noexcept { return (*this)(0.0); }

  Shape shape() const noexcept { return shape_; }
  double amplitude() const noexcept { return amplitude_; }
  double center() const noexcept { return center_; }
  double inner() const noexcept { return inner_; }
  double outer() const noexcept { return outer_; }

  bool is_zero() const noexcept { return shape_ == Shape::Zero || amplitude_ == 0.0; }
  bool is_compact() const noexcept { return shape_ != Shape::Constant || is_zero(); }
  /// Closed support; empty profiles report [+inf, -inf].
  double support_lo() const noexcept;
  double support_hi() const noexcept;
  bool vanishes_on(double a, double b) const noexcept;

  std::string describe() const;

 private:
  Shape shape_ = Shape::Zero;
  double amplitude_ = 0.0;
  double center_ = 0.0;
  double inner_ = 0.0;
  double outer_ = 0.0;
};

}  // namespace crossing
