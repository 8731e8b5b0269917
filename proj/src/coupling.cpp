#include "crossing/coupling.hpp"

#include <cmath>
#include <sstream>

#include "crossing/error.hpp"

namespace crossing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// 1 at t <= 0, 0 at t >= 1, smooth in between.
double smooth_step_down(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = psi(1.0 - t);
  return a / (a + psi(t));
}

}  // namespace

Coupling Coupling::constant(double amplitude) {
  Coupling c;
  c.shape_ = Shape::Constant;
  c.amplitude_ = amplitude;
  return c;
}

Coupling Coupling::bump(double amplitude, double radius, double center) {
  if (!(radius > 0.0)) throw Error(ErrorCode::Domain, "bump radius must be positive");
  Coupling c;
  c.shape_ = Shape::Bump;
  c.amplitude_ = amplitude;
  c.center_ = center;
  c.outer_ = radius;
  return c;
}

Coupling Coupling::plateau(double amplitude, double inner, double outer, double center) {
  if (!(inner >= 0.0) || !(outer > inner)) throw Error(ErrorCode::Domain, "plateau needs 0 <= inner < outer");
  Coupling c;
  c.shape_ = Shape::Plateau;
  c.amplitude_ = amplitude;
  c.center_ = center;
  c.inner_ = inner;
  c.outer_ = outer;
  return c;
}

double Coupling::operator()(double x) const noexcept {
  const double d = std::abs(x - center_);
  switch (shape_) {
    case Shape::Zero: return 0.0;
    case Shape::Constant: return amplitude_;
    case Shape::Bump: {
      if (d >= outer_) return 0.0;
      const double u = d / outer_;
      return amplitude_ * std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
    case Shape::Plateau: return amplitude_ * smooth_step_down((d - inner_) / (outer_ - inner_));
  }
  return 0.0;
}

double Coupling::support_lo() const noexcept {
  if (is_zero()) return kInf;
  if (shape_ == Shape::Constant) return -kInf;
  return center_ - outer_;
}

double Coupling::support_hi() const noexcept {
  if (is_zero()) return -kInf;
  if (shape_ == Shape::Constant) return kInf;
  return center_ + outer_;
}

bool Coupling::vanishes_on(double a, double b) const noexcept {
  if (is_zero()) return true;
  return b <= support_lo() || a >= support_hi();
}

std::string Coupling::describe() const {
  std::ostringstream os;
  switch (shape_) {
    case Shape::Zero: os << "zero"; break;
    case Shape::Constant: os << "constant(" << amplitude_ << ")"; break;
    case Shape::Bump: os << "bump(a=" << amplitude_ << ", r=" << outer_ << ", c=" << center_ << ")"; break;
    case Shape::Plateau:
      os << "plateau(a=" << amplitude_ << ", inner=" << inner_ << ", outer=" << outer_ << ", c=" << center_ << ")";
      break;
  }
  return os.str();
}

}  // namespace crossing
