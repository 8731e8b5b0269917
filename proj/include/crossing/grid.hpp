#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace crossing {

using cplx = std::complex<double>;

/// Samples of a function on the uniform grid x_i = x0 + i*dx, i < size().
template <class T>
struct BasicGridFunction {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<T> values;

  std::size_t size() const noexcept { return values.size(); }
  double x(std::size_t i) const noexcept { return x0 + dx * static_cast<double>(i); }
  double x_end() const noexcept { return x(values.empty() ? 0 : values.size() - 1); }
  /// Index of the grid point nearest to x, clamped to the grid.
  std::size_t index_of(double x) const noexcept;
  double sup_norm() const noexcept;
};

using GridFunction = BasicGridFunction<cplx>;
using RealGridFunction = BasicGridFunction<double>;

/// Uniform grid on [a, b] with n points (n >= 2).
struct UniformGrid {
  double a = 0.0;
  double b = 1.0;
  std::size_t n = 2;

  double dx() const noexcept { return (b - a) / static_cast<double>(n - 1); }
  double x(std::size_t i) const noexcept { return i + 1 == n ? b : a + dx() * static_cast<double>(i); }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

/// Integral of a smooth function over [a, b] by composite Gauss-Legendre.
template <class F>
auto integrate_smooth(F&& f, double a, double b, int panels = 16, int order = 16) {
  const GaussRule& g = gauss_legendre(order);
  const double w = (b - a) / panels;
  decltype(f(a)) acc{};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * w;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) acc += g.weights[k] * f(mid + 0.5 * w * g.nodes[k]);
  }
  return acc * (0.5 * w);
}

/// Running integral of uniformly sampled data, starting from 0 at index 0.
/// Each cell is integrated with the degree-9 Lagrange interpolant through the
/// ten nearest samples (fewer if the grid is shorter).
std::vector<cplx> cumulative_integral(std::span<const cplx> samples, double dx);
std::vector<double> cumulative_integral(std::span<const double> samples, double dx);

/// Integral of uniformly sampled data over the whole grid (same local rule).
cplx integrate_samples(std::span<const cplx> samples, double dx);

}  // namespace crossing
