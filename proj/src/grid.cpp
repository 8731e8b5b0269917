#include "crossing/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace crossing {

template <class T>
std::size_t BasicGridFunction<T>::index_of(double x) const noexcept {
  if (values.empty()) return 0;
  const double t = std::round((x - x0) / dx);
  if (t <= 0.0) return 0;
  const auto i = static_cast<std::size_t>(t);
  return std::min(i, values.size() - 1);
}

template <class T>
double BasicGridFunction<T>::sup_norm() const noexcept {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, static_cast<double>(std::abs(v)));
  return m;
}

template struct BasicGridFunction<cplx>;
template struct BasicGridFunction<double>;

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// weights[o][k] = integral over [o, o+1] of the k-th Lagrange basis
// polynomial on the nodes 0..p-1.
std::vector<std::vector<double>> cell_weights(int p) {
  const GaussRule& g = gauss_legendre(std::max(p, 2));
  std::vector<std::vector<double>> w(static_cast<std::size_t>(p - 1), std::vector<double>(static_cast<std::size_t>(p), 0.0));
  for (int o = 0; o + 1 < p; ++o) {
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
      const double t = o + 0.5 + 0.5 * g.nodes[q];
      for (int k = 0; k < p; ++k) {
        double l = 1.0;
        for (int j = 0; j < p; ++j)
          if (j != k) l *= (t - j) / static_cast<double>(k - j);
        w[static_cast<std::size_t>(o)][static_cast<std::size_t>(k)] += 0.5 * g.weights[q] * l;
      }
    }
  }
  return w;
}

template <class T>
std::vector<T> cumulative_impl(std::span<const T> s, double dx) {
  const std::size_t n = s.size();
  std::vector<T> out(n, T{});
  if (n < 2) return out;
  const int p = static_cast<int>(std::min<std::size_t>(10, n));
  static thread_local std::map<int, std::vector<std::vector<double>>> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, cell_weights(p)).first;
  const auto& w = it->second;
  const std::size_t half = static_cast<std::size_t>(p / 2 - 1);
  // Neumaier-compensated running sum keeps roundoff at the level of a few ulps
  // even for millions of cells.
  T sum{}, comp{};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t start = i > half ? i - half : 0;
    start = std::min(start, n - static_cast<std::size_t>(p));
    const auto& wo = w[i - start];
    T cell{};
    for (int k = 0; k < p; ++k) cell += wo[static_cast<std::size_t>(k)] * s[start + static_cast<std::size_t>(k)];
    cell *= dx;
    const T t = sum + cell;
    if constexpr (std::is_same_v<T, double>) {
      comp += std::abs(sum) >= std::abs(cell) ? (sum - t) + cell : (cell - t) + sum;
    } else {
      auto part = [](double a, double b, double tt) {
        return std::abs(a) >= std::abs(b) ? (a - tt) + b : (b - tt) + a;
      };
      comp += T(part(sum.real(), cell.real(), t.real()), part(sum.imag(), cell.imag(), t.imag()));
    }
    sum = t;
    out[i + 1] = sum + comp;
  }
  return out;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

std::vector<cplx> cumulative_integral(std::span<const cplx> samples, double dx) {
  return cumulative_impl<cplx>(samples, dx);
}

std::vector<double> cumulative_integral(std::span<const double> samples, double dx) {
  return cumulative_impl<double>(samples, dx);
}

cplx integrate_samples(std::span<const cplx> samples, double dx) {
  if (samples.size() < 2) return {};
  return cumulative_integral(samples, dx).back();
}

}  // namespace crossing
