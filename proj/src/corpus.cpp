#include "crossing/corpus.hpp"

namespace crossing::corpus {

namespace {

Poly1 monomial(int m, double c = 1.0) {
  std::vector<double> v(m + 1, 0.0);
  v[m] = c;
  return Poly1(std::move(v));
}

SchrodingerProblem sch(Poly1 V1, Poly1 V2, double E0, double h, Coupling W = Coupling::bump(1.0, 0.5),
                       double half_width = 1.0) {
  SchrodingerProblem p;
  p.x_in = -half_width;
  p.x_out = half_width;
  p.V1 = std::move(V1);
  p.V2 = std::move(V2);
  p.E0 = E0;
  p.W = W;
  p.h = h;
  return p;
}

}  // namespace

NormalFormProblem model_monomial(int m, double h) {
  return NormalFormProblem::polynomial(monomial(m), Coupling::bump(1.0, 0.5), Coupling::bump(1.0, 0.5), -1.0, 1.0, h);
}

std::vector<NamedModel> model_problems(double h) {
  std::vector<NamedModel> out;
  for (int m = 1; m <= 3; ++m) {
    out.push_back({"m" + std::to_string(m) + "-symmetric", model_monomial(m, h)});
    // f = -x^m (1 + x/2)
    std::vector<double> c(m + 2, 0.0);
    c[m] = -1.0;
    c[m + 1] = -0.5;
    out.push_back({"m" + std::to_string(m) + "-asymmetric",
                   NormalFormProblem::polynomial(Poly1(c), Coupling::plateau(0.8, 0.1, 0.6),
                                                 Coupling::bump(1.2, 0.45, 0.05), -1.0, 1.0, h)});
  }
  return out;
}

SchrodingerProblem schrodinger_n1(double h) { return sch(Poly1{0.0, -0.5}, Poly1{0.0, 0.5}, 1.0, h); }

std::vector<NamedSchrodinger> schrodinger_case_i(double h) {
  return {
      {"n1-symmetric", schrodinger_n1(h)},
      {"n1-E0=2", sch(Poly1{0.0, 0.3}, Poly1{0.0, -0.5}, 2.0, h)},
      {"n2-flat", sch(Poly1{0.0, 2.0}, Poly1{0.0, 2.0, 1.0}, 1.0, h, Coupling::bump(1.0, 0.2), 0.3)},
      {"n2-E0=1.5", sch(Poly1{0.0, 0.3}, Poly1{0.0, 0.3, 1.0}, 1.5, h, Coupling::bump(1.0, 0.4))},
      {"n2-negative", sch(Poly1{0.0, -1.0, 1.0}, Poly1{0.0, -1.0, -1.0}, 1.5, h, Coupling::bump(0.7, 0.4), 0.5)},
      {"n3-E0=0.5", sch(Poly1{0.0, 0.2}, Poly1{0.0, 0.2, 0.0, 1.0}, 0.5, h, Coupling::bump(1.0, 0.3), 0.6)},
  };
}

std::vector<NamedSchrodinger> schrodinger_case_ii(double h) {
  return {
      {"caustic-n1", sch(Poly1{0.0, -1.0}, Poly1{0.0, -2.0}, 0.0, h)},
      {"caustic-n2", sch(Poly1{0.0, 1.0}, Poly1{0.0, 1.0, 1.0}, 0.0, h)},
      {"caustic-n3", sch(Poly1{0.0, -1.5}, Poly1{0.0, -1.5, 0.0, 2.0}, 0.0, h)},
  };
}

std::vector<SymbolPair> tangential_symbols() {
  const Poly2 x = Poly2::x(), xi = Poly2::xi();
  const Poly2 bases[] = {xi, xi + 2.0 * x, xi * xi + xi - x, 2.0 * xi + x * xi - 3.0 * x};
  std::vector<SymbolPair> out;
  for (const auto& p1 : bases)
    for (double c : {1.0, 0.5, -2.0, 3.0})
      for (int m = 2; m <= 4; ++m)
        out.push_back({p1, (1.0 / c) * p1 + Poly2::monomial(m, 0) + 0.5 * Poly2::monomial(m + 1, 0) * xi});
  return out;
}

}  // namespace crossing::corpus
