#pragma once

#include <string>
#include <vector>

#include "crossing/normalform.hpp"
#include "crossing/schrodinger.hpp"

namespace crossing::corpus {

struct NamedModel {
  std::string name;
  NormalFormProblem problem;
};

struct SymbolPair {
  Poly2 p1;
  Poly2 p2;
};

struct NamedSchrodinger {
  std::string name;
  SchrodingerProblem problem;
};

/// f = x^m on [-1, 1], r1 = r2 = bump of height 1 and radius 1/2.
NormalFormProblem model_monomial(int m, double h);

/// Six reduced problems, m = 1, 2, 3, each with a symmetric and an asymmetric coupling.
std::vector<NamedModel> model_problems(double h);

/// V1 = -x/2, V2 = x/2, E0 = 1, W bump of radius 1/2 on [-1, 1] (n = 1, equal gradients).
SchrodingerProblem schrodinger_n1(double h);

/// Case (i) instances covering n = 1, 2, 3, E0 != 1 and unequal gradients.
std::vector<NamedSchrodinger> schrodinger_case_i(double h);

/// Case (ii) instances, including V1 = -x, V2 = -2x.
std::vector<NamedSchrodinger> schrodinger_case_ii(double h);

/// Symbol pairs p2 = p1 / c + x^m + x^{m+1} xi / 2, m = 2..4, over a few
/// non-degenerate p1 and both signs of c; tangential at the origin.
std::vector<SymbolPair> tangential_symbols();

}  // namespace crossing::corpus
