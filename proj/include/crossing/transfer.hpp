#pragma once

#include <array>
#include <string>

#include "crossing/grid.hpp"

namespace crossing {

struct TransferMatrix {
  enum class Kind { Predicted, Extracted };

  std::array<std::array<cplx, 2>, 2> t{{{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(1.0)}}};
  double h = 0.0;
  Kind kind = Kind::Predicted;

  static TransferMatrix identity(double h, Kind kind = Kind::Predicted) {
    TransferMatrix T;
    T.h = h;
    T.kind = kind;
    return T;
  }

  cplx& operator()(int i, int j) { return t[i][j]; }
  const cplx& operator()(int i, int j) const { return t[i][j]; }

  bool finite() const;
  TransferMatrix inverse() const;
  TransferMatrix conj() const;
  /// Largest entrywise modulus of the difference.
  double max_abs_diff(const TransferMatrix& o) const;
  std::string to_string() const;
};

std::string to_string(TransferMatrix::Kind k);

}  // namespace crossing
