#include "crossing/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crossing/error.hpp"

namespace crossing {

bool TransferMatrix::finite() const {
  for (const auto& row : t)
    for (const auto& z : row)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

TransferMatrix TransferMatrix::inverse() const {
  const cplx det = t[0][0] * t[1][1] - t[0][1] * t[1][0];
  if (std::abs(det) == 0.0) throw Error(ErrorCode::IllConditioned, "singular transfer matrix");
  TransferMatrix r = *this;
  r.t[0][0] = t[1][1] / det;
  r.t[1][1] = t[0][0] / det;
  r.t[0][1] = -t[0][1] / det;
  r.t[1][0] = -t[1][0] / det;
  return r;
}

TransferMatrix TransferMatrix::conj() const {
  TransferMatrix r = *this;
  for (auto& row : r.t)
    for (auto& z : row) z = std::conj(z);
  return r;
}

double TransferMatrix::max_abs_diff(const TransferMatrix& o) const {
  double d = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(t[i][j] - o.t[i][j]));
  return d;
}

std::string TransferMatrix::to_string() const {
  std::ostringstream os;
  os.precision(10);
  os << "[[" << t[0][0] << ", " << t[0][1] << "], [" << t[1][0] << ", " << t[1][1] << "]] (h=" << h << ", "
     << crossing::to_string(kind) << ")";
  return os.str();
}

std::string to_string(TransferMatrix::Kind k) {
  return k == TransferMatrix::Kind::Predicted ? "predicted" : "extracted";
}

}  // namespace crossing
