#include "nearshift/random.hpp"

#include <algorithm>

namespace nearshift {

CVector SeededRng::complex_vector(Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = complex();
  return v;
}

TruncatedSeries SeededRng::series(int support, int degree) {
  CVector c = CVector::Zero(degree + 1);
  const int top = std::min(support, degree);
  for (int k = 0; k <= top; ++k) c[k] = complex();
  return TruncatedSeries(std::move(c));
}

}  // namespace nearshift
