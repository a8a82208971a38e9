#pragma once

#include <doctest.h>

#include "../oracles.hpp"
#include "nearshift/neardecomp.hpp"
#include "nearshift/random.hpp"

namespace testing {

using namespace nearshift;

inline oracle::Vec to_vec(const TruncatedSeries& f) {
  return oracle::Vec(f.coeffs().data(), f.coeffs().data() + f.coeffs().size());
}

inline oracle::Vec to_vec(const CVector& v) { return oracle::Vec(v.data(), v.data() + v.size()); }

inline TruncatedSeries from_vec(const oracle::Vec& v) {
  return TruncatedSeries(CVector(Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()))));
}

inline double max_diff(const oracle::Vec& a, const oracle::Vec& b) {
  double d = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    const oracle::C x = k < a.size() ? a[k] : 0.0;
    const oracle::C y = k < b.size() ? b[k] : 0.0;
    d = std::max(d, std::abs(x - y));
  }
  return d;
}

}  // namespace testing
