#pragma once

#include <optional>
#include <vector>

#include "nearshift/series.hpp"

namespace nearshift {

/// B(z) = c z^{m0} prod_n f(a_n, z), with f(a, z) = (|a|/a)(a - z)/(1 - conj(a) z)
/// when normalized and (a - z)/(1 - conj(a) z) otherwise. The extra unimodular
/// constant c (phase) is 1 unless the product was assembled from factors with
/// mixed normalization.
class FiniteBlaschke {
 public:
  FiniteBlaschke(int origin_multiplicity, std::vector<Complex> zeros, bool normalized = true,
                 Complex phase = 1.0);

  /// z^m.
  static FiniteBlaschke monomial(int m);
  /// phi_a(z) = (a - z)/(1 - conj(a) z), the unnormalized disc automorphism.
  static FiniteBlaschke automorphism(Complex a);

  int origin_multiplicity() const { return origin_multiplicity_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  bool normalized() const { return normalized_; }
  Complex phase() const { return phase_; }
  int degree() const { return origin_multiplicity_ + static_cast<int>(zeros_.size()); }
  bool is_monomial() const { return zeros_.empty(); }

  /// Origin zeros first, then the listed zeros in order.
  std::vector<Complex> ordered_zeros() const;
  double max_zero_modulus() const;
  /// B(0) excluding the z^{m0} factor.
  Complex reduced_value_at_origin() const;

  FiniteBlaschke operator*(const FiniteBlaschke& other) const;
  FiniteBlaschke power(int k) const;
  /// Quotient by a factor whose zero multiset is contained in ours (matching
  /// zeros within 1e-13); nullopt when it does not divide or would leave a constant.
  std::optional<FiniteBlaschke> divide(const FiniteBlaschke& factor) const;

 private:
  int origin_multiplicity_;
  std::vector<Complex> zeros_;
  bool normalized_;
  Complex phase_;
};

/// Pole inputs (z = 1/conj(a_n)) raise InvalidInput.
Complex blaschke_eval(const FiniteBlaschke& B, Complex z);

TruncatedSeries blaschke_taylor(const FiniteBlaschke& B, int degree);

struct ModelSpaceBasis {
  FiniteBlaschke source;
  std::vector<TruncatedSeries> basis;
};

/// Takenaka-Malmquist-Walsh basis of K_B truncated at `degree`:
/// e_k = sqrt(1 - |w_k|^2)/(1 - conj(w_k) z) prod_{i<k} b_{w_i}(z), where w is the
/// ordered zero list, b_0(z) = z and b_w(z) = (w - z)/(1 - conj(w) z).
ModelSpaceBasis model_space_basis(const FiniteBlaschke& B, int degree);

/// Same basis as columns of a (degree+1) x deg(B) matrix.
CMatrix model_space_matrix(const FiniteBlaschke& B, int degree);

/// max_{|z| = s} |B(z)| from a uniform grid refined by golden-section search.
double sup_on_circle(const FiniteBlaschke& B, double s, int grid = 4096);

/// B(z/s) = b(z) F_s(z) with b the Blaschke product with zeros s a_n.
struct ScaledFactorization {
  FiniteBlaschke b;
  TruncatedSeries F_s;
  double s;
  double product_residual;  // max |taylor(b) F_s - taylor(B(z/s))|
  double min_modulus;       // min of |F_s| over a polar grid of the closed disc
};

ScaledFactorization scaled_factorization(const FiniteBlaschke& B, double s, int degree);

/// Taylor coefficients of B(z/s) (analytic on the closed disc when max|a_n| < s).
TruncatedSeries blaschke_taylor_scaled(const FiniteBlaschke& B, double s, int degree);

}  // namespace nearshift
