#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nearshift/errors.hpp"

namespace nearshift {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Taylor coefficients a_0..a_D of an analytic function on the unit disc.
///
/// A series of degree D is the polynomial it defines; it is an exact element
/// of H^2 and of every Dirichlet-type space. Equality is exact coefficient
/// equality after zero padding; use approx_equal for tolerances.
class TruncatedSeries {
 public:
  TruncatedSeries() : coeffs_(CVector::Zero(1)) {}
  explicit TruncatedSeries(int degree);
  explicit TruncatedSeries(CVector coeffs);
  TruncatedSeries(std::initializer_list<Complex> coeffs);

  static TruncatedSeries monomial(int power, int degree, Complex value = 1.0);
  static TruncatedSeries constant(Complex value, int degree = 0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const CVector& coeffs() const { return coeffs_; }

  /// Coefficient k, zero beyond the stored degree.
  Complex operator[](int k) const {
    return (k >= 0 && k <= degree()) ? coeffs_[k] : Complex{};
  }

  /// Zero-padded or cut to the given degree.
  TruncatedSeries truncated(int degree) const;
  CVector padded(int degree) const { return truncated(degree).coeffs_; }

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(Complex c);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(Complex c, TruncatedSeries a) { return a *= c; }
  friend TruncatedSeries operator*(TruncatedSeries a, Complex c) { return a *= c; }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  CVector coeffs_;
};

/// Max coefficient difference (after zero padding) is at most tol.
bool approx_equal(const TruncatedSeries& a, const TruncatedSeries& b, double tol);

/// l-tuple of series sharing one degree: an element of H^2(D, C^l).
class VectorSeries {
 public:
  VectorSeries() = default;
  explicit VectorSeries(std::vector<TruncatedSeries> components);
  VectorSeries(int components, int degree);

  int size() const { return static_cast<int>(components_.size()); }
  int degree() const { return components_.empty() ? -1 : components_.front().degree(); }
  const TruncatedSeries& operator[](int i) const { return components_[i]; }
  const std::vector<TruncatedSeries>& components() const { return components_; }

  VectorSeries truncated(int degree) const;
  /// Component-major flattening: component i occupies [i(D+1), (i+1)(D+1)).
  CVector flatten() const;
  static VectorSeries unflatten(const CVector& flat, int components);

  friend bool operator==(const VectorSeries& a, const VectorSeries& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<TruncatedSeries> components_;
};

/// Horner evaluation at any finite z.
Complex series_eval(const TruncatedSeries& f, Complex z);

/// Cauchy product truncated at out_degree.
TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g, int out_degree);

/// Power-series quotient f/g to out_degree; requires g[0] != 0.
TruncatedSeries series_div(const TruncatedSeries& f, const TruncatedSeries& g, int out_degree);

/// ||f||_alpha = (sum |a_k|^2 (k+1)^alpha)^{1/2}.
double norm_alpha(const TruncatedSeries& f, double alpha);
double norm_h2(const TruncatedSeries& f);
double norm_h2(const VectorSeries& f);

/// Coordinate form of (U_s f)(z) = f(sz): coefficient k scaled by s^k.
TruncatedSeries dilate(const TruncatedSeries& f, double s);
VectorSeries dilate(const VectorSeries& f, double s);

/// sum_k w_k a_k conj(b_k), conjugate-linear in g.
Complex inner_weighted(const TruncatedSeries& f, const TruncatedSeries& g,
                       std::span<const double> weights);

/// (k+1)^alpha for k = 0..degree.
std::vector<double> alpha_weights(int degree, double alpha);

/// Backward shift S^*: drops a_0 and moves every coefficient down by one.
TruncatedSeries backward_shift(const TruncatedSeries& f);

}  // namespace nearshift
