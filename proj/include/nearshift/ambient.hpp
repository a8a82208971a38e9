#pragma once

#include <memory>
#include <optional>

#include "nearshift/wold.hpp"

namespace nearshift {

/// Finite-dimensional space a Subspace or operator lives in.
///
/// Coordinates are taken against an H^2-orthonormal basis of scalar functions,
/// repeated for each of `components` vector slots (component-major). Two kinds:
///
///   taylor(D): polynomials of degree <= D, basis z^k. This is K_Theta for Theta = z^{D+1}.
///   model(Theta): the model space K_Theta with its Takenaka-Malmquist basis,
///                 whose Taylor expansions are held to an internal degree where
///                 the tails have decayed below double precision.
///
/// The inner product is the one of the attached NormSpec, materialized as a
/// Gram matrix in these coordinates.
class Ambient {
 public:
  enum class Kind { Taylor, Model };

  static Ambient taylor(int degree, NormSpec norm = NormSpec::h2(), int components = 1);
  /// taylor_degree = 0 picks the internal expansion degree automatically.
  static Ambient model(const FiniteBlaschke& theta, NormSpec norm = NormSpec::h2(),
                       int components = 1, int taylor_degree = 0);

  Kind kind() const { return d_->kind; }
  int components() const { return d_->components; }
  /// D for taylor(D); deg(Theta) - 1 for a model space.
  int degree() const;
  int taylor_degree() const { return static_cast<int>(d_->basis.rows()) - 1; }
  int scalar_dim() const { return static_cast<int>(d_->basis.cols()); }
  int dim() const { return scalar_dim() * components(); }
  const FiniteBlaschke& theta() const { return d_->theta; }
  const NormSpec& norm() const { return d_->norm; }

  /// (taylor_degree+1) x scalar_dim Taylor coefficients of the basis functions.
  const CMatrix& basis() const { return d_->basis; }
  const CMatrix& gram() const { return d_->gram; }
  /// Cholesky factor L with gram = L L^H.
  const CMatrix& gram_factor() const { return d_->gram_factor; }
  double gram_condition() const { return d_->gram_condition; }

  Ambient with_norm(NormSpec norm) const;
  Ambient with_components(int components) const;

  /// H^2 projection onto the ambient, in coordinates.
  CVector coordinates(const TruncatedSeries& f) const;
  CVector coordinates(const VectorSeries& f) const;
  /// H^2 distance from f to its projection (what the ambient cannot represent).
  double representation_error(const TruncatedSeries& f) const;

  /// Taylor expansion of a coordinate vector; degree -1 means taylor_degree().
  TruncatedSeries function(const CVector& c, int degree = -1) const;
  VectorSeries vector_function(const CVector& c, int degree = -1) const;

  Complex inner(const CVector& x, const CVector& y) const { return y.dot(gram() * x); }
  double norm_of(const CVector& x) const;

  /// The ambient for K_{Theta / B^times} (or P_{D - times deg B} when B is a
  /// monomial and this is a Taylor space); nullopt when B^times does not divide.
  std::optional<Ambient> divided_by(const FiniteBlaschke& B, int times = 1) const;

  /// Matrix of the inclusion of this space into `target` (H^2 coordinates).
  CMatrix embedding_into(const Ambient& target) const;

  friend bool operator==(const Ambient& a, const Ambient& b);

 private:
  struct Data {
    Kind kind;
    int components;
    FiniteBlaschke theta;
    NormSpec norm;
    CMatrix basis;
    CMatrix gram;
    CMatrix gram_factor;
    double gram_condition;
  };
  explicit Ambient(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static std::shared_ptr<const Data> build(Kind kind, FiniteBlaschke theta, NormSpec norm,
                                           int components, CMatrix basis);

  std::shared_ptr<const Data> d_;
};

/// Taylor degree at which every basis function of K_theta has decayed.
int model_taylor_degree(const FiniteBlaschke& theta);

/// Gram matrix of the functions in the columns of F for a norm.
CMatrix gram_of_functions(const CMatrix& F, const NormSpec& norm);

}  // namespace nearshift
