#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nearshift/subspaces.hpp"

namespace nearshift {

/// A linear map between two ambients, as a dense matrix on coordinates.
struct OperatorMatrix {
  std::string name;
  Ambient domain;
  Ambient codomain;
  CMatrix matrix;  // codomain.dim() x domain.dim()
  /// Set when the operator is scale * (multiplication by this product).
  std::optional<FiniteBlaschke> multiplier;
  double scale = 1.0;
  int guard = 0;

  bool square() const { return domain == codomain; }
  CVector apply(const CVector& x) const;
};

/// f -> B f. With guard g > 0 the domain shrinks to K_{Theta/B^g} (or the Taylor
/// space of degree D - g deg B), on which multiplication lands exactly inside
/// the ambient; guard 0 gives the square compression P(B f).
OperatorMatrix mult_operator(const FiniteBlaschke& B, const Ambient& ambient, int guard = 0);

/// Same multiplication operator on a domain guarded g times.
OperatorMatrix guarded(const OperatorMatrix& T, int g);

OperatorMatrix scaled(const OperatorMatrix& T, double c);

OperatorMatrix compose(const OperatorMatrix& A, const OperatorMatrix& B);

/// Hilbert-space adjoint G_dom^{-1} A^H G_cod.
OperatorMatrix adjoint(const OperatorMatrix& A);
/// Adjoint after equipping both ambients with `spec`.
OperatorMatrix adjoint(const OperatorMatrix& A, const NormSpec& spec);

/// T_{conj(g)} on a scalar Taylor ambient for an analytic symbol g: entry (j, k)
/// is conj(g_{k-j}) for k >= j.
OperatorMatrix toeplitz_conj(const TruncatedSeries& symbol, const Ambient& ambient);
OperatorMatrix toeplitz_conj(const FiniteBlaschke& B, const Ambient& ambient);

/// T_{conj(B(z/s))} on a scalar Taylor ambient, with the symbol assembled as the
/// product b F_s of the scaled factorization.
OperatorMatrix ts_star(const FiniteBlaschke& B, double s, const Ambient& ambient);

/// Forward shift S and its adjoint on a (vector) Taylor ambient.
OperatorMatrix shift_operator(const Ambient& ambient);
OperatorMatrix backward_shift_operator(const Ambient& ambient);

/// f -> f(s z) on a Taylor ambient.
OperatorMatrix dilation_operator(const Ambient& ambient, double s);

/// U: f -> sum_k z^k (coordinates of h_k), from a scalar ambient into H^2(C^m),
/// m = deg B, and its inverse.
struct CoordinateMap {
  OperatorMatrix forward;
  OperatorMatrix backward;
  int levels = 0;
};

/// levels = 0 uses as many Wold levels as the ambient's functions need.
CoordinateMap unitary_U(const FiniteBlaschke& B, const Ambient& ambient, int levels = 0);

/// sum_i h_i(T) g_i by iterated application of a square T.
CVector apply_series_of_operator(const VectorSeries& h, const OperatorMatrix& T,
                                 const std::vector<CVector>& G);
CVector apply_series_of_operator(const TruncatedSeries& h, const OperatorMatrix& T,
                                 const CVector& g);

/// The pair R = (T*T)^{-1} T* P_{M cap TH} and Q = P_{M (-) (M cap TH)}.
struct RQPair {
  OperatorMatrix T;      // guarded, domain -> codomain
  OperatorMatrix R;      // codomain -> domain
  CMatrix R_in_codomain; // R followed by the inclusion of the domain
  OperatorMatrix Q;      // codomain -> codomain
  DefectBasis defect;
};

RQPair rq_operators(const Subspace& M, const OperatorMatrix& T);

}  // namespace nearshift
