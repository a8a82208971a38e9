#pragma once

#include <optional>
#include <vector>

#include "nearshift/ambient.hpp"

namespace nearshift {

struct OperatorMatrix;

/// Span of the columns of `frame`, which are orthonormal in the ambient inner product.
struct Subspace {
  Ambient ambient;
  CMatrix frame;  // ambient.dim() x r

  int dim() const { return static_cast<int>(frame.cols()); }
  CVector vector(int i) const { return frame.col(i); }
  static Subspace zero(const Ambient& ambient) { return {ambient, CMatrix(ambient.dim(), 0)}; }
  static Subspace whole(const Ambient& ambient);
};

/// Modified Gram-Schmidt (two passes) in the ambient inner product; columns whose
/// residual falls below 1e-10 of the largest input norm are dropped.
Subspace orthonormalize(const Ambient& ambient, const CMatrix& vectors);
Subspace orthonormalize(const Ambient& ambient, const std::vector<CVector>& vectors);

CVector project(const CVector& v, const Subspace& M);
/// Matrix of P_M in ambient coordinates.
CMatrix projector(const Subspace& M);

/// Span of the principal directions of M whose cosine with W is at least 1 - tol.
Subspace intersect(const Subspace& M, const Subspace& W, double tol = 1e-8);

/// Largest principal-angle sine between the subspaces, taken in both directions
/// (so subspaces of different dimension are at distance 1).
double subspace_distance(const Subspace& F, const Subspace& G);

/// M minus its intersection with W: orthonormal frame of M (-) (M cap W).
Subspace orthogonal_difference(const Subspace& M, const Subspace& W);

struct DefectBasis {
  int l = 0;
  Subspace G0;  // M (-) (M cap T H)
  Subspace W;   // M cap T H
  int guard = 0;
};

/// l = dim M (-) (M cap range T). A square T is first guarded once.
DefectBasis defect(const Subspace& M, const OperatorMatrix& T, double tol = 1e-8);

struct NearInvarianceReport {
  bool is_nearly_invariant = false;
  double max_residual = 0.0;
  std::optional<CVector> witness;  // ambient coordinates of the worst preimage vector
  int preimage_dim = 0;
  int guard = 0;
  int degree = 0;
  double tolerance = 1e-8;
  std::optional<Subspace> preimage;
};

/// Preimage P = {g : T g in M} over the (guarded) domain of T; reports the
/// largest relative distance from a unit vector of P to M.
NearInvarianceReport near_invariance_check(const Subspace& M, const OperatorMatrix& T,
                                           int guard = 1, double tol = 1e-8);

}  // namespace nearshift
