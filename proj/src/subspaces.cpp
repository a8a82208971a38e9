#include "nearshift/subspaces.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "nearshift/operators.hpp"

namespace nearshift {

namespace {

void require_same(const Ambient& a, const Ambient& b) {
  if (!(a == b)) throw InvalidInput("subspaces live in different ambients");
}

// Coordinates in which the ambient inner product is the Euclidean one.
CMatrix whiten(const Ambient& amb, const CMatrix& X) {
  return amb.gram_factor().adjoint() * X;
}

}  // namespace

Subspace Subspace::whole(const Ambient& ambient) {
  // Columns of L^{-H} are orthonormal for G = L L^H.
  const CMatrix I = CMatrix::Identity(ambient.dim(), ambient.dim());
  CMatrix F = ambient.gram_factor().adjoint().triangularView<Eigen::Upper>().solve(I);
  return {ambient, std::move(F)};
}

Subspace orthonormalize(const Ambient& ambient, const CMatrix& vectors) {
  if (vectors.cols() == 0) throw InvalidInput("nothing to orthonormalize");
  if (vectors.rows() != ambient.dim()) throw InvalidInput("vector length does not match ambient");
  const CMatrix& G = ambient.gram();
  double biggest = 0.0;
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    biggest = std::max(biggest, ambient.norm_of(vectors.col(j)));
  }
  std::vector<CVector> kept;
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    CVector v = vectors.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const CVector& q : kept) v -= q.dot(G * v) * q;
    }
    const double r = ambient.norm_of(v);
    if (r < 1e-10 * biggest || r == 0.0) continue;
    kept.push_back(v / r);
  }
  CMatrix F(ambient.dim(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) F.col(static_cast<Eigen::Index>(i)) = kept[i];
  return {ambient, std::move(F)};
}

Subspace orthonormalize(const Ambient& ambient, const std::vector<CVector>& vectors) {
  CMatrix V(ambient.dim(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient.dim()) throw InvalidInput("vector length does not match ambient");
    V.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return orthonormalize(ambient, V);
}

CVector project(const CVector& v, const Subspace& M) {
  if (v.size() != M.ambient.dim()) throw InvalidInput("vector length does not match ambient");
  if (M.dim() == 0) return CVector::Zero(v.size());
  return M.frame * (M.frame.adjoint() * (M.ambient.gram() * v));
}

CMatrix projector(const Subspace& M) {
  if (M.dim() == 0) return CMatrix::Zero(M.ambient.dim(), M.ambient.dim());
  return M.frame * (M.frame.adjoint() * M.ambient.gram());
}

Subspace intersect(const Subspace& M, const Subspace& W, double tol) {
  require_same(M.ambient, W.ambient);
  if (M.dim() == 0 || W.dim() == 0) return Subspace::zero(M.ambient);
  const CMatrix C = M.frame.adjoint() * M.ambient.gram() * W.frame;
  Eigen::JacobiSVD<CMatrix> svd(C, Eigen::ComputeFullU);
  std::vector<CVector> dirs;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] >= 1.0 - tol) dirs.push_back(M.frame * svd.matrixU().col(i));
  }
  if (dirs.empty()) return Subspace::zero(M.ambient);
  return orthonormalize(M.ambient, dirs);
}

namespace {

double one_sided_distance(const Subspace& F, const Subspace& G) {
  if (F.dim() == 0) return 0.0;
  CMatrix R = F.frame;
  if (G.dim() > 0) R -= G.frame * (G.frame.adjoint() * (G.ambient.gram() * F.frame));
  Eigen::JacobiSVD<CMatrix> svd(whiten(F.ambient, R));
  return svd.singularValues()[0];
}

}  // namespace

double subspace_distance(const Subspace& F, const Subspace& G) {
  require_same(F.ambient, G.ambient);
  return std::max(one_sided_distance(F, G), one_sided_distance(G, F));
}

Subspace orthogonal_difference(const Subspace& M, const Subspace& W) {
  require_same(M.ambient, W.ambient);
  if (W.dim() == 0) return M;
  const int expected = M.dim() - W.dim();
  if (expected <= 0) return Subspace::zero(M.ambient);
  // Project M's frame off W, in frame order, and orthonormalize.
  const CMatrix P = M.frame - W.frame * (W.frame.adjoint() * (M.ambient.gram() * M.frame));
  double biggest = 0.0;
  for (Eigen::Index j = 0; j < P.cols(); ++j) biggest = std::max(biggest, M.ambient.norm_of(P.col(j)));
  if (biggest > 0.0) {
    Subspace D = orthonormalize(M.ambient, P);
    if (D.dim() == expected) return D;
  }
  // Rank disagreement (near-parallel directions): use the principal vectors
  // of M that are not inside W.
  const CMatrix C = M.frame.adjoint() * M.ambient.gram() * W.frame;
  Eigen::JacobiSVD<CMatrix> svd(C, Eigen::ComputeFullU);
  CMatrix rest = M.frame * svd.matrixU().rightCols(expected);
  return orthonormalize(M.ambient, rest);
}

DefectBasis defect(const Subspace& M, const OperatorMatrix& T, double tol) {
  if (M.dim() == 0) throw PreconditionError("defect of the zero subspace");
  const OperatorMatrix Tg = T.square() && T.multiplier ? guarded(T, 1) : T;
  require_same(M.ambient, Tg.codomain);
  const Subspace range = orthonormalize(Tg.codomain, Tg.matrix);
  DefectBasis out{0, Subspace::zero(M.ambient), intersect(M, range, tol), Tg.guard};
  out.G0 = orthogonal_difference(M, out.W);
  out.l = out.G0.dim();
  if (out.l == 0) throw PreconditionError("degenerate defect: M lies inside the range of T");
  return out;
}

NearInvarianceReport near_invariance_check(const Subspace& M, const OperatorMatrix& T, int guard,
                                           double tol) {
  const OperatorMatrix Tg = T.square() && T.multiplier && guard > 0 ? guarded(T, guard) : T;
  const Ambient& dom = Tg.domain;
  const Ambient& cod = Tg.codomain;
  require_same(M.ambient, cod);

  NearInvarianceReport rep;
  rep.guard = Tg.guard;
  rep.degree = cod.degree();
  rep.tolerance = tol;

  const CMatrix off = CMatrix::Identity(cod.dim(), cod.dim()) - projector(M);
  // Whitened (I - P_M) T; its null space is the preimage of M.
  const CMatrix Ld_inv_h = dom.gram_factor().adjoint().triangularView<Eigen::Upper>().solve(
      CMatrix::Identity(dom.dim(), dom.dim()));
  const CMatrix Tw = whiten(cod, Tg.matrix) * Ld_inv_h;
  const CMatrix A = whiten(cod, off * Tg.matrix) * Ld_inv_h;
  Eigen::JacobiSVD<CMatrix> tsvd(Tw);
  const double tnorm = tsvd.singularValues().size() ? tsvd.singularValues()[0] : 0.0;
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();

  std::vector<CVector> kernel;
  for (Eigen::Index i = 0; i < dom.dim(); ++i) {
    const double s = i < sv.size() ? sv[i] : 0.0;
    if (s <= 1e-9 * tnorm) kernel.push_back(Ld_inv_h * svd.matrixV().col(i));
  }
  rep.preimage_dim = static_cast<int>(kernel.size());

  const CMatrix E = dom.embedding_into(cod);
  std::vector<CVector> images;
  for (const CVector& x : kernel) images.push_back(E * x);
  if (!images.empty()) {
    const Subspace P = orthonormalize(cod, images);
    rep.preimage_dim = P.dim();
    for (int i = 0; i < P.dim(); ++i) {
      const CVector p = P.vector(i);
      const double r = cod.norm_of(off * p) / cod.norm_of(p);
      if (r > rep.max_residual || !rep.witness) {
        rep.max_residual = std::max(rep.max_residual, r);
        rep.witness = p;
      }
    }
    // Report the worst direction of the whole preimage, not just a frame vector.
    const CMatrix R = whiten(cod, off * P.frame);
    Eigen::JacobiSVD<CMatrix> rsvd(R, Eigen::ComputeFullV);
    if (rsvd.singularValues()[0] > rep.max_residual) {
      rep.max_residual = rsvd.singularValues()[0];
      rep.witness = P.frame * rsvd.matrixV().col(0);
    }
    rep.preimage = P;
  } else {
    rep.preimage = Subspace::zero(cod);
  }
  rep.is_nearly_invariant = rep.max_residual <= tol;
  if (rep.is_nearly_invariant) rep.witness.reset();
  return rep;
}

}  // namespace nearshift
