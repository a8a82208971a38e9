#include "nearshift/ambient.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace nearshift {

namespace {

CMatrix rows_padded(const CMatrix& M, Eigen::Index rows) {
  CMatrix out = CMatrix::Zero(rows, M.cols());
  const Eigen::Index n = std::min(rows, M.rows());
  out.topRows(n) = M.topRows(n);
  return out;
}

CMatrix block_diagonal(const CMatrix& G, int copies) {
  const Eigen::Index r = G.rows();
  const Eigen::Index c = G.cols();
  CMatrix out = CMatrix::Zero(r * copies, c * copies);
  for (int i = 0; i < copies; ++i) out.block(i * r, i * c, r, c) = G;
  return out;
}

bool same_theta(const FiniteBlaschke& a, const FiniteBlaschke& b) {
  return a.origin_multiplicity() == b.origin_multiplicity() && a.zeros() == b.zeros() &&
         a.normalized() == b.normalized() && a.phase() == b.phase();
}

}  // namespace

int model_taylor_degree(const FiniteBlaschke& theta) {
  if (theta.is_monomial()) return theta.degree() - 1;
  constexpr int kTail = 40;
  int D = theta.degree() + kTail;
  for (;;) {
    const CMatrix E = model_space_matrix(theta, D);
    if (E.bottomRows(kTail).cwiseAbs().maxCoeff() < 1e-17) return D;
    if (D > 4000) throw NumericError("model space basis decays too slowly to truncate");
    D = D * 3 / 2 + 20;
  }
}

CMatrix gram_of_functions(const CMatrix& F, const NormSpec& norm) {
  norm.validate();
  if (!norm.is_wold()) {
    const std::vector<double> w = alpha_weights(static_cast<int>(F.rows()) - 1, norm.alpha);
    const RVector wv = Eigen::Map<const RVector>(w.data(), static_cast<Eigen::Index>(w.size()));
    CMatrix G = F.adjoint() * wv.asDiagonal() * F;
    return (G + G.adjoint()) / 2.0;
  }
  const FiniteBlaschke& B = *norm.B;
  const int levels = default_wold_levels(static_cast<int>(F.rows()) - 1, B);
  const WoldBatch batch = wold_batch(F, B, levels);
  const double scale = std::max(F.colwise().norm().maxCoeff(), 1e-300);
  if (batch.remainder.size() > 0 && batch.remainder.maxCoeff() > 1e-10 * scale) {
    throw TruncationInsufficient("Wold coordinates of the basis did not converge");
  }
  CMatrix G = CMatrix::Zero(F.cols(), F.cols());
  for (std::size_t k = 0; k < batch.levels.size(); ++k) {
    const CMatrix& L = batch.levels[k];
    G += norm.level_weight(static_cast<int>(k)) * (L.adjoint() * L);
  }
  return (G + G.adjoint()) / 2.0;
}

std::shared_ptr<const Ambient::Data> Ambient::build(Kind kind, FiniteBlaschke theta, NormSpec norm,
                                                    int components, CMatrix basis) {
  if (components < 1) throw InvalidInput("ambient needs at least one component");
  norm.validate();
  CMatrix Gs;
  if (kind == Kind::Taylor && !norm.is_wold()) {
    const std::vector<double> w = alpha_weights(static_cast<int>(basis.rows()) - 1, norm.alpha);
    Gs = CMatrix::Zero(basis.cols(), basis.cols());
    for (Eigen::Index k = 0; k < basis.cols(); ++k) Gs(k, k) = w[k];
  } else {
    Gs = gram_of_functions(basis, norm);
  }
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(Gs, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) throw NumericError("ambient Gram matrix is not positive definite");
  CMatrix G = block_diagonal(Gs, components);
  Eigen::LLT<CMatrix> llt(G);
  if (llt.info() != Eigen::Success) throw NumericError("Cholesky factorization of Gram failed");
  CMatrix L = llt.matrixL();
  return std::make_shared<const Data>(Data{kind, components, std::move(theta), std::move(norm),
                                           std::move(basis), std::move(G), std::move(L), hi / lo});
}

Ambient Ambient::taylor(int degree, NormSpec norm, int components) {
  if (degree < 0) throw InvalidInput("ambient degree must be nonnegative");
  return Ambient(build(Kind::Taylor, FiniteBlaschke::monomial(degree + 1), std::move(norm),
                       components, CMatrix::Identity(degree + 1, degree + 1)));
}

Ambient Ambient::model(const FiniteBlaschke& theta, NormSpec norm, int components,
                       int taylor_degree) {
  if (taylor_degree < 0) throw InvalidInput("internal degree must be nonnegative");
  const int D = taylor_degree > 0 ? std::max(taylor_degree, theta.degree() - 1)
                                  : model_taylor_degree(theta);
  return Ambient(build(Kind::Model, theta, std::move(norm), components,
                       model_space_matrix(theta, D)));
}

int Ambient::degree() const {
  return kind() == Kind::Taylor ? taylor_degree() : theta().degree() - 1;
}

Ambient Ambient::with_norm(NormSpec norm) const {
  return Ambient(build(kind(), theta(), std::move(norm), components(), basis()));
}

Ambient Ambient::with_components(int components) const {
  if (components == this->components()) return *this;
  return Ambient(build(kind(), theta(), norm(), components, basis()));
}

CVector Ambient::coordinates(const TruncatedSeries& f) const {
  if (components() != 1) throw InvalidInput("scalar series given to a vector ambient");
  return basis().adjoint() * f.padded(taylor_degree());
}

CVector Ambient::coordinates(const VectorSeries& f) const {
  if (f.size() != components()) throw InvalidInput("component count does not match the ambient");
  const int n = scalar_dim();
  CVector c(dim());
  for (int i = 0; i < f.size(); ++i) {
    c.segment(i * n, n) = basis().adjoint() * f[i].padded(taylor_degree());
  }
  return c;
}

double Ambient::representation_error(const TruncatedSeries& f) const {
  const int D = std::max(f.degree(), taylor_degree());
  const CVector x = f.padded(D);
  const CVector back = rows_padded(basis(), D + 1) * coordinates(f);
  return (x - back).norm();
}

TruncatedSeries Ambient::function(const CVector& c, int degree) const {
  if (components() != 1) throw InvalidInput("scalar function requested from a vector ambient");
  if (c.size() != dim()) throw InvalidInput("coordinate vector has the wrong length");
  TruncatedSeries f(CVector(basis() * c));
  return degree < 0 ? f : f.truncated(degree);
}

VectorSeries Ambient::vector_function(const CVector& c, int degree) const {
  if (c.size() != dim()) throw InvalidInput("coordinate vector has the wrong length");
  const int n = scalar_dim();
  std::vector<TruncatedSeries> parts;
  for (int i = 0; i < components(); ++i) {
    TruncatedSeries f(CVector(basis() * c.segment(i * n, n)));
    parts.push_back(degree < 0 ? f : f.truncated(degree));
  }
  return VectorSeries(std::move(parts));
}

double Ambient::norm_of(const CVector& x) const {
  return std::sqrt(std::max(0.0, inner(x, x).real()));
}

std::optional<Ambient> Ambient::divided_by(const FiniteBlaschke& B, int times) const {
  if (times < 0) throw InvalidInput("guard must be nonnegative");
  if (times == 0) return *this;
  if (kind() == Kind::Taylor) {
    if (!B.is_monomial()) return std::nullopt;
    const int D = taylor_degree() - times * B.degree();
    if (D < 0) return std::nullopt;
    return Ambient::taylor(D, norm(), components());
  }
  const auto q = theta().divide(B.power(times));
  if (!q) return std::nullopt;
  return Ambient::model(*q, norm(), components(), taylor_degree());
}

CMatrix Ambient::embedding_into(const Ambient& target) const {
  if (components() != target.components()) {
    throw InvalidInput("embedding between ambients with different component counts");
  }
  const CMatrix Es =
      target.basis().adjoint() * rows_padded(basis(), target.basis().rows());
  return block_diagonal(Es, components());
}

bool operator==(const Ambient& a, const Ambient& b) {
  if (a.d_ == b.d_) return true;
  return a.kind() == b.kind() && a.components() == b.components() &&
         a.taylor_degree() == b.taylor_degree() && same_theta(a.theta(), b.theta()) &&
         a.norm() == b.norm();
}

}  // namespace nearshift
