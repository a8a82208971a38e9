#include "nearshift/operators.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace nearshift {

namespace {

CMatrix block_diagonal(const CMatrix& A, int copies) {
  CMatrix out = CMatrix::Zero(A.rows() * copies, A.cols() * copies);
  for (int i = 0; i < copies; ++i) out.block(i * A.rows(), i * A.cols(), A.rows(), A.cols()) = A;
  return out;
}

void require_scalar_taylor(const Ambient& a, const char* what) {
  if (a.kind() != Ambient::Kind::Taylor || a.components() != 1) {
    throw InvalidInput(std::string(what) + " needs a scalar Taylor ambient");
  }
}

CMatrix solve_gram(const Ambient& a, const CMatrix& rhs) {
  return a.gram_factor().adjoint().triangularView<Eigen::Upper>().solve(
      a.gram_factor().triangularView<Eigen::Lower>().solve(rhs));
}

}  // namespace

CVector OperatorMatrix::apply(const CVector& x) const {
  if (x.size() != matrix.cols()) throw InvalidInput("vector length does not match operator domain");
  return matrix * x;
}

OperatorMatrix mult_operator(const FiniteBlaschke& B, const Ambient& ambient, int guard) {
  if (guard < 0) throw InvalidInput("guard must be nonnegative");
  const auto dom = ambient.divided_by(B, guard);
  if (!dom) {
    throw PreconditionError("the ambient cannot be guarded by this Blaschke product");
  }
  const int Dq = ambient.taylor_degree();
  const TruncatedSeries b = blaschke_taylor(B, Dq);
  const CMatrix& src = dom->basis();
  CMatrix prod(Dq + 1, src.cols());
  for (Eigen::Index j = 0; j < src.cols(); ++j) {
    prod.col(j) = series_mul(b, TruncatedSeries(CVector(src.col(j))), Dq).coeffs();
  }
  const CMatrix scalar = ambient.basis().adjoint() * prod;
  return {"T_B", *dom, ambient, block_diagonal(scalar, ambient.components()), B, 1.0, guard};
}

OperatorMatrix guarded(const OperatorMatrix& T, int g) {
  if (!T.multiplier) throw InvalidInput("only multiplication operators can be guarded");
  OperatorMatrix out = mult_operator(*T.multiplier, T.codomain, g);
  out.matrix *= T.scale;
  out.scale = T.scale;
  out.name = T.name;
  return out;
}

OperatorMatrix scaled(const OperatorMatrix& T, double c) {
  OperatorMatrix out = T;
  out.matrix *= c;
  out.scale *= c;
  out.name = std::to_string(c) + "*" + T.name;
  return out;
}

OperatorMatrix compose(const OperatorMatrix& A, const OperatorMatrix& B) {
  if (!(A.domain == B.codomain)) throw InvalidInput("operator composition across ambients");
  return {A.name + "*" + B.name, B.domain, A.codomain, A.matrix * B.matrix, std::nullopt, 1.0, 0};
}

OperatorMatrix adjoint(const OperatorMatrix& A) {
  for (const Ambient* a : {&A.domain, &A.codomain}) {
    if (a->gram_condition() > 1e12) throw NumericError("Gram matrix too ill-conditioned for an adjoint");
  }
  CMatrix M = solve_gram(A.domain, A.matrix.adjoint() * A.codomain.gram());
  return {A.name + "^*", A.codomain, A.domain, std::move(M), std::nullopt, 1.0, 0};
}

OperatorMatrix adjoint(const OperatorMatrix& A, const NormSpec& spec) {
  OperatorMatrix renormed = A;
  renormed.domain = A.domain.with_norm(spec);
  renormed.codomain = A.square() ? renormed.domain : A.codomain.with_norm(spec);
  return adjoint(renormed);
}

OperatorMatrix toeplitz_conj(const TruncatedSeries& symbol, const Ambient& ambient) {
  require_scalar_taylor(ambient, "toeplitz_conj");
  const int D = ambient.taylor_degree();
  CMatrix M = CMatrix::Zero(D + 1, D + 1);
  for (int j = 0; j <= D; ++j) {
    for (int k = j; k <= D; ++k) M(j, k) = std::conj(symbol[k - j]);
  }
  return {"T_conj", ambient, ambient, std::move(M), std::nullopt, 1.0, 0};
}

OperatorMatrix toeplitz_conj(const FiniteBlaschke& B, const Ambient& ambient) {
  OperatorMatrix out = toeplitz_conj(blaschke_taylor(B, ambient.taylor_degree()), ambient);
  out.name = "T_conjB";
  return out;
}

OperatorMatrix ts_star(const FiniteBlaschke& B, double s, const Ambient& ambient) {
  require_scalar_taylor(ambient, "ts_star");
  const int D = ambient.taylor_degree();
  const ScaledFactorization sf = scaled_factorization(B, s, D);
  const TruncatedSeries symbol = series_mul(blaschke_taylor(sf.b, D), sf.F_s, D);
  OperatorMatrix out = toeplitz_conj(symbol, ambient);
  out.name = "T_s^*";
  return out;
}

OperatorMatrix shift_operator(const Ambient& ambient) {
  if (ambient.kind() != Ambient::Kind::Taylor) throw InvalidInput("shift needs a Taylor ambient");
  const int n = ambient.scalar_dim();
  CMatrix S = CMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) S(k + 1, k) = 1.0;
  return {"S", ambient, ambient, block_diagonal(S, ambient.components()),
          FiniteBlaschke::monomial(1), 1.0, 0};
}

OperatorMatrix backward_shift_operator(const Ambient& ambient) {
  if (ambient.kind() != Ambient::Kind::Taylor) throw InvalidInput("shift needs a Taylor ambient");
  const int n = ambient.scalar_dim();
  CMatrix S = CMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) S(k, k + 1) = 1.0;
  return {"S^*", ambient, ambient, block_diagonal(S, ambient.components()), std::nullopt, 1.0, 0};
}

OperatorMatrix dilation_operator(const Ambient& ambient, double s) {
  if (ambient.kind() != Ambient::Kind::Taylor) throw InvalidInput("dilation needs a Taylor ambient");
  if (!(s > 0.0)) throw InvalidInput("dilation factor must be positive");
  const int n = ambient.scalar_dim();
  CMatrix U = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) U(k, k) = std::pow(s, k);
  return {"U_s", ambient, ambient, block_diagonal(U, ambient.components()), std::nullopt, 1.0, 0};
}

CoordinateMap unitary_U(const FiniteBlaschke& B, const Ambient& ambient, int levels) {
  if (ambient.components() != 1) throw InvalidInput("unitary_U needs a scalar ambient");
  if (levels < 0) throw InvalidInput("levels must be nonnegative");
  const int m = B.degree();
  const int cap = levels > 0 ? levels : default_wold_levels(ambient.taylor_degree(), B);
  const WoldBatch batch = wold_batch(ambient.basis(), B, cap);
  if (batch.remainder.size() > 0 && batch.remainder.maxCoeff() > 1e-8) {
    throw TruncationInsufficient("too few Wold levels for the ambient functions");
  }
  const int K = std::max<int>(levels > 0 ? levels : static_cast<int>(batch.levels.size()), 1);
  const Ambient vec = Ambient::taylor(K - 1, NormSpec::h2(), m);

  CMatrix fwd = CMatrix::Zero(m * K, ambient.dim());
  for (int k = 0; k < static_cast<int>(batch.levels.size()) && k < K; ++k) {
    for (int i = 0; i < m; ++i) fwd.row(i * K + k) = batch.levels[k].row(i);
  }

  const int D = ambient.taylor_degree();
  const TruncatedSeries b = blaschke_taylor(B, D);
  CMatrix cur = model_space_matrix(B, std::max(D, m)).topRows(D + 1);
  CMatrix bwd(ambient.dim(), m * K);
  for (int k = 0; k < K; ++k) {
    const CMatrix coords = ambient.basis().adjoint() * cur;
    for (int i = 0; i < m; ++i) bwd.col(i * K + k) = coords.col(i);
    for (int i = 0; i < m; ++i) {
      cur.col(i) = series_mul(b, TruncatedSeries(CVector(cur.col(i))), D).coeffs();
    }
  }
  CoordinateMap out{{"U", ambient, vec, std::move(fwd), std::nullopt, 1.0, 0},
                    {"U^*", vec, ambient, std::move(bwd), std::nullopt, 1.0, 0},
                    K};
  return out;
}

CVector apply_series_of_operator(const VectorSeries& h, const OperatorMatrix& T,
                                 const std::vector<CVector>& G) {
  if (!T.square()) throw InvalidInput("functional calculus needs a square operator");
  if (static_cast<int>(G.size()) != h.size()) throw InvalidInput("h and G differ in length");
  CVector total = CVector::Zero(T.matrix.rows());
  for (int i = 0; i < h.size(); ++i) {
    if (G[i].size() != T.matrix.cols()) throw InvalidInput("vector length does not match operator");
    CVector acc = CVector::Zero(T.matrix.rows());
    for (int k = h.degree(); k >= 0; --k) acc = T.matrix * acc + h[i][k] * G[i];
    total += acc;
  }
  return total;
}

CVector apply_series_of_operator(const TruncatedSeries& h, const OperatorMatrix& T,
                                 const CVector& g) {
  return apply_series_of_operator(VectorSeries({h}), T, {g});
}

RQPair rq_operators(const Subspace& M, const OperatorMatrix& T) {
  const OperatorMatrix Tg = T.square() && T.multiplier ? guarded(T, 1) : T;
  DefectBasis d = defect(M, Tg);
  const Ambient& dom = Tg.domain;
  const Ambient& cod = Tg.codomain;

  const CMatrix TG = Tg.matrix.adjoint() * cod.gram();
  const CMatrix normal = TG * Tg.matrix;
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(normal, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 1e-13 * hi)) throw NumericError("T*T is singular on the truncation");
  const CMatrix R = normal.ldlt().solve(TG * projector(d.W));

  const CMatrix E = dom.embedding_into(cod);
  RQPair out{Tg,
             {"R", cod, dom, R, std::nullopt, 1.0, 0},
             E * R,
             {"Q", cod, cod, projector(d.G0), std::nullopt, 1.0, 0},
             std::move(d)};
  return out;
}

}  // namespace nearshift
