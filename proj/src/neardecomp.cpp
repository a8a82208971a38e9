#include "nearshift/neardecomp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nearshift/random.hpp"

namespace nearshift {

namespace {

const FiniteBlaschke& multiplier_of(const OperatorMatrix& T) {
  if (!T.multiplier) throw InvalidInput("operator is not a multiplication by a Blaschke product");
  return *T.multiplier;
}

// Taylor degree that holds B^k f for k <= levels without visible truncation.
int work_degree(const Ambient& amb, const FiniteBlaschke& B, int levels) {
  return amb.taylor_degree() + levels * B.degree() +
         (amb.kind() == Ambient::Kind::Model || !B.is_monomial() ? 40 : 0);
}

// Taylor coefficients of B cut where they fall below 1e-20 of the largest, so
// repeated products by B cost O(support * degree).
TruncatedSeries banded_taylor(const FiniteBlaschke& B, double scale, int degree) {
  const TruncatedSeries b = scale * blaschke_taylor(B, degree);
  const double top = b.coeffs().cwiseAbs().maxCoeff();
  int last = degree;
  while (last > 0 && std::abs(b[last]) <= 1e-20 * top) --last;
  return b.truncated(last);
}

void require_scalar(const Ambient& amb) {
  if (amb.components() != 1) throw InvalidInput("factorization needs a scalar ambient");
}

int iteration_cap(const Ambient& amb) { return 4 * amb.dim() + 16; }

Subspace transport(const Subspace& M, const NormSpec& spec) {
  if (M.ambient.norm() == spec) return M;
  return orthonormalize(M.ambient.with_norm(spec), M.frame);
}

DecompositionSteps defect_sequence(const CVector& h, const RQPair& rq, int p) {
  const Ambient& cod = rq.T.codomain;
  require_scalar(cod);
  if (h.size() != cod.dim()) throw InvalidInput("vector length does not match the ambient");
  const double hn = cod.norm_of(h);
  const int cap = p >= 0 ? p : iteration_cap(cod);

  DecompositionSteps out;
  CVector x = h;
  for (int k = 0;; ++k) {
    out.defect_parts.push_back(rq.Q.matrix * x);
    x = rq.R_in_codomain * x;
    if (p >= 0 ? k >= p : (cod.norm_of(x) <= 1e-14 * hn || k >= cap)) break;
  }
  out.tail_preimage = x;
  out.p = static_cast<int>(out.defect_parts.size()) - 1;
  return out;
}

}  // namespace

double series_norm_in(const Ambient& ambient, const TruncatedSeries& f) {
  require_scalar(ambient);
  const CVector c = ambient.coordinates(f);
  const int D = std::max(f.degree(), ambient.taylor_degree());
  const TruncatedSeries off = f.truncated(D) - ambient.function(c, D);
  return ambient.norm_of(c) + norm_alpha(off, ambient.norm().alpha);
}

DecompositionSteps iterate_decomposition(const CVector& h, const RQPair& rq, int p) {
  const Ambient& cod = rq.T.codomain;
  const FiniteBlaschke& B = multiplier_of(rq.T);
  const double hn = cod.norm_of(h);
  DecompositionSteps out = defect_sequence(h, rq, p);
  const CVector& x = out.tail_preimage;

  const int Dq = work_degree(cod, B, out.p + 1);
  const TruncatedSeries b = banded_taylor(B, rq.T.scale, Dq);
  TruncatedSeries power = TruncatedSeries::constant(1.0, Dq);
  TruncatedSeries total(Dq);
  for (const CVector& part : out.defect_parts) {
    out.summands.push_back(series_mul(power, cod.function(part, Dq), Dq));
    total += out.summands.back();
    power = series_mul(b, power, Dq);
  }
  out.remainder = series_mul(power, cod.function(x, Dq), Dq);
  total += out.remainder;
  out.reconstruction_residual = series_norm_in(cod, cod.function(h, Dq) - total);
  if (out.reconstruction_residual > 1e-8 * std::max(hn, 1e-300)) {
    throw TruncationInsufficient("decomposition does not reconstruct h: residual " +
                                 std::to_string(out.reconstruction_residual));
  }
  return out;
}

DecompositionSteps iterate_decomposition(const CVector& h, const Subspace& M,
                                         const OperatorMatrix& T, int p) {
  const double off = M.ambient.norm_of(h - project(h, M));
  if (off > 1e-8 * std::max(M.ambient.norm_of(h), 1e-300)) {
    throw PreconditionError("h is not in M");
  }
  return iterate_decomposition(h, rq_operators(M, T), p);
}

Factorizer::Factorizer(const Subspace& M, const FiniteBlaschke& B, double alpha)
    : B_(B), alpha_(alpha), M_(M) {
  require_scalar(M.ambient);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in [0, 1]");
  M_ = transport(M, NormSpec::wold_one(alpha, B));
  prepare();
}

Factorizer::Factorizer(const Subspace& M, const FiniteBlaschke& B, double alpha, double s)
    : B_(B), alpha_(alpha), M_(M) {
  require_scalar(M.ambient);
  params_ = select_parameters(B, alpha, s);
  scale_ = 1.0 / params_->gamma;
  M_ = transport(M, NormSpec::wold_two(alpha, params_->N, B));
  prepare();
}

void Factorizer::prepare() {
  const OperatorMatrix T = scaled(mult_operator(B_, M_.ambient, 1), scale_);
  ni_ = near_invariance_check(M_, T);
  if (!ni_.is_nearly_invariant) {
    throw PreconditionError("M is not nearly invariant: residual " +
                            std::to_string(ni_.max_residual));
  }
  rq_ = rq_operators(M_, T);
}

std::shared_ptr<const Factorizer::Powers> Factorizer::powers(int levels) const {
  std::lock_guard<std::mutex> lock(*cache_lock_);
  if (cache_ && static_cast<int>(cache_->basis.size()) >= levels) return cache_;
  const int have = cache_ ? static_cast<int>(cache_->basis.size()) : 0;
  const int count = std::max({levels, 2 * have, 16});
  const Ambient& amb = M_.ambient;
  auto pw = std::make_shared<Powers>();
  pw->degree = work_degree(amb, B_, count);
  const int Dq = pw->degree;
  const TruncatedSeries b = banded_taylor(B_, scale_, Dq);
  pw->b = CMatrix::Zero(Dq + 1, count);
  CMatrix cur = CMatrix::Zero(Dq + 1, amb.dim());
  cur.topRows(amb.basis().rows()) = amb.basis();
  TruncatedSeries power = TruncatedSeries::constant(1.0, Dq);
  for (int k = 0; k < count; ++k) {
    pw->b.col(k) = power.coeffs();
    pw->basis.push_back(cur);
    power = series_mul(b, power, Dq);
    for (Eigen::Index j = 0; j < cur.cols(); ++j) {
      cur.col(j) = series_mul(b, TruncatedSeries(CVector(cur.col(j))), Dq).coeffs();
    }
  }
  cache_ = std::move(pw);
  return cache_;
}

// Coefficients of sum_k T^{k - first_row} (C_k G0) over rows k >= first_row.
CVector Factorizer::combine(const Powers& pw, const CMatrix& table, int first_row) const {
  const CMatrix& G0 = rq_->defect.G0.frame;
  CVector acc = CVector::Zero(pw.degree + 1);
  for (int k = first_row; k < table.rows(); ++k) {
    acc += pw.basis[k - first_row] * (G0 * table.row(k).transpose());
  }
  return acc;
}

FactorizationResult Factorizer::factor(const CVector& h) const {
  const Ambient& amb = M_.ambient;
  if (h.size() != amb.dim()) throw InvalidInput("vector length does not match the ambient");
  FactorizationResult r;
  r.h_norm = amb.norm_of(h);
  if (amb.norm_of(h - project(h, M_)) > 1e-8 * std::max(r.h_norm, 1e-300)) {
    throw PreconditionError("h is not in M");
  }
  const DecompositionSteps steps = defect_sequence(h, *rq_, -1);
  const CMatrix& G0 = rq_->defect.G0.frame;
  const int l = static_cast<int>(G0.cols());
  r.levels = steps.p + 1;
  r.coeff_table = CMatrix(r.levels, l);
  for (int k = 0; k < r.levels; ++k) {
    r.coeff_table.row(k) = (G0.adjoint() * (amb.gram() * steps.defect_parts[k])).transpose();
  }

  const auto pw = powers(r.levels);
  const CMatrix qcoef = pw->b.leftCols(r.levels) * r.coeff_table;
  std::vector<TruncatedSeries> qs;
  for (int i = 0; i < l; ++i) qs.push_back(TruncatedSeries(CVector(qcoef.col(i))));
  r.q = VectorSeries(qs);
  const TruncatedSeries diff(CVector(pw->basis[0] * h - combine(*pw, r.coeff_table, 0)));
  r.coeff_l2 = r.coeff_table.norm();
  r.coeff_bound_ok = r.coeff_l2 <= r.h_norm + 1e-8;

  double q2 = 0.0;
  if (!params_) {
    r.residual = series_norm_in(amb, diff);
    for (const auto& q : qs) q2 += q.coeffs().squaredNorm();
    r.q_norm = std::sqrt(q2);
    r.bound_rhs = r.q_norm;
    r.bound_slack = r.h_norm - r.q_norm;
    r.bound_ok = r.q_norm <= r.h_norm + 1e-8;
  } else {
    const double s = params_->s;
    r.residual = norm_h2(dilate(diff, s));
    for (const auto& q : qs) q2 += dilate(q, s).coeffs().squaredNorm();
    r.q_norm = std::sqrt(q2);
    const double c = params_->contraction;
    r.bound_rhs = std::sqrt(1.0 - c * c) * r.q_norm;
    r.bound_slack = r.h_norm - r.bound_rhs;
    // Allow for rounding in the two norms, nothing more.
    r.bound_ok = r.bound_slack >= -1e-12 * std::max(r.h_norm, 1.0);
  }
  return r;
}

InvarianceCheck Factorizer::invariance_check(const FactorizationResult& r) const {
  const Ambient& amb = M_.ambient;
  InvarianceCheck out;
  if (r.coeff_table.rows() > 1) {
    const auto pw = powers(r.levels);
    const TruncatedSeries shifted(combine(*pw, r.coeff_table, 1));
    const CVector c = amb.coordinates(shifted);
    out.residual = amb.norm_of(c - project(c, M_)) + amb.representation_error(shifted);
  }
  out.pass = out.residual < 1e-8 * std::max(1.0, r.h_norm);
  return out;
}

FactorizationResult factor_alpha_pos(const CVector& h, const Subspace& M, const FiniteBlaschke& B,
                                     double alpha) {
  return Factorizer(M, B, alpha).factor(h);
}

FactorizationResult factor_alpha_neg(const CVector& h, const Subspace& M, const FiniteBlaschke& B,
                                     double alpha, double s) {
  return Factorizer(M, B, alpha, s).factor(h);
}

InvarianceReport invariance_check_N(const Factorizer& engine,
                                    const std::vector<FactorizationResult>& results) {
  if (results.empty()) throw InvalidInput("no factorizations to check");
  InvarianceReport rep;
  for (const auto& r : results) {
    const InvarianceCheck c = engine.invariance_check(r);
    rep.residuals.push_back(c.residual);
    rep.max_residual = std::max(rep.max_residual, c.residual);
    rep.pass = rep.pass && c.pass;
  }
  return rep;
}

double InnerCandidate::isometry_defect(int grid) const {
  if (rows < 1 || cols < 1 || static_cast<int>(entries.size()) != rows * cols) {
    throw InvalidInput("inner candidate has inconsistent shape");
  }
  double worst = 0.0;
  for (int t = 0; t < grid; ++t) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * t / grid);
    CMatrix P(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) P(i, j) = series_eval(at(i, j), z);
    }
    const CMatrix D = P.adjoint() * P - CMatrix::Identity(cols, cols);
    worst = std::max(worst, D.cwiseAbs().maxCoeff());
  }
  return worst;
}

CandidateReport verify_inner_candidate(const Subspace& F, const InnerCandidate& phi) {
  const Ambient& amb = F.ambient;
  if (amb.kind() != Ambient::Kind::Taylor || amb.components() != phi.rows) {
    throw InvalidInput("candidate needs a Taylor ambient with one component per row of Phi");
  }
  CandidateReport rep;
  rep.isometry_defect = phi.isometry_defect();
  const int L = amb.degree();
  const int n = L + 1;

  // Columns Phi z^j e_c that fit inside degree L (tails below 1e-12).
  std::vector<CVector> cols;
  for (int c = 0; c < phi.cols; ++c) {
    for (int j = 0; j <= L; ++j) {
      CVector v = CVector::Zero(amb.dim());
      double tail = 0.0;
      for (int r = 0; r < phi.rows; ++r) {
        const TruncatedSeries& e = phi.at(r, c);
        for (int k = 0; k <= e.degree(); ++k) {
          if (k + j <= L) {
            v[r * n + k + j] = e[k];
          } else {
            tail += std::norm(e[k]);
          }
        }
      }
      if (std::sqrt(tail) > 1e-12) break;
      cols.push_back(v);
    }
  }
  Subspace range = cols.empty() ? Subspace::zero(amb) : orthonormalize(amb, cols);
  const CMatrix rest = CMatrix::Identity(amb.dim(), amb.dim()) - projector(range);
  const Subspace complement = orthonormalize(amb, rest);
  rep.complement_dim = complement.dim();
  rep.subspace_distance = subspace_distance(F, complement);
  rep.pass = rep.subspace_distance < 1e-7 && rep.isometry_defect < 1e-8;
  return rep;
}

RepresentationReport representation_check_h2(const Subspace& M, const FiniteBlaschke& B,
                                             std::optional<InnerCandidate> phi,
                                             std::uint64_t seed) {
  const Ambient& amb = M.ambient;
  require_scalar(amb);
  if (amb.norm().is_wold() || amb.norm().alpha != 0.0) {
    throw InvalidInput("representation check runs in H^2");
  }
  const OperatorMatrix T = mult_operator(B, amb, 1);
  const NearInvarianceReport ni = near_invariance_check(M, T);
  if (!ni.is_nearly_invariant) throw PreconditionError("M is not nearly invariant");
  const DefectBasis d = defect(M, T);
  const int l = d.l;
  const int m = B.degree();

  const CoordinateMap U = unitary_U(B, amb);
  const int Lw = U.levels;
  const CMatrix F0 = U.forward.matrix * d.G0.frame;  // (m Lw) x l

  // Levels of F0 beyond `margin` carry no weight; h may then use degrees up
  // to Lw - 1 - margin without the truncated product losing information.
  const double total = F0.squaredNorm();
  int margin = Lw;
  double tail = 0.0;
  while (margin > 0) {
    double level = 0.0;
    for (int c = 0; c < m; ++c) level += F0.row(c * Lw + margin - 1).squaredNorm();
    if (tail + level > 1e-28 * total) break;
    tail += level;
    --margin;
  }
  const int Hdeg = Lw - 1 - margin;
  if (Hdeg < 0) throw TruncationInsufficient("too few Wold levels to solve for h");
  const int hn = Hdeg + 1;

  CMatrix J = CMatrix::Zero(m * Lw, l * hn);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < hn; ++j) {
      for (int c = 0; c < m; ++c) {
        for (int n = j; n < Lw; ++n) J(c * Lw + n, i * hn + j) = F0(c * Lw + n - j, i);
      }
    }
  }
  Eigen::JacobiSVD<CMatrix> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv[sv.size() - 1] < 1e-8 * sv[0]) {
    throw NumericError("F0 is rank deficient at this truncation");
  }

  RepresentationReport rep{Subspace::zero(amb)};
  rep.l = l;
  const CMatrix Y = U.forward.matrix * M.frame;
  const CMatrix H = svd.solve(Y);
  rep.lsq_residual = (J * H - Y).colwise().norm().maxCoeff();

  int eff = 0;
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < hn; ++j) {
      if (H.row(i * hn + j).cwiseAbs().maxCoeff() > 1e-9) eff = std::max(eff, j);
    }
  }
  rep.effective_degree = eff;
  const Ambient famb = Ambient::taylor(eff, NormSpec::h2(), l);
  CMatrix Ht(l * (eff + 1), H.cols());
  double discarded = 0.0;
  for (int i = 0; i < l; ++i) {
    Ht.middleRows(i * (eff + 1), eff + 1) = H.middleRows(i * hn, eff + 1);
    if (hn > eff + 1) {
      discarded = std::max(discarded, H.middleRows(i * hn + eff + 1, hn - eff - 1).norm());
    }
  }
  rep.discarded_tail = discarded;
  rep.F_prime = orthonormalize(famb, Ht);

  const OperatorMatrix Sb = backward_shift_operator(famb);
  const CMatrix moved = Sb.matrix * rep.F_prime.frame;
  const CMatrix off = moved - projector(rep.F_prime) * moved;
  rep.sstar_invariance_residual = off.cols() ? off.colwise().norm().maxCoeff() : 0.0;

  SeededRng rng(seed);
  for (int t = 0; t < 50; ++t) {
    CVector c = rng.complex_vector(M.dim());
    const CVector f = M.frame * c;
    const double nf = amb.norm_of(f);
    const double nh = (Ht * c).norm();
    rep.isometry_defect = std::max(rep.isometry_defect, std::abs(nf - nh) / nf);
  }

  if (phi) {
    rep.candidate = verify_inner_candidate(rep.F_prime, *phi);
    rep.phi = std::move(phi);
  }
  return rep;
}

BeurlingLaxResult scalar_beurling_lax(const Subspace& F) {
  const Ambient& amb = F.ambient;
  if (amb.kind() != Ambient::Kind::Taylor || amb.components() != 1 || amb.norm().is_wold() ||
      amb.norm().alpha != 0.0) {
    throw InvalidInput("scalar Beurling-Lax needs a scalar Taylor ambient with the H^2 norm");
  }
  if (F.dim() == 0) throw PreconditionError("the zero subspace has no inner function");
  const CMatrix Sb = backward_shift_operator(amb).matrix;
  const CMatrix moved = Sb * F.frame;
  const CMatrix off = moved - projector(F) * moved;
  BeurlingLaxResult out{FiniteBlaschke::monomial(1)};
  out.invariance_residual = off.colwise().norm().maxCoeff();
  if (out.invariance_residual > 1e-8) {
    throw PreconditionError("subspace is not invariant under the backward shift");
  }

  const CMatrix A = F.frame.adjoint() * moved;
  Eigen::ComplexEigenSolver<CMatrix> es(A, false);
  std::vector<Complex> lambdas(es.eigenvalues().data(),
                               es.eigenvalues().data() + es.eigenvalues().size());
  for (Complex& z : lambdas) {
    if (std::abs(z) < 1e-6) z = 0.0;
    if (std::abs(z) >= 1.0) {
      throw NumericError("backward-shift eigenvalue outside the disc: inconsistent subspace");
    }
  }
  // Average near-repeated eigenvalues so repeated zeros come out repeated.
  std::vector<bool> used(lambdas.size(), false);
  int m0 = 0;
  std::vector<Complex> zeros;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> group{i};
    used[i] = true;
    for (std::size_t g = 0; g < group.size(); ++g) {
      for (std::size_t j = 0; j < lambdas.size(); ++j) {
        if (!used[j] && std::abs(lambdas[j] - lambdas[group[g]]) < 1e-5) {
          used[j] = true;
          group.push_back(j);
        }
      }
    }
    Complex mean = 0.0;
    for (std::size_t j : group) mean += lambdas[j];
    mean /= static_cast<double>(group.size());
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (mean == Complex{}) {
        ++m0;
      } else {
        zeros.push_back(std::conj(mean));
      }
    }
  }
  out.theta = FiniteBlaschke(m0, zeros, true);
  const Subspace K = orthonormalize(amb, model_space_matrix(out.theta, amb.taylor_degree()));
  out.subspace_distance = subspace_distance(F, K);
  return out;
}

Subspace example_type_subspace(const FiniteBlaschke& B, Complex a, int m, int K,
                               const NormSpec& norm, bool skip_constant) {
  if (B.degree() < 2) throw InvalidInput("example-type subspaces need deg B >= 2");
  if (K < 1 || m < 0 || m >= K) throw InvalidInput("need 0 <= m < K");
  if (std::abs(blaschke_eval(B, a)) < 1e-12) throw PreconditionError("a must not be a zero of B");
  const FiniteBlaschke phi = FiniteBlaschke::automorphism(a);
  const Ambient amb = Ambient::model(B.power(K) * phi, norm);
  const int D = amb.taylor_degree();
  const CMatrix E = model_space_matrix(B, D);
  const TruncatedSeries b = blaschke_taylor(B, D);
  const TruncatedSeries ph = blaschke_taylor(phi, D);

  std::vector<CVector> gens;
  TruncatedSeries cur = series_mul(ph, TruncatedSeries(CVector(E.col(0))), D);
  for (int k = 0; k < K; ++k) {
    if (!(skip_constant && k == 0)) gens.push_back(amb.coordinates(cur));
    cur = series_mul(cur, b, D);
  }
  cur = series_mul(ph, TruncatedSeries(CVector(E.col(1))), D);
  for (int i = 0; i <= m; ++i) {
    gens.push_back(amb.coordinates(cur));
    cur = series_mul(cur, b, D);
  }
  return orthonormalize(amb, gens);
}

bool ScenarioReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

ScenarioReport example_section2(Complex a, int m, int degree, bool literal_naturals) {
  const double r = std::abs(a);
  if (!(r > 0.0 && r < 1.0)) throw InvalidInput("need 0 < |a| < 1");
  if (m < 0) throw InvalidInput("m must be nonnegative");
  const int L = (degree + 1) / 2;
  if (m >= L) throw InvalidInput("degree too small for this m");
  const FiniteBlaschke B = FiniteBlaschke::monomial(2);
  const Subspace M = example_type_subspace(B, a, m, L, NormSpec::h2(), literal_naturals);
  const Ambient& amb = M.ambient;

  ScenarioReport rep;
  rep.parameters = {{"a_re", a.real()},        {"a_im", a.imag()},
                    {"m", m},                   {"degree", degree},
                    {"levels", L},              {"dim_M", M.dim()},
                    {"taylor_degree", amb.taylor_degree()}};

  const OperatorMatrix T = mult_operator(B, amb, 0);
  const NearInvarianceReport ni = near_invariance_check(M, T, 1);
  Check c1{"near_invariance", ni.is_nearly_invariant, ni.max_residual,
           "preimage_dim=" + std::to_string(ni.preimage_dim) + " guard=" + std::to_string(ni.guard)};
  const int D = amb.taylor_degree();
  const TruncatedSeries ph = blaschke_taylor(FiniteBlaschke::automorphism(a), D);
  if (ni.witness) {
    const TruncatedSeries w = amb.function(*ni.witness);
    const double cosine = std::abs(w.coeffs().dot(ph.coeffs())) / (w.coeffs().norm() * ph.coeffs().norm());
    c1.details += " witness_angle_to_phi_a=" + std::to_string(std::sqrt(std::max(0.0, 1.0 - cosine * cosine)));
  }
  rep.checks.push_back(c1);
  if (!ni.is_nearly_invariant) return rep;

  const DefectBasis d = defect(M, T);
  rep.parameters.push_back({"l", d.l});
  rep.checks.push_back({"defect_dimension", d.l == 2, static_cast<double>(std::abs(d.l - 2)),
                        "l=" + std::to_string(d.l)});

  const Subspace expected =
      orthonormalize(amb, std::vector<CVector>{amb.coordinates(ph),
                                               amb.coordinates(series_mul(
                                                   TruncatedSeries::monomial(1, D), ph, D))});
  const double gdist = subspace_distance(d.G0, expected);
  rep.checks.push_back({"defect_span", gdist < 1e-8, gdist, "G0 against span{phi_a, z phi_a}"});

  InnerCandidate phi{2, 1, {TruncatedSeries(m + 1), TruncatedSeries::monomial(m + 1, m + 1)}};
  const RepresentationReport rr = representation_check_h2(M, B, phi);
  rep.parameters.push_back({"effective_degree", rr.effective_degree});
  rep.checks.push_back({"sstar_invariance", rr.sstar_invariance_residual < 1e-8,
                        rr.sstar_invariance_residual,
                        "dim F'=" + std::to_string(rr.F_prime.dim())});
  rep.checks.push_back({"isometry", rr.isometry_defect < 1e-8, rr.isometry_defect,
                        "50 random combinations"});
  rep.checks.push_back({"inner_candidate", rr.candidate->pass, rr.candidate->subspace_distance,
                        "Phi = z^" + std::to_string(m + 1) + " (0,1)^t, complement dim " +
                            std::to_string(rr.candidate->complement_dim)});
  return rep;
}

}  // namespace nearshift
