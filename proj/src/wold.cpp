#include "nearshift/wold.hpp"

#include <algorithm>
#include <cmath>

#include "nearshift/random.hpp"

namespace nearshift {

std::string to_string(NormVariant v) {
  switch (v) {
    case NormVariant::AlphaStandard: return "alpha-standard";
    case NormVariant::WoldOne: return "wold-one";
    case NormVariant::WoldTwo: return "wold-two";
  }
  return "alpha-standard";
}

NormVariant parse_norm_variant(const std::string& name) {
  if (name == "alpha-standard") return NormVariant::AlphaStandard;
  if (name == "wold-one") return NormVariant::WoldOne;
  if (name == "wold-two") return NormVariant::WoldTwo;
  throw InvalidInput("unknown norm variant '" + name + "'");
}

NormSpec NormSpec::alpha_standard(double alpha) {
  NormSpec s;
  s.alpha = alpha;
  s.validate();
  return s;
}

NormSpec NormSpec::wold_one(double alpha, FiniteBlaschke B) {
  NormSpec s{NormVariant::WoldOne, alpha, 1, std::move(B)};
  s.validate();
  return s;
}

NormSpec NormSpec::wold_two(double alpha, int N, FiniteBlaschke B) {
  NormSpec s{NormVariant::WoldTwo, alpha, N, std::move(B)};
  s.validate();
  return s;
}

bool NormSpec::is_h2() const {
  return alpha == 0.0 && variant != NormVariant::WoldTwo;
}

double NormSpec::level_weight(int k) const {
  if (variant == NormVariant::WoldTwo && k < N) return std::pow(static_cast<double>(N), alpha);
  return std::pow(k + 1.0, alpha);
}

void NormSpec::validate() const {
  if (!std::isfinite(alpha)) throw InvalidInput("alpha must be finite");
  switch (variant) {
    case NormVariant::AlphaStandard:
      break;
    case NormVariant::WoldOne:
      if (alpha < 0.0 || alpha > 1.0) throw InvalidInput("wold-one requires alpha in [0, 1]");
      if (!B) throw InvalidInput("wold-one requires a Blaschke product");
      break;
    case NormVariant::WoldTwo:
      if (alpha < -1.0 || alpha >= 0.0) throw InvalidInput("wold-two requires alpha in [-1, 0)");
      if (N < 1) throw InvalidInput("wold-two requires N >= 1");
      if (!B) throw InvalidInput("wold-two requires a Blaschke product");
      break;
  }
}

namespace {

bool same_blaschke(const FiniteBlaschke& a, const FiniteBlaschke& b) {
  return a.origin_multiplicity() == b.origin_multiplicity() && a.zeros() == b.zeros() &&
         a.normalized() == b.normalized() && a.phase() == b.phase();
}

}  // namespace

bool operator==(const NormSpec& a, const NormSpec& b) {
  if (a.variant != b.variant || a.alpha != b.alpha) return false;
  if (a.variant == NormVariant::WoldTwo && a.N != b.N) return false;
  if (!a.is_wold()) return true;
  return same_blaschke(*a.B, *b.B);
}

int default_wold_levels(int degree, const FiniteBlaschke& B) {
  return 8 * (degree + 1) / B.degree() + 64;
}

CMatrix apply_toeplitz_conj(const TruncatedSeries& symbol, const CMatrix& F) {
  const Eigen::Index rows = F.rows();
  CMatrix out = CMatrix::Zero(rows, F.cols());
  const double top = symbol.coeffs().cwiseAbs().maxCoeff();
  const int reach = std::min<int>(symbol.degree(), static_cast<int>(rows) - 1);
  for (int i = 0; i <= reach; ++i) {
    const Complex b = symbol.coeffs()[i];
    if (std::abs(b) <= 1e-20 * top) continue;
    out.topRows(rows - i) += std::conj(b) * F.bottomRows(rows - i);
  }
  return out;
}

WoldBatch wold_batch(const CMatrix& F, const FiniteBlaschke& B, int max_levels,
                     double stop_relative) {
  const int m = B.degree();
  int D = static_cast<int>(F.rows()) - 1;
  CMatrix R = F;
  if (D < m) {
    R = CMatrix::Zero(m + 1, F.cols());
    R.topRows(F.rows()) = F;
    D = m;
  }
  const CMatrix E = model_space_matrix(B, D);
  const TruncatedSeries b = blaschke_taylor(B, D);
  const double start = R.norm();

  WoldBatch out;
  for (int k = 0; k < max_levels; ++k) {
    if (R.norm() <= stop_relative * start) break;
    out.levels.push_back(E.adjoint() * R);
    R = apply_toeplitz_conj(b, R);
  }
  out.remainder = R.colwise().norm().transpose();
  return out;
}

WoldCoordinates wold_decompose(const TruncatedSeries& f, const FiniteBlaschke& B, int max_levels,
                               bool strict) {
  if (max_levels < 0) throw InvalidInput("levels must be nonnegative");
  if (max_levels == 0) max_levels = default_wold_levels(f.degree(), B);
  const WoldBatch batch = wold_batch(f.coeffs(), B, max_levels);

  WoldCoordinates w{B, CMatrix::Zero(static_cast<Eigen::Index>(batch.levels.size()), B.degree())};
  for (std::size_t k = 0; k < batch.levels.size(); ++k) {
    w.coords.row(static_cast<Eigen::Index>(k)) = batch.levels[k].col(0).transpose();
  }
  w.degree = f.degree();
  w.residual_norm = batch.remainder[0];
  w.truncation_warning = w.residual_norm > 1e-8 * norm_h2(f);
  if (w.truncation_warning && strict) {
    throw TruncationInsufficient("Wold decomposition left a remainder of relative size " +
                                 std::to_string(w.residual_norm / norm_h2(f)));
  }
  return w;
}

TruncatedSeries wold_reconstruct(const WoldCoordinates& w, int degree) {
  if (degree < 0) throw InvalidInput("degree must be nonnegative");
  const int D = std::max(degree, w.source.degree());
  if (w.levels() == 0) return TruncatedSeries(degree);
  const CMatrix E = model_space_matrix(w.source, D);
  const TruncatedSeries b = blaschke_taylor(w.source, D);
  TruncatedSeries acc(D);
  for (int k = w.levels() - 1; k >= 0; --k) {
    acc = series_mul(acc, b, D);
    acc += TruncatedSeries(CVector(E * w.coords.row(k).transpose()));
  }
  return acc.truncated(degree);
}

double wold_norm(const WoldCoordinates& w, const NormSpec& spec) {
  double acc = 0.0;
  for (int k = 0; k < w.levels(); ++k) acc += spec.level_weight(k) * w.coords.row(k).squaredNorm();
  return std::sqrt(acc);
}

double space_norm(const TruncatedSeries& f, const NormSpec& spec) {
  spec.validate();
  if (!spec.is_wold()) return norm_alpha(f, spec.alpha);
  const WoldCoordinates w = wold_decompose(f, *spec.B);
  if (w.truncation_warning) {
    throw TruncationInsufficient("series not decomposable to tolerance for a Wold norm");
  }
  return wold_norm(w, spec);
}

double gamma2(double alpha, int N) {
  if (N < 1) throw InvalidInput("N must be positive");
  return std::pow(1.0 - 1.0 / (N + 1.0), -alpha / 2.0);
}

NormParameters select_parameters(const FiniteBlaschke& B, double alpha, double s) {
  if (!(alpha >= -1.0 && alpha < 0.0)) throw InvalidInput("alpha must lie in [-1, 0)");
  if (!(s > 0.0 && s < 1.0)) throw InvalidInput("radius must lie in (0, 1)");
  if (B.max_zero_modulus() >= s) {
    throw PreconditionError("every zero of B must lie inside the disc of radius s");
  }
  NormParameters p;
  p.s = s;
  p.beta = sup_on_circle(B, s);
  // gamma2(N) > beta  <=>  N/(N+1) > beta^(2/|alpha|) =: t.
  const double t = std::pow(p.beta, 2.0 / std::abs(alpha));
  int N = static_cast<int>(std::floor(t / (1.0 - t))) + 1;
  N = std::max(N, 1);
  while (N > 1 && gamma2(alpha, N - 1) > p.beta) --N;
  while (!(gamma2(alpha, N) > p.beta)) ++N;
  p.N = N;
  p.gamma = gamma2(alpha, N);
  p.contraction = p.beta / p.gamma;
  return p;
}

double suggest_s(const FiniteBlaschke& B) { return (1.0 + B.max_zero_modulus()) / 2.0; }

namespace {

// Taylor degree beyond which the coefficients of B stay below eps.
int taylor_tail_degree(const FiniteBlaschke& B, double eps) {
  if (B.is_monomial()) return B.origin_multiplicity();
  int d = 64;
  for (;;) {
    const TruncatedSeries b = blaschke_taylor(B, d);
    int last = d;
    while (last > 0 && std::abs(b[last]) < eps) --last;
    if (last < d - 16) return last;
    if (d > 8192) throw NumericError("Blaschke coefficients decay too slowly");
    d *= 2;
  }
}

}  // namespace

LowerBoundReport verify_lower_bound(const FiniteBlaschke& B, const NormSpec& spec, int trials,
                                    std::uint64_t seed, int poly_degree) {
  spec.validate();
  if (!spec.is_wold()) throw InvalidInput("lower-bound verification needs a wold norm");
  if (trials < 0 || poly_degree < 0) throw InvalidInput("trial counts must be nonnegative");

  LowerBoundReport rep;
  rep.gamma = spec.variant == NormVariant::WoldOne ? 1.0 : gamma2(spec.alpha, spec.N);
  rep.trials = trials;
  rep.min_ratio = std::numeric_limits<double>::infinity();

  const int tail = taylor_tail_degree(B, 1e-18);
  SeededRng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const TruncatedSeries f = rng.series(poly_degree, poly_degree);
    const int out = poly_degree + tail;
    const TruncatedSeries Bf = series_mul(blaschke_taylor(B, out), f, out);
    const double ratio = space_norm(Bf, spec) / space_norm(f, spec);
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    if (ratio < rep.gamma - 1e-9) {
      rep.violations.push_back("trial " + std::to_string(t) + ": ratio " + std::to_string(ratio));
    }
  }

  // Extremal witness: the first K_B basis vector placed at level N-1 (level 0
  // for wold-one, where the bound is only approached along high levels).
  const int level = spec.variant == NormVariant::WoldTwo ? spec.N - 1 : 0;
  WoldCoordinates w{B, CMatrix::Zero(level + 2, B.degree())};
  w.coords(level, 0) = 1.0;
  const int deg = (level + 2) * std::max(tail, 1) + B.degree();
  rep.witness = wold_reconstruct(w, deg);
  const TruncatedSeries Bw = series_mul(blaschke_taylor(B, deg), rep.witness, deg);
  rep.witness_ratio = space_norm(Bw, spec) / space_norm(rep.witness, spec);
  rep.min_ratio = std::min(rep.min_ratio, rep.witness_ratio);
  if (rep.witness_ratio < rep.gamma - 1e-9) {
    rep.violations.push_back("witness ratio " + std::to_string(rep.witness_ratio));
  }
  if (spec.variant == NormVariant::WoldTwo && std::abs(rep.witness_ratio - rep.gamma) > 1e-9) {
    rep.violations.push_back("witness ratio misses gamma2 by " +
                             std::to_string(std::abs(rep.witness_ratio - rep.gamma)));
  }
  return rep;
}

}  // namespace nearshift
