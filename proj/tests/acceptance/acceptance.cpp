#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "nearshift/neardecomp.hpp"
#include "nearshift/random.hpp"

using namespace nearshift;
using oracle::Vec;

namespace {

struct Outcome {
  bool pass;
  std::string details;
};

Vec to_vec(const TruncatedSeries& f) { return Vec(f.coeffs().data(), f.coeffs().data() + f.coeffs().size()); }
Vec to_vec(const CVector& v) { return Vec(v.data(), v.data() + v.size()); }

Vec add_scaled(Vec acc, const Vec& x, Complex c) {
  if (acc.size() < x.size()) acc.resize(x.size(), 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) acc[k] += c * x[k];
  return acc;
}

double diff_norm(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
    const Complex x = k < a.size() ? a[k] : 0.0;
    const Complex y = k < b.size() ? b[k] : 0.0;
    s += std::norm(x - y);
  }
  return std::sqrt(s);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Vec oracle_blaschke(const FiniteBlaschke& B, int degree) {
  Vec b = oracle::blaschke_taylor(B.origin_multiplicity(), B.zeros(), B.normalized(), degree);
  for (auto& c : b) c *= B.phase();
  return b;
}

// Orthonormal basis of K_B from kernels and partial products, origin zeros first
// (with the factor z, not -z, for them).
std::vector<Vec> oracle_model_basis(const FiniteBlaschke& B, int degree) {
  std::vector<Complex> w(B.origin_multiplicity(), 0.0);
  w.insert(w.end(), B.zeros().begin(), B.zeros().end());
  std::vector<Vec> out;
  Vec partial(degree + 1, 0.0);
  partial[0] = 1.0;
  for (const Complex& a : w) {
    Vec kernel(degree + 1);
    Complex p = std::sqrt(1.0 - std::norm(a));
    for (int k = 0; k <= degree; ++k) {
      kernel[k] = p;
      p *= std::conj(a);
    }
    out.push_back(oracle::convolve(partial, kernel, degree));
    const Vec factor = a == Complex{} ? Vec{0.0, 1.0} : oracle::automorphism_taylor(a, degree);
    partial = oracle::convolve(partial, factor, degree);
  }
  return out;
}

FiniteBlaschke random_blaschke(SeededRng& rng, int max_degree, double max_modulus) {
  const int deg = rng.integer(1, max_degree);
  const int m0 = rng.integer(0, deg - 1);
  std::vector<Complex> zeros;
  while (static_cast<int>(zeros.size()) < deg - m0) {
    const Complex a = std::polar(0.1 + (max_modulus - 0.1) * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    bool distinct = true;
    for (const Complex& b : zeros) distinct = distinct && std::abs(a - b) > 0.05;
    if (distinct) zeros.push_back(a);
  }
  return FiniteBlaschke(m0, zeros);
}

CVector random_member(SeededRng& rng, const Subspace& M) {
  const CVector h = M.frame * rng.complex_vector(M.dim());
  return h / M.ambient.norm_of(h);
}

// ---------------------------------------------------------------------------

Outcome wold_round_trip() {
  const int D = 64;
  const std::vector<FiniteBlaschke> Bs = {FiniteBlaschke::monomial(2), FiniteBlaschke(0, {0.5, Complex(0, -0.3)}),
                                          FiniteBlaschke(1, {0.4})};
  double recon = 0.0;
  double parseval = 0.0;
  for (const auto& B : Bs) {
    const std::vector<Vec> e = oracle_model_basis(B, D);
    const Vec b = oracle_blaschke(B, D);
    std::vector<std::vector<Vec>> terms;  // terms[k][j] = B^k e_j
    SeededRng rng(1);
    for (int t = 0; t < 100; ++t) {
      const TruncatedSeries f = rng.series(rng.integer(0, 48), D);
      const WoldCoordinates w = wold_decompose(f, B);
      while (static_cast<int>(terms.size()) < w.levels()) {
        if (terms.empty()) {
          terms.push_back(e);
        } else {
          std::vector<Vec> next;
          for (const Vec& x : terms.back()) next.push_back(oracle::convolve(x, b, D));
          terms.push_back(next);
        }
      }
      Vec sum(D + 1, 0.0);
      for (int k = 0; k < w.levels(); ++k) {
        for (int j = 0; j < B.degree(); ++j) sum = add_scaled(sum, terms[k][j], w.coords(k, j));
      }
      const Vec fv = to_vec(f);
      const double fn = oracle::norm(fv);
      recon = std::max(recon, diff_norm(sum, fv) / fn);
      parseval = std::max(parseval, std::abs(w.coords.squaredNorm() - fn * fn) / (fn * fn));
    }
  }
  return {recon < 1e-9 && parseval < 1e-9, "reconstruction " + num(recon) + ", parseval " + num(parseval)};
}

Outcome lower_bounds() {
  bool pass = true;
  std::string details;
  for (const auto& B : {FiniteBlaschke::monomial(2), FiniteBlaschke(0, {0.4, 0.4})}) {
    for (double alpha : {0.0, 0.5, 1.0, -1.0, -0.5}) {
      NormSpec spec;
      double gamma = 1.0;
      if (alpha >= 0.0) {
        spec = NormSpec::wold_one(alpha, B);
      } else {
        const int N = select_parameters(B, alpha, 0.8).N;
        spec = NormSpec::wold_two(alpha, N, B);
        gamma = std::pow(1.0 - 1.0 / (N + 1.0), -alpha / 2.0);
      }
      const LowerBoundReport lb = verify_lower_bound(B, spec, 100, 3);
      bool ok = lb.min_ratio >= gamma * (1.0 - 1e-9) && std::abs(lb.gamma - gamma) < 1e-12;
      if (alpha < 0.0) {
        // f = B^{N-1} h sits on one level; the ratio is the quotient of level weights.
        const int N = spec.N;
        const double by_hand = std::sqrt(std::pow(N + 1.0, alpha) / std::pow(double(N), alpha));
        ok = ok && std::abs(lb.witness_ratio - by_hand) < 1e-9 && std::abs(by_hand - gamma) < 1e-12;
      }
      if (!ok) details += " fail(alpha=" + num(alpha) + ", min " + num(lb.min_ratio) + ")";
      pass = pass && ok;
    }
  }
  return {pass, pass ? "min ratio >= gamma, witness tight" : details};
}

Outcome functional_calculus() {
  const int D = 64;
  const Ambient amb = Ambient::taylor(D);
  double worst = 0.0;
  for (const auto& B : {FiniteBlaschke::monomial(2), FiniteBlaschke(0, {0.4, 0.4})}) {
    const int dh = 3;
    const int m = B.degree();
    const CoordinateMap U = unitary_U(B, amb, unitary_U(B, amb).levels + dh);
    const int K = U.levels;
    const Vec b = oracle_blaschke(B, D);
    SeededRng rng(4);
    for (int t = 0; t < 50; ++t) {
      const TruncatedSeries g = rng.series(D, D);
      const TruncatedSeries h = rng.series(dh, dh);
      const CVector Ug = U.forward.apply(amb.coordinates(g));
      CVector prod = CVector::Zero(m * K);
      for (int i = 0; i < m; ++i) {
        const Vec comp = oracle::convolve(to_vec(CVector(Ug.segment(i * K, K))), to_vec(h), K - 1);
        for (int k = 0; k < K; ++k) prod[i * K + k] = comp[k];
      }
      const Vec lhs = to_vec(U.backward.apply(prod));
      Vec rhs(D + 1, 0.0);
      Vec power = to_vec(g);
      for (int i = 0; i <= dh; ++i) {
        rhs = add_scaled(rhs, power, h[i]);
        power = oracle::convolve(power, b, D);
      }
      worst = std::max(worst, diff_norm(lhs, rhs) / oracle::norm(to_vec(g)));
    }
  }
  return {worst < 1e-9, "max residual " + num(worst)};
}

Outcome example_scenario() {
  bool pass = true;
  std::string details;
  const std::vector<std::pair<std::string, double>> limits = {
      {"sstar_invariance", 1e-8}, {"isometry", 1e-8}, {"inner_candidate", 1e-7}};
  for (int m : {0, 1}) {
    const ScenarioReport r = example_section2(0.5, m, 32);
    for (const Check& c : r.checks) {
      bool ok = c.pass;
      if (c.name == "defect_dimension") ok = ok && c.details == "l=2";
      for (const auto& [name, lim] : limits) {
        if (c.name == name) ok = ok && c.residual < lim;
      }
      if (!ok) details += " m=" + std::to_string(m) + "/" + c.name + "=" + num(c.residual);
      pass = pass && ok;
    }
  }
  return {pass, pass ? "near invariant, l=2, residuals within limits" : details};
}

struct FactorTally {
  double recon = 0.0;
  double min_slack = INFINITY;
  double coeff_excess = -INFINITY;
  double invariance = 0.0;
};

// h against sum_i g_i q_i by convolution, on the disc of radius r.
double oracle_reconstruction(const Factorizer& F, const CVector& h, const FactorizationResult& res, double r) {
  const Ambient& amb = F.subspace().ambient;
  const int deg = res.q.degree();
  Vec sum(deg + 1, 0.0);
  for (int i = 0; i < res.q.size(); ++i) {
    const Vec g = to_vec(amb.function(F.rq().defect.G0.vector(i), deg));
    sum = add_scaled(sum, oracle::convolve(g, to_vec(res.q[i]), deg), 1.0);
  }
  Vec hv = to_vec(amb.function(h, deg));
  double rk = 1.0;
  for (int k = 0; k <= deg; ++k, rk *= r) {
    sum[k] *= rk;
    hv[k] *= rk;
  }
  return diff_norm(sum, hv);
}

double oracle_q_norm(const FactorizationResult& res, double r) {
  double s = 0.0;
  for (int i = 0; i < res.q.size(); ++i) {
    double rk = 1.0;
    for (int k = 0; k <= res.q.degree(); ++k, rk *= r) s += std::norm(res.q[i][k]) * rk * rk;
  }
  return std::sqrt(s);
}

Outcome theorem_alpha_pos() {
  const FiniteBlaschke B = FiniteBlaschke::monomial(2);
  const Subspace M = example_type_subspace(B, 0.5, 1, 8);
  FactorTally t;
  for (double alpha : {0.0, 0.5, 1.0}) {
    const Factorizer F(M, B, alpha);
    SeededRng rng(5);
    for (int i = 0; i < 100; ++i) {
      const CVector h = random_member(rng, F.subspace());
      const FactorizationResult r = F.factor(h);
      t.recon = std::max(t.recon, oracle_reconstruction(F, h, r, 1.0) / r.h_norm);
      t.min_slack = std::min(t.min_slack, r.h_norm + 1e-8 - oracle_q_norm(r, 1.0));
      t.coeff_excess = std::max(t.coeff_excess, r.coeff_table.norm() - r.h_norm);
      t.invariance = std::max(t.invariance, F.invariance_check(r).residual);
    }
  }
  const bool pass = t.recon < 1e-8 && t.min_slack >= 0.0 && t.coeff_excess <= 1e-8 && t.invariance < 1e-8;
  return {pass, "reconstruction " + num(t.recon) + ", norm slack " + num(t.min_slack) + ", coefficient excess " +
                    num(t.coeff_excess) + ", invariance " + num(t.invariance)};
}

Outcome theorem_alpha_neg() {
  const double s = 0.8;
  FactorTally t;
  double contraction = 0.0;
  double beta_gap = 0.0;
  for (const auto& B : {FiniteBlaschke::monomial(2), FiniteBlaschke(0, {0.4, 0.4})}) {
    const Subspace M = example_type_subspace(B, 0.5, 1, 8);
    double beta = 0.0;
    for (int j = 0; j < 20000; ++j) {
      const Complex z = std::polar(s, 2.0 * std::numbers::pi * j / 20000);
      beta = std::max(beta, std::abs(oracle::blaschke(B.origin_multiplicity(), B.zeros(), B.normalized(), z)));
    }
    for (double alpha : {-1.0, -0.5}) {
      const Factorizer F(M, B, alpha, s);
      const NormParameters& p = *F.parameters();
      contraction = std::max(contraction, p.contraction);
      beta_gap = std::max(beta_gap, std::abs(p.beta - beta));
      const double gamma = std::pow(1.0 - 1.0 / (p.N + 1.0), -alpha / 2.0);
      const double factor = std::sqrt(1.0 - std::pow(p.beta / gamma, 2));
      SeededRng rng(6);
      for (int i = 0; i < 100; ++i) {
        const CVector h = random_member(rng, F.subspace());
        const FactorizationResult r = F.factor(h);
        t.recon = std::max(t.recon, oracle_reconstruction(F, h, r, s) / r.h_norm);
        t.min_slack = std::min(t.min_slack, r.h_norm - factor * oracle_q_norm(r, s) + 1e-12 * std::max(1.0, r.h_norm));
        t.coeff_excess = std::max(t.coeff_excess, r.coeff_table.norm() - r.h_norm);
        t.invariance = std::max(t.invariance, F.invariance_check(r).residual);
      }
    }
  }
  const bool pass = contraction < 1.0 && beta_gap < 1e-8 && t.recon < 1e-8 && t.min_slack >= 0.0 &&
                    t.coeff_excess <= 0.0 && t.invariance < 1e-8;
  return {pass, "contraction " + num(contraction) + ", reconstruction " + num(t.recon) + ", slack " +
                    num(t.min_slack) + ", coefficient excess " + num(t.coeff_excess) + ", invariance " +
                    num(t.invariance)};
}

Outcome scaled_operators() {
  const int D = 40;
  const double s = 0.8;
  const std::vector<FiniteBlaschke> Bs = {FiniteBlaschke::monomial(1), FiniteBlaschke::monomial(3),
                                          FiniteBlaschke(0, {0.4}), FiniteBlaschke(0, {0.4, Complex(-0.2, 0.3)}),
                                          FiniteBlaschke(1, {Complex(0, 0.35), -0.25})};
  const Ambient P = Ambient::taylor(D);
  double product = 0.0;
  double identity = 0.0;
  double toeplitz = 0.0;
  double literal = 0.0;
  double min_modulus = INFINITY;
  for (const auto& B : Bs) {
    const ScaledFactorization sf = scaled_factorization(B, s, D);
    Vec target = oracle_blaschke(B, D);
    double sk = 1.0;
    for (auto& c : target) {
      c /= sk;
      sk *= s;
    }
    const Vec prod = oracle::convolve(oracle_blaschke(sf.b, D), to_vec(sf.F_s), D);
    double worst = 0.0;
    for (int k = 0; k <= D; ++k) worst = std::max(worst, std::abs(prod[k] - target[k]));
    product = std::max(product, worst);
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j < 256; ++j) {
        const Complex z = std::polar(i / 40.0, 2.0 * std::numbers::pi * j / 256);
        min_modulus = std::min(min_modulus, std::abs(oracle::polyval(to_vec(sf.F_s), z)));
      }
    }

    const CMatrix Ts = ts_star(B, s, P).matrix;
    for (int j = 0; j <= D; ++j) {
      for (int k = j; k <= D; ++k) toeplitz = std::max(toeplitz, std::abs(Ts(j, k) - std::conj(target[k - j])));
    }
    // Left inverse: multiplication by B(s z), on the leading quarter where the
    // truncated sums have converged.
    Vec bs = oracle_blaschke(B, D);
    sk = 1.0;
    for (auto& c : bs) {
      c *= sk;
      sk *= s;
    }
    const int g = D / 4;
    for (int j = 0; j <= g; ++j) {
      for (int k = 0; k <= g; ++k) {
        Complex v = 0.0;
        Complex w = 0.0;
        for (int i = std::max(j, k); i <= D; ++i) {
          v += Ts(j, i) * bs[i - k];
          w += Ts(j, i) * target[i - k];
        }
        identity = std::max(identity, std::abs(v - (j == k ? 1.0 : 0.0)));
        literal = std::max(literal, std::abs(w - (j == k ? 1.0 : 0.0)));
      }
    }
  }
  const bool pass = product < 1e-9 && identity < 1e-8 && toeplitz < 1e-9 && min_modulus > 0.0;
  return {pass, "product " + num(product) + ", left inverse " + num(identity) + ", symbol " + num(toeplitz) +
                    ", min|F_s| " + num(min_modulus) + " (with b F_s in place of B(s z): " + num(literal) + ")"};
}

Outcome oracle_equivalence() {
  SeededRng rng(8);
  double wold_gap = 0.0;
  int mismatches = 0;
  for (int t = 0; t < 50; ++t) {
    const FiniteBlaschke B = random_blaschke(rng, 3, 0.5);
    const int D = rng.integer(4, 24);
    const TruncatedSeries f = rng.series(D, D);
    const WoldCoordinates w = wold_decompose(f, B);
    const int m = B.degree();
    const int levels = w.levels();
    int R = 64;
    std::vector<Vec> cols;
    for (;;) {
      cols.clear();
      const Vec b = oracle_blaschke(B, R);
      std::vector<Vec> cur = oracle_model_basis(B, R);
      for (int k = 0; k < levels; ++k) {
        for (int j = 0; j < m; ++j) cols.push_back(cur[j]);
        for (int j = 0; j < m; ++j) cur[j] = oracle::convolve(cur[j], b, R);
      }
      double tail = 0.0;
      for (const Vec& c : cols) {
        for (int k = R - 8; k <= R; ++k) tail = std::max(tail, std::abs(c[k]));
      }
      if (tail < 1e-17) break;
      R *= 2;
    }
    Vec fv = to_vec(f);
    fv.resize(R + 1, 0.0);
    const Vec x = oracle::least_squares(cols, fv);
    for (int k = 0; k < levels; ++k) {
      for (int j = 0; j < m; ++j) wold_gap = std::max(wold_gap, std::abs(w.coords(k, j) - x[m * k + j]));
    }

    const int Dm = rng.integer(4, 24);
    const Ambient amb = Ambient::taylor(Dm);
    const int dm = rng.integer(1, 6);
    const int shared = rng.integer(0, std::min(dm, 3));
    const int fresh = rng.integer(1, 6 - shared);
    CMatrix base(amb.dim(), dm);
    for (int j = 0; j < dm; ++j) base.col(j) = rng.complex_vector(amb.dim());
    CMatrix Wv(amb.dim(), shared + fresh);
    for (int j = 0; j < shared; ++j) Wv.col(j) = base * rng.complex_vector(dm);
    for (int j = 0; j < fresh; ++j) Wv.col(shared + j) = rng.complex_vector(amb.dim());
    const Subspace M = orthonormalize(amb, base);
    const Subspace W = orthonormalize(amb, Wv);
    std::vector<Vec> rows;
    for (int j = 0; j < dm; ++j) rows.push_back(to_vec(CVector(base.col(j))));
    for (int j = 0; j < Wv.cols(); ++j) rows.push_back(to_vec(CVector(Wv.col(j))));
    const int expected = oracle::rank(std::vector<Vec>(rows.begin(), rows.begin() + dm), 1e-9) +
                         oracle::rank(std::vector<Vec>(rows.begin() + dm, rows.end()), 1e-9) -
                         oracle::rank(rows, 1e-9);
    mismatches += intersect(M, W).dim() == expected ? 0 : 1;
  }
  return {wold_gap < 1e-8 && mismatches == 0,
          "max coordinate gap " + num(wold_gap) + ", dimension mismatches " + std::to_string(mismatches)};
}

Outcome beurling_lax_round_trip() {
  const int D = 80;
  const Ambient P = Ambient::taylor(D);
  SeededRng rng(9);
  double worst = 0.0;
  double zero_gap = 0.0;
  double containment = 0.0;
  for (int t = 0; t < 20; ++t) {
    const FiniteBlaschke B = random_blaschke(rng, 5, 0.7);
    // Span of monomials for the zero at the origin and kernels elsewhere.
    CMatrix gens = CMatrix::Zero(D + 1, B.degree());
    for (int j = 0; j < B.origin_multiplicity(); ++j) gens(j, j) = 1.0;
    for (std::size_t n = 0; n < B.zeros().size(); ++n) {
      Complex p = 1.0;
      for (int k = 0; k <= D; ++k, p *= std::conj(B.zeros()[n])) gens(k, B.origin_multiplicity() + n) = p;
    }
    const Subspace F = orthonormalize(P, gens);
    const BeurlingLaxResult r = scalar_beurling_lax(F);
    worst = std::max(worst, r.subspace_distance);

    if (r.theta.origin_multiplicity() != B.origin_multiplicity() || r.theta.zeros().size() != B.zeros().size()) {
      zero_gap = INFINITY;
      continue;
    }
    for (const Complex& a : B.zeros()) {
      double best = INFINITY;
      for (const Complex& b : r.theta.zeros()) best = std::min(best, std::abs(a - b));
      zero_gap = std::max(zero_gap, best);
    }
    // Each generator must lie in the span of the hand-built basis of K_theta.
    const std::vector<Vec> basis = oracle_model_basis(r.theta, D);
    for (int j = 0; j < gens.cols(); ++j) {
      const Vec g = to_vec(CVector(gens.col(j)));
      const Vec x = oracle::least_squares(basis, g);
      Vec fit(D + 1, 0.0);
      for (std::size_t i = 0; i < basis.size(); ++i) fit = add_scaled(fit, basis[i], x[i]);
      containment = std::max(containment, diff_norm(fit, g) / oracle::norm(g));
    }
  }
  return {worst < 1e-7 && zero_gap < 1e-6 && containment < 1e-7,
          "max distance " + num(worst) + ", zero gap " + num(zero_gap) + ", containment " + num(containment)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget;  // seconds, 0 when untimed
  };
  const std::vector<Criterion> criteria = {
      {"wold round trip", wold_round_trip, 5.0},
      {"lower bounds", lower_bounds, 5.0},
      {"functional calculus", functional_calculus, 0.0},
      {"example subspace", example_scenario, 2.0},
      {"factorization, alpha >= 0", theorem_alpha_pos, 10.0},
      {"factorization, alpha < 0", theorem_alpha_neg, 10.0},
      {"scaled co-analytic Toeplitz", scaled_operators, 0.0},
      {"oracle equivalence", oracle_equivalence, 0.0},
      {"Beurling-Lax round trip", beurling_lax_round_trip, 0.0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = criteria[i].budget == 0.0 || secs < criteria[i].budget;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("criterion %zu %-30s %s  %7.3f s  %s%s\n", i + 1, criteria[i].name, pass ? "PASS" : "FAIL", secs,
                o.details.c_str(), in_time ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
