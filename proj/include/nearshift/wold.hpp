#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nearshift/blaschke.hpp"

namespace nearshift {

enum class NormVariant { AlphaStandard, WoldOne, WoldTwo };

std::string to_string(NormVariant v);
NormVariant parse_norm_variant(const std::string& name);

/// Inner product on a space of analytic functions.
///
///   alpha-standard: sum |a_k|^2 (k+1)^alpha over Taylor coefficients
///   wold-one:       sum (k+1)^alpha ||h_k||^2 over Wold pieces, alpha in [0, 1]
///   wold-two:       level weight N^alpha below N, (k+1)^alpha from N on, alpha in [-1, 0)
struct NormSpec {
  NormVariant variant = NormVariant::AlphaStandard;
  double alpha = 0.0;
  int N = 1;
  std::optional<FiniteBlaschke> B;

  static NormSpec h2() { return {}; }
  static NormSpec alpha_standard(double alpha);
  static NormSpec wold_one(double alpha, FiniteBlaschke B);
  static NormSpec wold_two(double alpha, int N, FiniteBlaschke B);

  bool is_wold() const { return variant != NormVariant::AlphaStandard; }
  bool is_h2() const;
  /// Weight of Wold level k (wold variants only).
  double level_weight(int k) const;
  void validate() const;
};

bool operator==(const NormSpec& a, const NormSpec& b);

struct WoldCoordinates {
  FiniteBlaschke source;
  CMatrix coords;               // levels x deg(B)
  double residual_norm = 0.0;   // H^2 norm of the undecomposed remainder
  bool truncation_warning = false;
  int degree = 0;               // degree of the decomposed series

  int levels() const { return static_cast<int>(coords.rows()); }
  double level_norm(int k) const { return coords.row(k).norm(); }
};

/// Level count used when the caller passes 0.
int default_wold_levels(int degree, const FiniteBlaschke& B);

/// Wold pieces h_k = P_{K_B} T_{conj B}^k f, at most max_levels of them. Stops
/// early once the remainder drops below 1e-15 ||f||. A remainder above
/// 1e-8 ||f|| sets truncation_warning, or throws TruncationInsufficient when strict.
WoldCoordinates wold_decompose(const TruncatedSeries& f, const FiniteBlaschke& B,
                               int max_levels = 0, bool strict = false);

TruncatedSeries wold_reconstruct(const WoldCoordinates& w, int degree);

/// Batched decomposition of the columns of F (Taylor coefficients, one
/// function per column). levels[k] is deg(B) x cols.
struct WoldBatch {
  std::vector<CMatrix> levels;
  RVector remainder;  // H^2 norm of what is left in each column
};
WoldBatch wold_batch(const CMatrix& F, const FiniteBlaschke& B, int max_levels,
                     double stop_relative = 1e-15);

/// f -> P_+(conj(B) f) on Taylor coefficients, applied columnwise. Terms with
/// |b_k| below 1e-20 max|b| are skipped.
CMatrix apply_toeplitz_conj(const TruncatedSeries& symbol, const CMatrix& F);

double space_norm(const TruncatedSeries& f, const NormSpec& spec);
double wold_norm(const WoldCoordinates& w, const NormSpec& spec);

double gamma2(double alpha, int N);

struct NormParameters {
  double gamma = 1.0;
  int N = 1;
  double s = 0.0;
  double beta = 0.0;
  double contraction = 0.0;
};

/// Smallest N with gamma2(alpha, N) > sup_{|z|=s} |B|.
NormParameters select_parameters(const FiniteBlaschke& B, double alpha, double s);

/// (1 + max|a_n|)/2.
double suggest_s(const FiniteBlaschke& B);

struct LowerBoundReport {
  double min_ratio = 0.0;
  double gamma = 1.0;
  TruncatedSeries witness;
  double witness_ratio = 0.0;
  std::vector<std::string> violations;
  int trials = 0;

  bool pass() const { return violations.empty(); }
};

/// Checks ||Bf|| >= gamma ||f|| in a wold norm on seeded random polynomials
/// (gamma = 1 for wold-one, gamma2 for wold-two) plus the extremal witness.
LowerBoundReport verify_lower_bound(const FiniteBlaschke& B, const NormSpec& spec, int trials,
                                    std::uint64_t seed, int poly_degree = 24);

}  // namespace nearshift
