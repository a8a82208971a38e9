#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nearshift/operators.hpp"

namespace nearshift {

/// Summands of h = sum_{k<=p} T^k Q R^k h + T^{p+1} R^{p+1} h.
struct DecompositionSteps {
  std::vector<CVector> defect_parts;     // Q R^k h (codomain coordinates)
  CVector tail_preimage;                 // R^{p+1} h (codomain coordinates)
  std::vector<TruncatedSeries> summands; // T^k Q R^k h as Taylor series
  TruncatedSeries remainder;             // T^{p+1} R^{p+1} h
  double reconstruction_residual = 0.0;  // ambient norm of h - sum - remainder
  int p = 0;
};

/// p < 0 iterates until ||R^{p+1} h|| < 1e-14 ||h|| (or the iteration cap).
DecompositionSteps iterate_decomposition(const CVector& h, const RQPair& rq, int p = -1);
DecompositionSteps iterate_decomposition(const CVector& h, const Subspace& M,
                                         const OperatorMatrix& T, int p = -1);

/// Norm of a Taylor series in an ambient's norm: the ambient norm of its
/// projection plus a Dirichlet-weighted norm of the part outside the ambient.
double series_norm_in(const Ambient& ambient, const TruncatedSeries& f);

struct FactorizationResult {
  VectorSeries q;          // q_1..q_l
  CMatrix coeff_table;     // row k = C_k (or D_k)
  double residual = 0.0;   // ||h - sum g_i q_i||, on sD for negative alpha
  double coeff_l2 = 0.0;
  double q_norm = 0.0;     // H^2 norm of q, or H^2(sD) norm for negative alpha
  double h_norm = 0.0;     // ||h|| in the working norm
  double bound_rhs = 0.0;  // right side of the norm bound
  bool bound_ok = false;
  double bound_slack = 0.0;
  bool coeff_bound_ok = false;
  int levels = 0;
};

struct InvarianceCheck {
  double residual = 0.0;  // distance from q~ G0 to M
  bool pass = false;
};

/// The engine behind factor_alpha_pos / factor_alpha_neg: checks near
/// invariance once and caches R, Q and G0 for repeated factorizations.
class Factorizer {
 public:
  /// alpha in [0, 1]: wold-one norm, T = T_B.
  Factorizer(const Subspace& M, const FiniteBlaschke& B, double alpha);
  /// alpha in [-1, 0): wold-two norm with N from select_parameters, T = T_B / gamma2.
  Factorizer(const Subspace& M, const FiniteBlaschke& B, double alpha, double s);

  FactorizationResult factor(const CVector& h) const;
  /// Shifts the coefficient table one level and checks that q~ G0 lies in M.
  InvarianceCheck invariance_check(const FactorizationResult& r) const;

  const Subspace& subspace() const { return M_; }
  const RQPair& rq() const { return *rq_; }
  const NearInvarianceReport& near_invariance() const { return ni_; }
  const std::optional<NormParameters>& parameters() const { return params_; }
  double scale() const { return scale_; }

 private:
  // Taylor coefficients of T^k 1 and of T^k applied to the ambient basis, k < levels.
  struct Powers {
    int degree = 0;
    CMatrix b;                   // column k: (scale B)^k
    std::vector<CMatrix> basis;  // (scale B)^k times the ambient basis
  };

  void prepare();
  std::shared_ptr<const Powers> powers(int levels) const;
  CVector combine(const Powers& pw, const CMatrix& table, int first_row) const;

  FiniteBlaschke B_;
  double alpha_;
  double scale_ = 1.0;  // T = scale * T_B
  std::optional<NormParameters> params_;
  Subspace M_;
  NearInvarianceReport ni_;
  std::optional<RQPair> rq_;
  mutable std::shared_ptr<std::mutex> cache_lock_ = std::make_shared<std::mutex>();
  mutable std::shared_ptr<const Powers> cache_;
};

FactorizationResult factor_alpha_pos(const CVector& h, const Subspace& M, const FiniteBlaschke& B,
                                     double alpha);
FactorizationResult factor_alpha_neg(const CVector& h, const Subspace& M, const FiniteBlaschke& B,
                                     double alpha, double s);

struct InvarianceReport {
  std::vector<double> residuals;
  double max_residual = 0.0;
  bool pass = true;
};
InvarianceReport invariance_check_N(const Factorizer& engine,
                                    const std::vector<FactorizationResult>& results);

/// l x l' matrix of analytic functions, row-major.
struct InnerCandidate {
  int rows = 0;
  int cols = 0;
  std::vector<TruncatedSeries> entries;

  const TruncatedSeries& at(int i, int j) const { return entries[i * cols + j]; }
  /// max over a 256-point circle grid of |Phi^* Phi - I|.
  double isometry_defect(int grid = 256) const;
};

struct CandidateReport {
  double isometry_defect = 0.0;
  double subspace_distance = 0.0;
  int complement_dim = 0;
  bool pass = false;
};

/// Distance from F (in a vector Taylor ambient of degree L) to the degree-L
/// truncation of H^2(C^l) (-) Phi H^2(C^l').
CandidateReport verify_inner_candidate(const Subspace& F, const InnerCandidate& phi);

struct RepresentationReport {
  Subspace F_prime;               // in H^2(C^l), truncated at effective_degree
  int effective_degree = 0;
  double discarded_tail = 0.0;
  double sstar_invariance_residual = 0.0;
  double isometry_defect = 0.0;
  double lsq_residual = 0.0;
  int l = 0;
  std::optional<InnerCandidate> phi;
  std::optional<CandidateReport> candidate;
};

/// Transports M through U, solves U f = h F0 for each frame vector f and
/// assembles F' = {h}. `phi`, when given, is verified against F'.
RepresentationReport representation_check_h2(const Subspace& M, const FiniteBlaschke& B,
                                             std::optional<InnerCandidate> phi = std::nullopt,
                                             std::uint64_t seed = 0);

struct BeurlingLaxResult {
  FiniteBlaschke theta;
  double invariance_residual = 0.0;
  double subspace_distance = 0.0;
};

/// For an S*-invariant subspace F of a scalar Taylor ambient, the Blaschke
/// product theta with F = K_theta (zeros: conjugated eigenvalues of S* on F).
BeurlingLaxResult scalar_beurling_lax(const Subspace& F);

/// phi_a * (span{B^k e_1 : k < K} + span{B^i e_2 : i <= m}) inside K_{B^K phi_a},
/// e_j the model-space basis of B. With skip_constant the first span starts at k = 1.
Subspace example_type_subspace(const FiniteBlaschke& B, Complex a, int m, int K,
                               const NormSpec& norm = NormSpec::h2(), bool skip_constant = false);

struct Check {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string details;
};

struct ScenarioReport {
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> parameters;
  bool pass() const;
};

/// The z^2 example in H^2: M = phi_a (span{z^{2k}} + span{z^{2i+1} : i <= m}) with
/// k < L = (degree+1)/2 (k >= 1 under literal_naturals), checked for near
/// invariance, l = 2, G0 = span{phi_a, phi_a z}, the representation, and
/// Phi = z^{m+1} (0, 1)^t.
ScenarioReport example_section2(Complex a, int m, int degree, bool literal_naturals = false);

}  // namespace nearshift
