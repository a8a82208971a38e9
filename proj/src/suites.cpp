#include "nearshift/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nearshift/random.hpp"

namespace nearshift {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string tag(const char* name, double alpha) { return std::string(name) + "[alpha=" + fmt(alpha) + "]"; }

Check make_check(std::string name, bool pass, double residual, std::string details = {}) {
  return {std::move(name), pass, residual, std::move(details)};
}

std::vector<double> alphas_or(const SuiteConfig& c, std::vector<double> all) {
  if (c.alpha) return {*c.alpha};
  return all;
}

CVector random_member(SeededRng& rng, const Subspace& M) {
  CVector h = M.frame * rng.complex_vector(M.dim());
  return h / M.ambient.norm_of(h);
}

struct FactorStats {
  double residual = 0.0;
  double min_slack = INFINITY;
  double coeff_excess = -INFINITY;
  double invariance = 0.0;
  int bound_failures = 0;
  int coeff_failures = 0;
};

FactorStats run_trials(const Factorizer& F, const SuiteConfig& c) {
  SeededRng rng(c.seed);
  FactorStats st;
  for (int t = 0; t < c.trials; ++t) {
    const CVector h = random_member(rng, F.subspace());
    const FactorizationResult r = F.factor(h);
    st.residual = std::max(st.residual, r.residual / r.h_norm);
    st.min_slack = std::min(st.min_slack, r.bound_slack);
    st.coeff_excess = std::max(st.coeff_excess, r.coeff_l2 - r.h_norm);
    st.invariance = std::max(st.invariance, F.invariance_check(r).residual);
    st.bound_failures += r.bound_ok ? 0 : 1;
    st.coeff_failures += r.coeff_bound_ok ? 0 : 1;
  }
  return st;
}

Subspace example_type(const SuiteConfig& c) {
  return example_type_subspace(c.B, c.a, 1, c.levels > 0 ? c.levels : 8);
}

}  // namespace

double default_radius(const FiniteBlaschke& B) {
  return B.max_zero_modulus() < 0.75 ? 0.8 : suggest_s(B);
}

std::vector<std::string> suites() {
  return {"wold", "lowerbound", "thm26", "thm35", "thm39", "example"};
}

ScenarioReport run_suite(const std::string& name, const SuiteConfig& config) {
  if (name == "wold") return suite_wold(config);
  if (name == "lowerbound") return suite_lowerbound(config);
  if (name == "thm26") return suite_thm26(config);
  if (name == "thm35") return suite_thm35(config);
  if (name == "thm39") return suite_thm39(config);
  if (name == "example") return suite_example(config);
  throw InvalidInput("unknown suite \"" + name + "\"");
}

ScenarioReport suite_wold(const SuiteConfig& c) {
  const int D = c.degree.value_or(64);
  const int support = std::max(0, 3 * D / 4);
  SeededRng rng(c.seed);
  double recon = 0.0;
  double parseval = 0.0;
  int warnings = 0;
  for (int t = 0; t < c.trials; ++t) {
    const TruncatedSeries f = rng.series(support, D);
    const WoldCoordinates w = wold_decompose(f, c.B, c.levels, c.strict);
    const double fn = norm_h2(f);
    recon = std::max(recon, norm_h2(wold_reconstruct(w, D) - f) / fn);
    parseval = std::max(parseval, std::abs(w.coords.squaredNorm() - fn * fn) / (fn * fn));
    warnings += w.truncation_warning ? 1 : 0;
  }
  ScenarioReport rep;
  rep.parameters = {{"degree", D}, {"trials", c.trials}, {"seed", static_cast<double>(c.seed)}};
  rep.checks.push_back(make_check("reconstruction", recon < 1e-9, recon));
  rep.checks.push_back(make_check("parseval", parseval < 1e-9, parseval));
  rep.checks.push_back(make_check("truncation", warnings == 0, warnings,
                                  std::to_string(warnings) + " decompositions left a remainder"));
  if (c.alpha && *c.alpha >= 0.0 && *c.alpha <= 1.0) {
    // The wold-one norm at alpha = 0 is the H^2 norm; at other alpha it must
    // dominate ||f||_{H^2} because every level weight is at least 1.
    const NormSpec spec = NormSpec::wold_one(*c.alpha, c.B);
    double worst = 0.0;
    SeededRng again(c.seed);
    for (int t = 0; t < c.trials; ++t) {
      const TruncatedSeries f = again.series(support, D);
      const double ratio = space_norm(f, spec) / norm_h2(f);
      worst = std::max(worst, *c.alpha == 0.0 ? std::abs(ratio - 1.0) : std::max(0.0, 1.0 - ratio));
    }
    rep.checks.push_back(make_check(tag("wold_norm", *c.alpha), worst < 1e-9, worst));
  }
  return rep;
}

ScenarioReport suite_lowerbound(const SuiteConfig& c) {
  ScenarioReport rep;
  const int pd = std::min(24, c.degree.value_or(24));
  for (double alpha : alphas_or(c, {0.0, 0.5, 1.0, -1.0, -0.5})) {
    NormSpec spec;
    if (alpha >= 0.0) {
      spec = NormSpec::wold_one(alpha, c.B);
    } else {
      const double s = c.s.value_or(default_radius(c.B));
      spec = NormSpec::wold_two(alpha, select_parameters(c.B, alpha, s).N, c.B);
    }
    const LowerBoundReport lb = verify_lower_bound(c.B, spec, c.trials, c.seed, pd);
    std::string details = "gamma " + fmt(lb.gamma) + ", min ratio " + fmt(lb.min_ratio);
    if (alpha < 0.0) details += ", N " + std::to_string(spec.N) + ", witness ratio " + fmt(lb.witness_ratio);
    for (const auto& v : lb.violations) details += "; " + v;
    rep.checks.push_back(make_check(tag("lower_bound", alpha), lb.pass(),
                                    std::max(0.0, lb.gamma - lb.min_ratio), details));
  }
  rep.parameters = {{"trials", c.trials}, {"poly_degree", pd}};
  return rep;
}

ScenarioReport suite_thm26(const SuiteConfig& c) {
  const int D = c.degree.value_or(64);
  const int dh = 3;
  const Ambient amb = Ambient::taylor(D);
  const int m = c.B.degree();
  const int K0 = unitary_U(c.B, amb, c.levels).levels;
  const CoordinateMap U = unitary_U(c.B, amb, K0 + dh);
  const int K = U.levels;
  const OperatorMatrix T = mult_operator(c.B, amb, 0);

  SeededRng rng(c.seed);
  double fug = 0.0;
  double iso = 0.0;
  for (int t = 0; t < c.trials; ++t) {
    CVector g = amb.coordinates(rng.series(D, D));
    g /= g.norm();
    const TruncatedSeries h = rng.series(dh, dh);
    const CVector Ug = U.forward.apply(g);
    iso = std::max(iso, std::abs(Ug.norm() - 1.0));
    CVector prod = CVector::Zero(m * K);
    for (int i = 0; i < m; ++i) {
      const TruncatedSeries comp(CVector(Ug.segment(i * K, K)));
      prod.segment(i * K, K) = series_mul(comp, h, K - 1).coeffs();
    }
    const CVector lhs = U.backward.apply(prod);
    const CVector rhs = apply_series_of_operator(h, T, g);
    fug = std::max(fug, (lhs - rhs).norm());
  }
  ScenarioReport rep;
  rep.parameters = {{"degree", D}, {"levels", K}, {"trials", c.trials}};
  rep.checks.push_back(make_check("functional_calculus", fug < 1e-9, fug,
                                  "max ||U*[(Ug)h] - h(T_B)g|| over trials"));
  rep.checks.push_back(make_check("isometry", iso < 1e-9, iso, "max | ||Ug|| - ||g|| |"));
  return rep;
}

ScenarioReport suite_thm35(const SuiteConfig& c) {
  const Subspace M = example_type(c);
  ScenarioReport rep;
  rep.parameters = {{"dim", M.dim()}, {"trials", c.trials}};
  for (double alpha : alphas_or(c, {0.0, 0.5, 1.0})) {
    const Factorizer F(M, c.B, alpha);
    const FactorStats st = run_trials(F, c);
    rep.checks.push_back(make_check(tag("reconstruction", alpha), st.residual < 1e-8, st.residual));
    rep.checks.push_back(make_check(tag("norm_bound", alpha), st.bound_failures == 0,
                                    std::max(0.0, -st.min_slack),
                                    "min ||h|| - ||q||: " + fmt(st.min_slack)));
    rep.checks.push_back(make_check(tag("coefficient_bound", alpha), st.coeff_failures == 0,
                                    std::max(0.0, st.coeff_excess)));
    rep.checks.push_back(make_check(tag("invariance", alpha), st.invariance < 1e-8, st.invariance));
  }
  return rep;
}

ScenarioReport suite_thm39(const SuiteConfig& c) {
  const Subspace M = example_type(c);
  const double s = c.s.value_or(default_radius(c.B));
  ScenarioReport rep;
  rep.parameters = {{"dim", M.dim()}, {"trials", c.trials}, {"s", s}};
  for (double alpha : alphas_or(c, {-1.0, -0.5})) {
    const Factorizer F(M, c.B, alpha, s);
    const NormParameters& p = *F.parameters();
    rep.checks.push_back(make_check(tag("contraction", alpha), p.contraction < 1.0, p.contraction,
                                    "N " + std::to_string(p.N) + ", beta " + fmt(p.beta) +
                                        ", gamma2 " + fmt(p.gamma)));
    const FactorStats st = run_trials(F, c);
    rep.checks.push_back(make_check(tag("reconstruction", alpha), st.residual < 1e-8, st.residual));
    rep.checks.push_back(make_check(tag("norm_bound", alpha), st.bound_failures == 0,
                                    std::max(0.0, -st.min_slack), "min slack " + fmt(st.min_slack)));
    rep.checks.push_back(make_check(tag("coefficient_bound", alpha), st.coeff_failures == 0,
                                    std::max(0.0, st.coeff_excess)));
    rep.checks.push_back(make_check(tag("invariance", alpha), st.invariance < 1e-8, st.invariance));
  }
  return rep;
}

ScenarioReport suite_example(const SuiteConfig& c) {
  ScenarioReport rep;
  const int D = c.degree.value_or(32);
  for (int m : {0, 1}) {
    const ScenarioReport sub = example_section2(c.a, m, D);
    for (Check ch : sub.checks) {
      ch.name = "m=" + std::to_string(m) + "/" + ch.name;
      rep.checks.push_back(std::move(ch));
    }
  }
  rep.parameters = {{"degree", D}, {"a_re", c.a.real()}, {"a_im", c.a.imag()}};
  return rep;
}

}  // namespace nearshift
