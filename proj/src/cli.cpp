#include "nearshift/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nearshift/random.hpp"

namespace nearshift {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool is_inline(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && (text[first] == '{' || text[first] == '[');
}

// Inline JSON text, or the path of a file holding it.
Json load_json(const std::string& text) {
  if (is_inline(text)) {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
  }
  std::ifstream in(text);
  if (!in) throw InvalidInput("cannot open input file \"" + text + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("malformed JSON in \"" + text + "\": " + e.what());
  }
}

FiniteBlaschke blaschke_of(const ScenarioConfig& c) {
  return c.blaschke ? blaschke_from_json(*c.blaschke) : FiniteBlaschke::monomial(2);
}

Json checks_json(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const auto& ch : checks) out.push_back(check_to_json(ch));
  return out;
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& ch : checks) {
    if (!ch.pass) return false;
  }
  return true;
}

TruncatedSeries input_series(const ScenarioConfig& c, int default_degree) {
  if (c.series) return series_from_json(*c.series);
  SeededRng rng(c.seed);
  const int D = c.degree.value_or(default_degree);
  return rng.series(std::max(0, 3 * D / 4), D);
}

SuiteConfig suite_config(const ScenarioConfig& c) {
  SuiteConfig s;
  s.B = blaschke_of(c);
  s.alpha = c.alpha;
  s.s = c.s;
  s.degree = c.degree;
  s.levels = c.levels;
  s.seed = c.seed;
  s.trials = c.trials;
  s.strict = c.strict;
  s.a = c.a;
  return s;
}

RunReport run_decompose(const ScenarioConfig& c, Json& result) {
  const FiniteBlaschke B = blaschke_of(c);
  const TruncatedSeries f = input_series(c, 64);
  const WoldCoordinates w = wold_decompose(f, B, c.levels, c.strict);
  const double fn = norm_h2(f);
  const double recon = norm_h2(wold_reconstruct(w, f.degree()) - f);
  const double parseval = std::abs(w.coords.squaredNorm() - fn * fn);
  result = wold_to_json(w);
  result["reconstruction_residual"] = recon;
  result["parseval_error"] = parseval;
  std::vector<Check> checks = {
      {"reconstruction", recon <= 1e-9 * std::max(fn, 1e-300), recon, ""},
      {"truncation", !w.truncation_warning, w.residual_norm, "undecomposed remainder"}};
  return {{{"checks", checks_json(checks)}}, all_pass(checks)};
}

RunReport run_norms(const ScenarioConfig& c, Json& result) {
  const FiniteBlaschke B = blaschke_of(c);
  const TruncatedSeries f = input_series(c, 32);
  const double alpha = c.alpha.value_or(0.0);
  result["h2"] = norm_h2(f);
  result["alpha_standard"] = norm_alpha(f, alpha);
  std::vector<Check> checks;
  if (alpha >= 0.0 && alpha <= 1.0) {
    result["wold_one"] = space_norm(f, NormSpec::wold_one(alpha, B));
    const double w0 = space_norm(f, NormSpec::wold_one(0.0, B));
    const double err = std::abs(w0 - norm_h2(f));
    checks.push_back({"wold_one_at_zero_is_h2", err <= 1e-10 * std::max(1.0, norm_h2(f)), err, ""});
  } else if (alpha >= -1.0 && alpha < 0.0) {
    const double s = c.s.value_or(default_radius(B));
    const NormParameters p = select_parameters(B, alpha, s);
    result["wold_two"] = space_norm(f, NormSpec::wold_two(alpha, p.N, B));
    result["parameters"] = {{"N", p.N}, {"gamma2", p.gamma}, {"s", p.s}, {"beta", p.beta},
                            {"contraction", p.contraction}};
    checks.push_back({"contraction", p.contraction < 1.0, p.contraction, ""});
  } else {
    throw InvalidInput("alpha must lie in [-1, 1]");
  }
  return {{{"checks", checks_json(checks)}}, all_pass(checks)};
}

RunReport run_near_check(const ScenarioConfig& c, Json& result) {
  if (!c.subspace) throw InvalidInput("near-check needs --subspace");
  const FiniteBlaschke B = blaschke_of(c);
  const Subspace M = subspace_from_json(*c.subspace);
  const OperatorMatrix T = mult_operator(B, M.ambient, 0);
  const NearInvarianceReport r = near_invariance_check(M, T, c.guard);
  result = near_invariance_to_json(r);
  result["dim"] = M.dim();
  return {{{"checks", Json::array()}}, true};
}

RunReport run_factorize(const ScenarioConfig& c, Json& result) {
  const FiniteBlaschke B = blaschke_of(c);
  const Subspace M = c.subspace ? subspace_from_json(*c.subspace)
                                : example_type_subspace(B, c.a, c.m, c.levels > 0 ? c.levels : 8);
  const double alpha = c.alpha.value_or(0.0);
  const Factorizer F = alpha >= 0.0 ? Factorizer(M, B, alpha)
                                    : Factorizer(M, B, alpha, c.s.value_or(default_radius(B)));
  const Subspace& Mw = F.subspace();
  CVector h;
  if (c.series) {
    const TruncatedSeries f = series_from_json(*c.series);
    if (Mw.ambient.representation_error(f) > 1e-10 * std::max(1.0, norm_h2(f))) {
      throw PreconditionError("h does not lie in the ambient of M");
    }
    h = Mw.ambient.coordinates(f);
  } else {
    SeededRng rng(c.seed);
    h = Mw.frame * rng.complex_vector(Mw.dim());
    h /= Mw.ambient.norm_of(h);
  }
  const FactorizationResult r = F.factor(h);
  const InvarianceCheck inv = F.invariance_check(r);
  result = factorization_to_json(r);
  result["l"] = F.rq().defect.l;
  result["G0"] = Json::array();
  for (int i = 0; i < F.rq().defect.G0.dim(); ++i) {
    result["G0"].push_back(series_to_json(Mw.ambient.function(F.rq().defect.G0.vector(i))));
  }
  result["invariance_residual"] = inv.residual;
  if (F.parameters()) {
    const NormParameters& p = *F.parameters();
    result["parameters"] = {{"N", p.N}, {"gamma2", p.gamma}, {"s", p.s}, {"beta", p.beta},
                            {"contraction", p.contraction}};
  }
  std::vector<Check> checks = {
      {"reconstruction", r.residual < 1e-8 * std::max(1.0, r.h_norm), r.residual, ""},
      {"norm_bound", r.bound_ok, std::max(0.0, -r.bound_slack), "slack " + std::to_string(r.bound_slack)},
      {"coefficient_bound", r.coeff_bound_ok, std::max(0.0, r.coeff_l2 - r.h_norm), ""},
      {"invariance", inv.pass, inv.residual, ""}};
  return {{{"checks", checks_json(checks)}}, all_pass(checks)};
}

RunReport run_example(const ScenarioConfig& c, Json& result) {
  const ScenarioReport rep = example_section2(c.a, c.m, c.degree.value_or(32), c.literal_naturals);
  const Json j = scenario_to_json(rep);
  result["parameters"] = j["parameters"];
  return {{{"checks", j["checks"]}}, rep.pass()};
}

RunReport run_verify(const ScenarioConfig& c, Json& result, Json& timings) {
  std::vector<std::string> names = c.suite == "all" ? suites() : std::vector<std::string>{c.suite};
  const SuiteConfig sc = suite_config(c);
  Json checks = Json::array();
  bool pass = true;
  result["suites"] = Json::object();
  for (const auto& name : names) {
    const auto t0 = Clock::now();
    const ScenarioReport rep = run_suite(name, sc);
    timings[name + "_seconds"] = seconds_since(t0);
    Json j = scenario_to_json(rep);
    result["suites"][name] = {{"pass", rep.pass()}, {"parameters", j["parameters"]}};
    for (auto ch : j["checks"]) {
      ch["name"] = name + "/" + ch["name"].get<std::string>();
      checks.push_back(ch);
    }
    pass = pass && rep.pass();
  }
  return {{{"checks", checks}}, pass};
}

}  // namespace

Json ScenarioConfig::to_json() const {
  Json j = {{"command", command}, {"levels", levels}, {"seed", seed}, {"trials", trials},
            {"strict", strict}};
  if (blaschke) j["blaschke"] = blaschke_to_json(blaschke_from_json(*blaschke));
  if (alpha) j["alpha"] = *alpha;
  if (s) j["s"] = *s;
  if (degree) j["degree"] = *degree;
  if (command == "verify") j["suite"] = suite;
  if (command == "example-sec2" || command == "factorize" || command == "verify") {
    j["a"] = complex_to_json(a);
  }
  if (command == "example-sec2" || command == "factorize") j["m"] = m;
  if (command == "example-sec2") j["literal_naturals"] = literal_naturals;
  if (command == "near-check") j["guard"] = guard;
  if (!inputs.empty()) j["inputs"] = inputs;
  return j;
}

RunReport run(const ScenarioConfig& config) {
  const auto t0 = Clock::now();
  Json result = Json::object();
  Json timings = Json::object();
  RunReport body;
  const std::string& cmd = config.command;
  if (cmd == "decompose") {
    body = run_decompose(config, result);
  } else if (cmd == "norms") {
    body = run_norms(config, result);
  } else if (cmd == "near-check") {
    body = run_near_check(config, result);
  } else if (cmd == "factorize") {
    body = run_factorize(config, result);
  } else if (cmd == "example-sec2") {
    body = run_example(config, result);
  } else if (cmd == "verify") {
    body = run_verify(config, result, timings);
  } else if (cmd == "suites") {
    result["suites"] = suites();
    body = {{{"checks", Json::array()}}, true};
  } else {
    throw InvalidInput("unknown command \"" + cmd + "\"");
  }
  timings["total_seconds"] = seconds_since(t0);
  Json report = {{"schema_version", kSchemaVersion},
                 {"config", config.to_json()},
                 {"checks", body.report["checks"]},
                 {"result", result},
                 {"pass", body.pass},
                 {"timings", timings}};
  return {std::move(report), body.pass};
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Near-invariant subspaces of finite Blaschke shifts"};
  app.require_subcommand(1);
  ScenarioConfig cfg;
  std::string blaschke, series, subspace, out_path;
  double a_re = 0.5, a_im = 0.0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--blaschke", blaschke, "Blaschke product as JSON text or a JSON file");
    sub->add_option("--alpha", cfg.alpha, "Dirichlet exponent in [-1, 1]");
    sub->add_option("--s", cfg.s, "radius of the disc s D for negative alpha");
    sub->add_option("--degree", cfg.degree, "Taylor degree");
    sub->add_option("--levels", cfg.levels, "Wold levels (0 picks a default)");
    sub->add_option("--seed", cfg.seed, "seed of the random generator");
    sub->add_option("--trials", cfg.trials, "number of seeded trials");
    sub->add_flag("--strict", cfg.strict, "turn truncation warnings into errors");
    sub->add_option("--out", out_path, "write the report here instead of stdout");
  };
  auto sub_decompose = app.add_subcommand("decompose", "Wold coordinates of a series");
  auto sub_norms = app.add_subcommand("norms", "norms of a series");
  auto sub_near = app.add_subcommand("near-check", "near invariance of a subspace");
  auto sub_factor = app.add_subcommand("factorize", "factor h in a nearly invariant subspace");
  auto sub_example = app.add_subcommand("example-sec2", "the z^2 example scenario");
  auto sub_verify = app.add_subcommand("verify", "run verification suites");
  app.add_subcommand("suites", "list verification suites");
  for (auto* sub : {sub_decompose, sub_norms, sub_near, sub_factor, sub_example, sub_verify}) {
    common(sub);
  }
  for (auto* sub : {sub_decompose, sub_norms, sub_factor}) {
    sub->add_option("--series", series, "series as a JSON coefficient list or a JSON file");
  }
  for (auto* sub : {sub_near, sub_factor}) {
    sub->add_option("--subspace", subspace, "subspace as JSON text or a JSON file");
  }
  sub_near->add_option("--guard", cfg.guard, "guard band in units of deg B");
  for (auto* sub : {sub_factor, sub_example, sub_verify}) {
    sub->add_option("--a", a_re, "real part of the automorphism zero");
    sub->add_option("--a-im", a_im, "imaginary part of the automorphism zero");
  }
  for (auto* sub : {sub_factor, sub_example}) sub->add_option("--m", cfg.m, "index cutoff m");
  sub_example->add_flag("--literal-naturals", cfg.literal_naturals,
                        "start the even powers at k = 1");
  sub_verify->add_option("--suite", cfg.suite, "suite name or \"all\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (const char* env = std::getenv("NEARSHIFT_STRICT"); env && std::string(env) == "1") {
      cfg.strict = true;
    }
    cfg.a = {a_re, a_im};
    if (!blaschke.empty()) {
      cfg.blaschke = load_json(blaschke);
      if (!is_inline(blaschke)) cfg.inputs.push_back(blaschke);
    }
    if (!series.empty()) {
      cfg.series = load_json(series);
      if (!is_inline(series)) cfg.inputs.push_back(series);
    }
    if (!subspace.empty()) {
      cfg.subspace = load_json(subspace);
      if (!is_inline(subspace)) cfg.inputs.push_back(subspace);
    }
    if (cfg.trials < 1) throw InvalidInput("--trials must be positive");
    if (cfg.levels < 0) throw InvalidInput("--levels must be nonnegative");
    if (cfg.degree && *cfg.degree < blaschke_of(cfg).degree()) {
      throw InvalidInput("--degree must be at least the degree of B");
    }
    const RunReport rep = run(cfg);
    const std::string text = rep.report.dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path);
      if (!f) throw InvalidInput("cannot write \"" + out_path + "\"");
      f << text;
    }
    return rep.pass ? 0 : 1;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const TruncationInsufficient& e) {
    err << "truncation insufficient: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace nearshift
