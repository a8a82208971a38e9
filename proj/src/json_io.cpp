#include "nearshift/json_io.hpp"

#include <cmath>

namespace nearshift {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double finite_number(const Json& j) {
  if (!j.is_number()) throw InvalidInput("expected a number, got " + j.dump());
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw InvalidInput("non-finite number in input");
  return x;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return finite_number(j);
  if (j.is_array() && j.size() == 2) return {finite_number(j[0]), finite_number(j[1])};
  throw InvalidInput("expected a complex number as x or [re, im], got " + j.dump());
}

Json series_to_json(const TruncatedSeries& f) {
  Json out = Json::array();
  for (int k = 0; k <= f.degree(); ++k) out.push_back(complex_to_json(f[k]));
  return out;
}

TruncatedSeries series_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("a series is a non-empty coefficient list");
  CVector c(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) c[static_cast<Eigen::Index>(k)] = complex_from_json(j[k]);
  return TruncatedSeries(std::move(c));
}

Json vector_series_to_json(const VectorSeries& f) {
  Json out = Json::array();
  for (const auto& c : f.components()) out.push_back(series_to_json(c));
  return out;
}

Json blaschke_to_json(const FiniteBlaschke& B) {
  Json zeros = Json::array();
  for (const Complex& a : B.zeros()) zeros.push_back(complex_to_json(a));
  return {{"origin_multiplicity", B.origin_multiplicity()},
          {"zeros", zeros},
          {"normalized", B.normalized()},
          {"phase", complex_to_json(B.phase())}};
}

FiniteBlaschke blaschke_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("a Blaschke product is a JSON object");
  const int m0 = j.value("origin_multiplicity", 0);
  std::vector<Complex> zeros;
  if (j.contains("zeros")) {
    if (!j["zeros"].is_array()) throw InvalidInput("\"zeros\" must be a list");
    for (const auto& z : j["zeros"]) zeros.push_back(complex_from_json(z));
  }
  const bool normalized = j.value("normalized", true);
  const Complex phase = j.contains("phase") ? complex_from_json(j["phase"]) : Complex{1.0};
  return FiniteBlaschke(m0, std::move(zeros), normalized, phase);
}

Json norm_to_json(const NormSpec& spec) {
  Json out = {{"variant", to_string(spec.variant)}, {"alpha", spec.alpha}};
  if (spec.variant == NormVariant::WoldTwo) out["N"] = spec.N;
  if (spec.B) out["blaschke"] = blaschke_to_json(*spec.B);
  return out;
}

NormSpec norm_from_json(const Json& j) {
  const NormVariant v = parse_norm_variant(j.value("variant", std::string("alpha-standard")));
  const double alpha = j.contains("alpha") ? finite_number(j["alpha"]) : 0.0;
  switch (v) {
    case NormVariant::AlphaStandard:
      return NormSpec::alpha_standard(alpha);
    case NormVariant::WoldOne:
      return NormSpec::wold_one(alpha, blaschke_from_json(field(j, "blaschke")));
    case NormVariant::WoldTwo:
      return NormSpec::wold_two(alpha, field(j, "N").get<int>(),
                                blaschke_from_json(field(j, "blaschke")));
  }
  throw InvalidInput("unknown norm variant");
}

Json ambient_to_json(const Ambient& a) {
  Json out = {{"components", a.components()}, {"norm", norm_to_json(a.norm())}};
  if (a.kind() == Ambient::Kind::Taylor) {
    out["kind"] = "taylor";
    out["degree"] = a.taylor_degree();
  } else {
    out["kind"] = "model";
    out["theta"] = blaschke_to_json(a.theta());
    out["taylor_degree"] = a.taylor_degree();
  }
  return out;
}

Ambient ambient_from_json(const Json& j) {
  const std::string kind = j.value("kind", std::string("taylor"));
  const NormSpec norm = j.contains("norm") ? norm_from_json(j["norm"]) : NormSpec::h2();
  const int comps = j.value("components", 1);
  if (kind == "taylor") return Ambient::taylor(field(j, "degree").get<int>(), norm, comps);
  if (kind == "model") {
    return Ambient::model(blaschke_from_json(field(j, "theta")), norm, comps,
                          j.value("taylor_degree", 0));
  }
  throw InvalidInput("unknown ambient kind \"" + kind + "\"");
}

Json subspace_to_json(const Subspace& M) {
  Json vectors = Json::array();
  for (int i = 0; i < M.dim(); ++i) {
    if (M.ambient.components() == 1) {
      vectors.push_back(series_to_json(M.ambient.function(M.vector(i))));
    } else {
      vectors.push_back(vector_series_to_json(M.ambient.vector_function(M.vector(i))));
    }
  }
  return {{"ambient", ambient_to_json(M.ambient)}, {"dim", M.dim()}, {"vectors", vectors}};
}

Subspace subspace_from_json(const Json& j) {
  const Ambient amb = ambient_from_json(field(j, "ambient"));
  if (amb.components() != 1) throw InvalidInput("subspace input supports scalar ambients only");
  std::vector<CVector> cols;
  for (const auto& v : field(j, "vectors")) {
    const TruncatedSeries f = series_from_json(v);
    const double err = amb.representation_error(f);
    if (err > 1e-10 * std::max(1.0, norm_h2(f))) {
      throw InvalidInput("a subspace vector does not lie in the ambient (error " +
                         std::to_string(err) + ")");
    }
    cols.push_back(amb.coordinates(f));
  }
  return orthonormalize(amb, cols);
}

Json wold_to_json(const WoldCoordinates& w) {
  Json levels = Json::array();
  for (int k = 0; k < w.levels(); ++k) {
    Json row = Json::array();
    for (Eigen::Index i = 0; i < w.coords.cols(); ++i) row.push_back(complex_to_json(w.coords(k, i)));
    levels.push_back(row);
  }
  return {{"blaschke", blaschke_to_json(w.source)},
          {"degree", w.degree},
          {"levels", levels},
          {"residual_norm", w.residual_norm},
          {"truncation_warning", w.truncation_warning}};
}

Json near_invariance_to_json(const NearInvarianceReport& r) {
  Json out = {{"is_nearly_invariant", r.is_nearly_invariant},
              {"max_residual", r.max_residual},
              {"preimage_dim", r.preimage_dim},
              {"guard", r.guard},
              {"degree", r.degree},
              {"tolerance", r.tolerance}};
  if (r.witness && r.preimage) {
    out["witness"] = series_to_json(r.preimage->ambient.function(*r.witness));
  }
  return out;
}

Json factorization_to_json(const FactorizationResult& r) {
  Json table = Json::array();
  for (Eigen::Index k = 0; k < r.coeff_table.rows(); ++k) {
    Json row = Json::array();
    for (Eigen::Index i = 0; i < r.coeff_table.cols(); ++i) {
      row.push_back(complex_to_json(r.coeff_table(k, i)));
    }
    table.push_back(row);
  }
  return {{"q", vector_series_to_json(r.q)},
          {"coeff_table", table},
          {"residual", r.residual},
          {"coeff_l2", r.coeff_l2},
          {"q_norm", r.q_norm},
          {"h_norm", r.h_norm},
          {"bound_rhs", r.bound_rhs},
          {"bound_ok", r.bound_ok},
          {"bound_slack", r.bound_slack},
          {"coeff_bound_ok", r.coeff_bound_ok},
          {"levels", r.levels}};
}

Json check_to_json(const Check& c) {
  return {{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}, {"details", c.details}};
}

Json scenario_to_json(const ScenarioReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(check_to_json(c));
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  return {{"checks", checks}, {"parameters", params}, {"pass", r.pass()}};
}

}  // namespace nearshift
