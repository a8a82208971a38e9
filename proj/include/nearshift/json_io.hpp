#pragma once

#include <json.hpp>

#include "nearshift/neardecomp.hpp"

namespace nearshift {

using Json = nlohmann::json;

// Complex numbers are written as [re, im]; a bare number is read as real.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json series_to_json(const TruncatedSeries& f);
TruncatedSeries series_from_json(const Json& j);
Json vector_series_to_json(const VectorSeries& f);

/// {"origin_multiplicity": m0, "zeros": [...], "normalized": bool, "phase": z}
Json blaschke_to_json(const FiniteBlaschke& B);
FiniteBlaschke blaschke_from_json(const Json& j);

Json norm_to_json(const NormSpec& spec);
NormSpec norm_from_json(const Json& j);

Json ambient_to_json(const Ambient& a);
/// {"kind": "taylor", "degree": D} or {"kind": "model", "theta": {...}}, plus
/// optional "norm" and "components".
Ambient ambient_from_json(const Json& j);

/// Frame written as Taylor coefficient lists, one per basis vector.
Json subspace_to_json(const Subspace& M);
/// {"ambient": {...}, "vectors": [series, ...]}; vectors are orthonormalized.
Subspace subspace_from_json(const Json& j);

Json wold_to_json(const WoldCoordinates& w);
Json near_invariance_to_json(const NearInvarianceReport& r);
Json factorization_to_json(const FactorizationResult& r);
Json check_to_json(const Check& c);
Json scenario_to_json(const ScenarioReport& r);

}  // namespace nearshift
