#pragma once

#include "vfactor/analysis.hpp"
#include "vfactor/builder.hpp"
#include "vfactor/factor.hpp"
#include "vfactor/models.hpp"

#include <json.hpp>

namespace vf {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json to_json(const Poly& p);
Poly poly_from_json(const Json& j);

Json to_json(const TriangularMap& m);
TriangularMap map_from_json(const Json& j);

Json to_json(const PointSet& p);
PointSet points_from_json(const Json& j);

Json to_json(const QuadraticModel& m);
QuadraticModel quadratic_model_from_json(const Json& j);

Json to_json(const BuildResult& b);

Json to_json(const ModelSpec& s);
ModelSpec model_spec_from_json(const Json& j);

// {family, n, A, Abar, params, seed}
struct BuildParams {
    std::string family;
    std::size_t n = 0;
    FamilyOptions options;
};
BuildParams build_params_from_json(const Json& j);

Json to_json(const TrialRecord& r);
// Without the per-trial log, which goes to the trace stream.
Json to_json(const FactorReport& r);
Json to_json(const CountReport& r);

} // namespace vf
