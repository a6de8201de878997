#include "vfactor/json_io.hpp"

namespace vf {

namespace {

template <class F>
auto guarded(const char* what, F f)
{
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

Json matrix_json(const Matrix& m)
{
    Json a = Json::array();
    for (const auto& r : m) a.push_back(to_json(r));
    return a;
}

Matrix matrix_from_json(const Json& j)
{
    Matrix m;
    for (const auto& r : j) m.push_back(vector_from_json(r));
    return m;
}

} // namespace

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    if (!j.is_string()) throw ParseError("rational must be a string \"num/den\"");
    return parse_rational(j.get<std::string>());
}

Json to_json(const Vector& v)
{
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Vector vector_from_json(const Json& j)
{
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    Vector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

Json to_json(const Poly& p)
{
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coef", to_string(c)}});
    return {{"nvars", p.nvars()}, {"terms", terms}};
}

Poly poly_from_json(const Json& j)
{
    return guarded("polynomial", [&] {
        Poly p(j.at("nvars").get<std::size_t>());
        for (const auto& t : j.at("terms")) p.add_term(t.at("exp").get<Exponent>(), rational_from_json(t.at("coef")));
        return p;
    });
}

Json to_json(const TriangularMap& m)
{
    Json stages = Json::array();
    for (const auto& s : m.stages) stages.push_back({{"N", to_json(s.N)}, {"D", to_json(s.D)}});
    return {{"n", m.n}, {"M", m.M}, {"order", m.order}, {"stages", stages}, {"P0", to_json(m.P0)}};
}

TriangularMap map_from_json(const Json& j)
{
    return guarded("triangular map", [&] {
        TriangularMap m;
        m.n = j.at("n").get<std::size_t>();
        m.M = j.at("M").get<std::size_t>();
        m.order = j.at("order").get<std::vector<std::size_t>>();
        for (const auto& s : j.at("stages")) m.stages.push_back({poly_from_json(s.at("N")), poly_from_json(s.at("D"))});
        m.P0 = poly_from_json(j.at("P0"));
        m.validate();
        return m;
    });
}

Json to_json(const PointSet& p) { return matrix_json(p.points); }

PointSet points_from_json(const Json& j)
{
    if (!j.is_array()) throw ParseError("point set must be an array");
    PointSet p;
    p.points = matrix_from_json(j);
    return p;
}

Json to_json(const QuadraticModel& m)
{
    return {{"n", m.n}, {"a", matrix_json(m.aForms)}, {"b", matrix_json(m.bForms)}, {"coef", matrix_json(m.coefMatrix)}};
}

QuadraticModel quadratic_model_from_json(const Json& j)
{
    return guarded("quadratic model", [&] {
        QuadraticModel m;
        m.n = j.at("n").get<std::size_t>();
        m.aForms = matrix_from_json(j.at("a"));
        m.bForms = matrix_from_json(j.at("b"));
        m.coefMatrix = matrix_from_json(j.at("coef"));
        return m;
    });
}

Json to_json(const BuildResult& b)
{
    return {{"family", b.family},      {"seed", b.seed},          {"attempts", b.attempts},
            {"stageRows", b.stageRows}, {"model", to_json(b.model)}, {"map", to_json(b.map)}};
}

Json to_json(const ModelSpec& s)
{
    Json c2 = Json::array(), c3 = Json::array();
    for (const auto& c : s.clauses2) c2.push_back(c);
    for (const auto& c : s.clauses3) c3.push_back(c);
    return {{"nbar", s.nbar}, {"forms", matrix_json(s.forms)}, {"clauses2", c2}, {"clauses3", c3}, {"blocks", s.blocks}};
}

ModelSpec model_spec_from_json(const Json& j)
{
    return guarded("model spec", [&] {
        ModelSpec s;
        s.nbar = j.at("nbar").get<std::size_t>();
        s.forms = matrix_from_json(j.at("forms"));
        for (const auto& c : j.value("clauses2", Json::array())) s.clauses2.insert(c.get<std::array<std::size_t, 2>>());
        for (const auto& c : j.value("clauses3", Json::array())) s.clauses3.insert(c.get<std::array<std::size_t, 3>>());
        s.blocks = j.value("blocks", Json::array()).get<std::vector<std::vector<std::size_t>>>();
        s.validate();
        return s;
    });
}

BuildParams build_params_from_json(const Json& j)
{
    return guarded("build parameters", [&] {
        BuildParams b;
        b.family = j.at("family").get<std::string>();
        b.n = j.at("n").get<std::size_t>();
        b.options.seed = j.value("seed", std::uint64_t(0));
        if (b.family == "third") {
            if (j.contains("A")) b.options.A = vector_from_json(j["A"]);
            if (j.contains("Abar")) b.options.Abar = vector_from_json(j["Abar"]);
        } else if (b.family == "half") {
            if (j.contains("A")) b.options.Aprime = vector_from_json(j["A"]);
            if (j.contains("Abar")) b.options.Adbl = vector_from_json(j["Abar"]);
        } else if (b.family != "n4") {
            throw ParseError("unknown family '" + b.family + "'");
        }
        if (j.contains("params")) {
            const Json& p = j["params"];
            StructureParams& sp = b.options.params;
            if (p.contains("k0")) sp.k0 = rational_from_json(p["k0"]);
            if (p.contains("k1")) sp.k1 = rational_from_json(p["k1"]);
            if (p.contains("r0")) sp.r0 = rational_from_json(p["r0"]);
            if (p.contains("r1")) sp.r1 = rational_from_json(p["r1"]);
            if (p.contains("s0")) sp.s0 = rational_from_json(p["s0"]);
        }
        return b;
    });
}

Json to_json(const TrialRecord& r)
{
    Json tau = Json::array();
    for (const auto& t : r.tau) tau.push_back(t.get_str());
    Json j = {{"trial", r.index}, {"tau", tau}, {"class", to_string(r.cls)}, {"m", r.m.get_str()}, {"witness", r.witness}};
    if (r.witness) {
        j["context"] = to_string(r.context);
        j["stage"] = r.stage;
    }
    if (r.cls == ClassKind::Factor) j["factor"] = r.factor.get_str();
    return j;
}

Json to_json(const FactorReport& r)
{
    Json j = {{"method", r.method}, {"outcome", to_string(r.outcome)}};
    j["factor"] = r.outcome == FactorOutcome::Factor ? Json(r.factor.get_str()) : Json(nullptr);
    j["trials"] = r.trials;
    j["witnessTrials"] = r.witnessTrials;
    j["zeroTrials"] = r.zeroTrials;
    j["factorTrials"] = r.factorTrials;
    j["trivialTrials"] = r.trivialTrials;
    j["seed"] = r.seed;
    return j;
}

Json to_json(const CountReport& r)
{
    return {{"q", r.q.get_str()},
            {"curvePoints", r.curvePoints},
            {"numeratorZeros", r.numeratorZeros},
            {"witnessCount", r.witnessCount},
            {"total", r.total}};
}

} // namespace vf
