#include "fixtures.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace vf;
using namespace vf::cli;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Global {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string trace, out;

    unsigned workers() const
    {
        if (threads) return threads;
        if (const char* v = std::getenv("VFACTOR_THREADS")) {
            try {
                unsigned t = unsigned(std::stoul(v));
                if (t) return t;
            } catch (const std::exception&) {
            }
            throw UsageError("VFACTOR_THREADS must be a positive integer");
        }
        return 1;
    }
};

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw vf::ParseError(path + ": " + e.what());
    }
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

void emit(const Json& j, const Global& g)
{
    std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!g.out.empty()) write_text(g.out, text);
}

BigInt parse_bigint(const std::string& s, const char* what)
{
    BigInt z;
    if (s.empty() || z.set_str(s, 10) != 0) throw UsageError(std::string(what) + " must be a decimal integer");
    return z;
}

std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

struct Trace {
    std::ofstream out;
    explicit Trace(const std::string& path)
    {
        if (path.empty()) return;
        out.open(path);
        if (!out) throw UsageError("cannot write " + path);
    }
    bool on() const { return out.is_open(); }
    void write(const FactorReport& r, int rung = -1)
    {
        if (!on()) return;
        for (const auto& t : r.log) {
            Json j = to_json(t);
            if (rung >= 0) j["rung"] = rung;
            out << j.dump() << "\n";
        }
    }
};

// A fixture name or a map JSON file.
struct MapSource {
    std::string fixture, mapFile;
    std::optional<Fixture> fx;
    TriangularMap map;

    void load(std::uint64_t seed)
    {
        if (!mapFile.empty()) {
            map = map_from_json(read_json(mapFile));
            return;
        }
        fx = load_fixture(fixture.empty() ? "n4" : fixture, seed);
        map = fx->build.map;
    }
    std::string label() const { return mapFile.empty() ? (fixture.empty() ? "n4" : fixture) : mapFile; }
};

void add_source(CLI::App* sc, MapSource& src)
{
    auto* f = sc->add_option("--fixture,--family", src.fixture, "embedded fixture")
                  ->check(CLI::IsMember(fixture_names()));
    sc->add_option("--map", src.mapFile, "triangular map JSON file")->excludes(f);
}

// ---------------------------------------------------------------- build

int run_build(const Global& g, const std::string& family, std::size_t n, const std::string& params,
              const std::string& fixture)
{
    BuildResult b;
    if (!fixture.empty()) {
        b = load_fixture(fixture, g.seed).build;
    } else {
        BuildParams p;
        if (!params.empty()) {
            p = build_params_from_json(read_json(params));
        } else {
            if (family.empty()) throw UsageError("build needs --family, --params or --fixture");
            p.family = family;
            p.n = n;
            p.options.seed = g.seed;
        }
        if (p.family == "n4")
            b = build_example_n4().build;
        else if (p.family == "third")
            b = build_third_family(p.n, p.options);
        else
            b = build_half_family(p.n, p.options);
    }
    PointSet pts = enumerate_quadratic_zeros(b.model);
    Json j = to_json(b);
    j["points"] = to_json(pts);
    emit(j, g);
    std::cerr << "built " << b.family << " n=" << b.map.n << " M=" << b.map.M << " with " << pts.points.size()
              << " points (seed " << b.seed << ")\n";
    return 0;
}

// ---------------------------------------------------------------- verify

int run_verify(const Global& g, MapSource& src, const std::string& pointsFile)
{
    src.load(g.seed);
    Json checks = Json::object();
    PointSet pts;
    if (src.fx) {
        const Fixture& f = *src.fx;
        pts = f.points;
        std::set<Vector> distinct(pts.points.begin(), pts.points.end());
        checks["points_distinct"] = distinct.size() == pts.points.size();
        checks["stages_match_model"] = stages_match_model(f.build);
        checks["gaussian_form"] = verify_gaussian_form(stage_polynomials(f.build)).ok;
        if (f.n4) {
            const ClosedForm& cf = f.n4->closed;
            std::optional<Rational> K;
            bool closed = true;
            for (std::uint64_t i = 0; i < 50; ++i) {
                Rational tau = random_rational(g.seed, i);
                EvalOutcome o = eval_triangular(src.map, Vector{tau});
                Rational rhs = closed_form_value(cf, tau);
                if (o.kind != OutcomeKind::RationalValue || is_zero(rhs)) {
                    closed = false;
                    break;
                }
                if (!K) K = o.rational / rhs;
                closed = closed && o.rational == *K * rhs;
            }
            checks["closed_form"] = closed;
            bool roots = true;
            for (const auto& t : cf.taus) {
                EvalOutcome o = eval_triangular(src.map, Vector{t});
                roots = roots && o.kind == OutcomeKind::RationalValue && is_zero(o.rational);
            }
            checks["roots_vanish"] = roots;
            checks["point_count"] = pts.points.size() == 16;
        }
    } else {
        if (pointsFile.empty()) throw UsageError("verify --map needs --points");
        pts = points_from_json(read_json(pointsFile));
    }
    MembershipReport m = verify_membership(src.map, pts);
    checks["membership"] = m.allPass;
    bool ok = true;
    for (const auto& [k, v] : checks.items()) ok = ok && v.get<bool>();
    Json j = {{"seed", g.seed}, {"source", src.label()}, {"points", pts.points.size()}, {"checks", checks}, {"ok", ok}};
    if (!m.allPass)
        for (std::size_t i = 0; i < m.points.size(); ++i)
            if (!m.points[i].ok) {
                j["firstFailure"] = {{"point", i}, {"stage", m.points[i].stage}, {"reason", m.points[i].failure}};
                break;
            }
    emit(j, g);
    std::cerr << "verify " << src.label() << ": " << (ok ? "ok" : "FAILED") << "\n";
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- factor

int run_factor(const Global& g, MapSource& src, const std::string& cText, std::uint64_t maxTrials,
               const std::string& field, bool all)
{
    BigInt c = parse_bigint(cText, "--c");
    src.load(g.seed);
    FactorConfig cfg;
    cfg.maxTrials = maxTrials;
    cfg.seed = g.seed;
    cfg.threads = g.workers();
    cfg.stopOnFactor = !all;
    Trace trace(g.trace);
    cfg.keepLog = trace.on();
    FactorReport r;
    if (field.empty()) {
        r = factor_semiprime(c, src.map, cfg);
    } else {
        IntPoly pi;
        for (const auto& s : split(field)) pi.push_back(parse_bigint(s, "--number-field coefficient"));
        r = factor_number_field(c, lift_to_number_field(src.map, pi), cfg);
    }
    trace.write(r);
    Json j = {{"c", c.get_str()}, {"source", src.label()}};
    j.update(to_json(r));
    emit(j, g);
    std::cerr << r.method << " on " << c << ": " << to_string(r.outcome);
    if (r.outcome == FactorOutcome::Factor) std::cerr << " " << r.factor;
    std::cerr << " after " << r.trials << " trials (seed " << g.seed << ")\n";
    return r.outcome == FactorOutcome::Factor ? 0 : 1;
}

// ---------------------------------------------------------------- search

int run_search(const Global& g, const std::string& cText, const std::string& members, unsigned maxRungs,
               std::uint64_t cap)
{
    BigInt c = parse_bigint(cText, "--c");
    std::vector<Fixture> fx;
    for (const auto& name : split(members)) {
        if (std::find(fixture_names().begin(), fixture_names().end(), name) == fixture_names().end())
            throw UsageError("unknown family member '" + name + "'");
        fx.push_back(load_fixture(name, g.seed));
    }
    std::vector<FamilyMember> family;
    for (const auto& f : fx) family.push_back({f.name, BigInt(static_cast<unsigned long>(f.points.points.size())), &f.build.map});
    SearchConfig cfg;
    cfg.base.seed = g.seed;
    cfg.base.threads = g.workers();
    cfg.maxRungs = maxRungs;
    cfg.budgetCap = cap;
    Trace trace(g.trace);
    cfg.base.keepLog = trace.on();
    SearchReport rep = search_np(c, family, cfg);
    Json rungs = Json::array();
    for (const auto& r : rep.rungs) {
        trace.write(r.report, int(r.index));
        rungs.push_back({{"rung", r.index},
                         {"ad", r.ad.get_str()},
                         {"au", r.au.get_str()},
                         {"target", to_string(r.target, 12)},
                         {"member", family[r.member].label},
                         {"NP", family[r.member].NP.get_str()},
                         {"budget", r.budget},
                         {"prHat", to_string(r.prHat, 12)},
                         {"outcome", to_string(r.report.outcome)},
                         {"trials", r.report.trials}});
    }
    Json j = {{"c", c.get_str()}, {"seed", g.seed}, {"rungs", rungs}, {"result", to_json(rep.result)}};
    emit(j, g);
    std::cerr << "search on " << c << ": " << to_string(rep.result.outcome);
    if (rep.result.outcome == FactorOutcome::Factor) std::cerr << " " << rep.result.factor;
    std::cerr << " in " << rep.rungs.size() << " rungs\n";
    return rep.result.outcome == FactorOutcome::Factor ? 0 : 1;
}

// ---------------------------------------------------------------- count

int run_count(const Global& g, MapSource& src, const std::string& qText)
{
    BigInt q = parse_bigint(qText, "--q");
    src.load(g.seed);
    CountReport r = count_points_bruteforce(src.map, q, g.workers());
    Json j = {{"seed", g.seed}, {"source", src.label()}};
    j.update(to_json(r));
    emit(j, g);
    std::cerr << "count over Z/" << q << ": " << r.numeratorZeros << " zeros of P0, " << r.witnessCount
              << " witnesses, " << r.curvePoints << " completed of " << r.total << "\n";
    return 0;
}

// ---------------------------------------------------------------- analyze

int run_analyze(const Global& g, const std::string& pText, unsigned k0, unsigned M, const std::string& npText)
{
    Real p;
    try {
        p = Real(pText);
    } catch (const std::exception&) {
        throw UsageError("--p must be a number");
    }
    if (p < 2) throw UsageError("--p must be at least 2");
    if (k0 < 1 || M < 1) throw UsageError("--k0 and --M must be positive");
    XiResult xi = optimal_log_np(p, k0, M);
    ComplexityInputs in{p, k0, M, npText.empty() ? Real(exp(xi.xi0)) : Real(npText)};
    Json inputs = {{"p", pText}, {"k0", k0}, {"M", M}, {"NP", to_string(in.NP, 20)}};
    Json xiJ = {{"value", to_string(xi.xi0, 20)},
                {"expansion", to_string(xi0_expansion(p, k0, M), 20)},
                {"status", to_string(xi.status)},
                {"residual", to_string(xi.residual, 6)},
                {"iterations", xi.iterations}};
    Json bounds = Json::object();
    DegreeBound db = bound_degree(2, M);
    bounds["degreeExponent"] = to_string(db.exponent);
    BigInt q;
    bool integral = q.set_str(pText, 10) == 0;
    if (!integral && p == floor(p) && p < Real(1e18)) {
        q = std::to_string(static_cast<long long>(p));
        integral = true;
    }
    if (integral) {
        Surd h = bound_hypersurface(q, 2, M);
        bounds["hypersurface"] = to_string(h);
        bounds["hypersurfaceValue"] = to_string(Real(h.value()), 12);
        Real cap = np_upper_bound(p, M, Real(h.value()));
        bounds["npUpperBound"] = isinf(cap) ? Json("inf") : Json(to_string(cap, 12));
    }
    Json j = {{"seed", g.seed},
              {"inputs", inputs},
              {"pr_succ", to_string(success_probability(in), 20)},
              {"xi0", xiJ},
              {"n_trials", to_string(trials_estimate(in), 12)},
              {"bounds", bounds}};
    emit(j, g);
    std::cerr << "xi0 = " << to_string(xi.xi0, 12) << " (" << to_string(xi.status) << ")\n";
    return 0;
}

// ---------------------------------------------------------------- models

struct ModelsArgs {
    std::size_t diagonal = 0;
    std::string spec, dimacsOut;
    std::vector<std::string> gamma;
    bool reduce = false, correspondence = false;
};

int run_models(const Global& g, const ModelsArgs& a)
{
    ModelSpec s;
    if (!a.spec.empty()) {
        s = model_spec_from_json(read_json(a.spec));
    } else if (a.diagonal) {
        s = random_diagonal_model(a.diagonal, g.seed);
    } else {
        throw UsageError("models needs --diagonal N or --spec FILE");
    }
    if (!a.gamma.empty()) {
        if (s.nbar != 2 * s.n()) throw UsageError("--gamma needs a paired spec");
        std::vector<Vector> a0, a1;
        for (std::size_t i = 1; i <= s.n(); ++i) {
            a0.push_back(s.forms[form_index(i, 0) - 1]);
            a1.push_back(s.forms[form_index(i, 1) - 1]);
        }
        std::vector<std::array<std::size_t, 2>> gm;
        for (const auto& p : a.gamma) {
            auto v = split(p);
            if (v.size() != 2) throw UsageError("--gamma takes i,j");
            gm.push_back({std::stoul(v[0]), std::stoul(v[1])});
        }
        ModelSpec t = make_model_a(a0, a1, gm);
        for (const auto& c : s.clauses2) t.clauses2.insert(c);
        t.clauses3 = s.clauses3;
        s = t;
    }
    bool ok = true;
    Json j = {{"seed", g.seed}, {"n", s.n()}, {"nbar", s.nbar}, {"clauses", s.clauses2.size() + s.clauses3.size()}};
    if (s.nbar == 2 * s.n()) {
        IndependenceReport ir = verify_independence_property(s);
        j["independence"] = {{"ok", ir.ok}, {"checked", ir.checked}, {"firstViolation", ir.firstViolation}};
    }
    IsolatedPointSet pts = enumerate_isolated_points(s);
    BoundFlags bf = check_point_bounds(s, pts.points.size());
    ok = bf.withinThreePowN && bf.withinTwoPowN;
    j["points"] = pts.points.size();
    j["nonIsolatedCandidates"] = pts.nonIsolatedCandidates;
    j["blockPath"] = pts.blockPath;
    j["bounds"] = {{"withinThreePowN", bf.withinThreePowN}, {"withinTwoPowN", bf.withinTwoPowN}};
    if (a.reduce) {
        ReducedModel r = reduce_model(s, pts);
        IsolatedPointSet rp = enumerate_isolated_points(r.diagonal);
        bool embeds = rp.points.size() == (std::size_t(1) << r.m);
        for (const auto& p : rp.points) embeds = embeds && satisfies(s, r.embed(p.point));
        ok = ok && embeds;
        j["reduction"] = {{"m", r.m}, {"kept", r.kept}, {"zeroed", r.zeroed}, {"points", rp.points.size()}, {"reembeds", embeds}};
    }
    if (a.correspondence) {
        try {
            CorrespondenceReport c = sat_correspondence(s);
            j["correspondence"] = {{"solutions", c.solutions}, {"points", c.points}, {"bijective", c.bijective}};
        } catch (const CorrespondenceViolation& e) {
            j["correspondence"] = {{"bijective", false}, {"error", e.what()}};
            ok = false;
        }
    }
    if (!a.dimacsOut.empty()) write_text(a.dimacsOut, to_dimacs(induced_cnf(s)));
    if (j.contains("independence")) ok = ok && j["independence"]["ok"].get<bool>();
    j["ok"] = ok;
    emit(j, g);
    std::cerr << "model n=" << s.n() << ": " << pts.points.size() << " isolated points\n";
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- bench

int run_bench(const Global& g, const std::string& suite, const std::string& methods, const std::string& fixture,
              std::uint64_t maxTrials, std::uint64_t bound)
{
    static const std::vector<std::string> known{"variety", "rho", "p-1"};
    auto ms = split(methods);
    for (const auto& m : ms)
        if (std::find(known.begin(), known.end(), m) == known.end()) throw UsageError("unknown method '" + m + "'");
    std::vector<BigInt> cs;
    for (const auto& s : split(suite)) cs.push_back(parse_bigint(s, "suite entry"));
    std::optional<Fixture> fx;
    std::ostringstream csv;
    csv << "method,c,trials,success,wall_ms\n";
    for (const auto& m : ms)
        for (const auto& c : cs) {
            auto t0 = std::chrono::steady_clock::now();
            FactorReport r;
            if (m == "variety") {
                if (!fx) fx = load_fixture(fixture, g.seed);
                FactorConfig cfg;
                cfg.maxTrials = maxTrials;
                cfg.seed = g.seed;
                cfg.threads = g.workers();
                r = factor_semiprime(c, fx->build.map, cfg);
            } else {
                PollardConfig cfg;
                cfg.variant = m == "rho" ? PollardVariant::Rho : PollardVariant::PMinus1;
                cfg.seed = g.seed;
                cfg.bound = bound;
                r = pollard_baseline(c, cfg);
            }
            double wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            csv << m << "," << c << "," << r.trials << "," << (r.outcome == FactorOutcome::Factor ? 1 : 0) << ","
                << std::fixed << std::setprecision(3) << wall << "\n";
        }
    std::cout << csv.str();
    if (!g.out.empty()) write_text(g.out, csv.str());
    std::cerr << "bench: " << ms.size() * cs.size() << " rows (seed " << g.seed << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Factoring experiments with parametrizable varieties"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--seed", g.seed, "64-bit seed (default 0)");
    app.add_option("--threads", g.threads, "worker cap (falls back to VFACTOR_THREADS)")->check(CLI::PositiveNumber);
    app.add_option("--trace", g.trace, "write per-trial JSON lines to this file");
    app.add_option("--out", g.out, "also write the report to this file");

    std::string family, params, buildFixture;
    std::size_t n = 0;
    auto* build = app.add_subcommand("build", "build a triangular map and emit it as JSON");
    build->add_option("--family", family)->check(CLI::IsMember({"n4", "third", "half"}));
    build->add_option("--n", n);
    build->add_option("--params", params, "JSON {family, n, A, Abar, params, seed}");
    build->add_option("--fixture", buildFixture)->check(CLI::IsMember(fixture_names()));

    MapSource vsrc;
    std::string pointsFile;
    auto* verify = app.add_subcommand("verify", "check a fixture or a map against its points");
    add_source(verify, vsrc);
    verify->add_option("--points", pointsFile, "point set JSON file");

    MapSource fsrc;
    std::string cText, field;
    std::uint64_t maxTrials = 1000;
    bool all = false;
    auto* factor = app.add_subcommand("factor", "run seeded factoring trials");
    factor->add_option("--c", cText, "composite to factor")->required();
    add_source(factor, fsrc);
    factor->add_option("--max-trials", maxTrials);
    factor->add_option("--number-field", field, "monic P_I coefficients, constant first");
    factor->add_flag("--all", all, "run every trial instead of stopping at the first factor");

    std::string sc, members = "n4,third7,third10";
    unsigned maxRungs = 20;
    std::uint64_t cap = 10000;
    auto* search = app.add_subcommand("search", "bisect the family on N_P");
    search->add_option("--c", sc)->required();
    search->add_option("--members", members, "comma-separated family members");
    search->add_option("--max-rungs", maxRungs);
    search->add_option("--budget-cap", cap);

    MapSource csrc;
    std::string qText;
    auto* count = app.add_subcommand("count", "brute-force point count over Z/q");
    add_source(count, csrc);
    count->add_option("--q", qText)->required();

    std::string pText, npText;
    unsigned k0 = 1, M = 1;
    auto* analyze = app.add_subcommand("analyze", "evaluate the success and cost formulas");
    analyze->add_option("--p", pText)->required();
    analyze->add_option("--k0", k0);
    analyze->add_option("--M", M);
    analyze->add_option("--np", npText, "N_P (default e^xi0)");

    ModelsArgs margs;
    auto* models = app.add_subcommand("models", "enumerate isolated points of a linear-form model");
    models->add_option("--diagonal", margs.diagonal, "random diagonal model of this dimension");
    models->add_option("--spec", margs.spec, "ModelSpec JSON file");
    models->add_option("--gamma", margs.gamma, "cross clause i,j (repeatable)");
    models->add_flag("--reduce", margs.reduce);
    models->add_flag("--correspondence", margs.correspondence);
    models->add_option("--dimacs-out", margs.dimacsOut);

    std::string suite = "667,221,8051", methods = "variety,rho,p-1", benchFixture = "n4";
    std::uint64_t benchTrials = 1000, bound = 1000;
    auto* bench = app.add_subcommand("bench", "compare methods over a semiprime suite (CSV)");
    bench->add_option("--suite", suite, "comma-separated composites; empty for none")->expected(0, 1);
    bench->add_option("--methods", methods);
    bench->add_option("--fixture", benchFixture)->check(CLI::IsMember(fixture_names()));
    bench->add_option("--max-trials", benchTrials);
    bench->add_option("--bound", bound, "p-1 smoothness bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*build) return run_build(g, family, n, params, buildFixture);
        if (*verify) return run_verify(g, vsrc, pointsFile);
        if (*factor) return run_factor(g, fsrc, cText, maxTrials, field, all);
        if (*search) return run_search(g, sc, members, maxRungs, cap);
        if (*count) return run_count(g, csrc, qText);
        if (*analyze) return run_analyze(g, pText, k0, M, npText);
        if (*models) return run_models(g, margs);
        if (*bench) return run_bench(g, suite, methods, benchFixture, benchTrials, bound);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const vf::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ArityError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedDimension& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidModulus& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const vf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
