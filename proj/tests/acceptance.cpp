// Acceptance checks, one line per criterion. `acceptance N` runs criterion N only.
#include "vfactor/builder.hpp"
#include "vfactor/factor.hpp"
#include "vfactor/models.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace vf;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

BigInt mod(const BigInt& a, const BigInt& m)
{
    BigInt r = a % m;
    return r < 0 ? r + m : r;
}

Rational random_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

Result c1()
{
    auto t0 = Clock::now();
    ExampleN4 ex = build_example_n4();
    std::mt19937_64 rng(1);
    Rational K;
    bool haveK = false;
    int used = 0, mismatch = 0;
    while (used < 50) {
        Rational tau = random_rational(rng);
        Rational closed = closed_form_value(ex.closed, tau);
        auto o = eval_triangular(ex.build.map, Vector{tau});
        if (o.kind != OutcomeKind::RationalValue || is_zero(closed)) continue;
        ++used;
        if (!haveK) {
            K = o.rational / closed;
            haveK = true;
        } else if (o.rational != K * closed) {
            ++mismatch;
        }
    }
    double t = seconds_since(t0);
    Result r;
    r.pass = mismatch == 0 && !is_zero(K) && t < 5;
    r.detail = "n4 closed form: 50 tau, K = " + to_string(K) + ", " + std::to_string(mismatch) + " mismatches, " +
               fmt("%.2f s (limit 5 s)", t);
    return r;
}

Result c2()
{
    ExampleN4 ex = build_example_n4();
    int zeros = 0;
    for (const auto& tau : ex.closed.taus) {
        auto o = eval_triangular(ex.build.map, Vector{tau});
        zeros += o.kind == OutcomeKind::RationalValue && is_zero(o.rational);
    }
    PointSet pts = enumerate_quadratic_zeros(ex.build.model);
    auto mem = verify_membership(ex.build.map, pts);
    std::size_t passed = 0;
    for (const auto& p : mem.points) passed += p.ok;
    Result r;
    r.pass = zeros == 16 && pts.points.size() == 16 && mem.allPass;
    r.detail = "n4 roots: " + std::to_string(zeros) + "/16 exact zeros, " + std::to_string(passed) + "/" +
               std::to_string(pts.points.size()) + " points pass membership";
    return r;
}

Result c3()
{
    ExampleN4 ex = build_example_n4();
    auto t0 = Clock::now();
    CountReport c = count_points_bruteforce(ex.build.map, 1009);
    double t = seconds_since(t0);
    Result r;
    r.pass = c.numeratorZeros >= 14 && c.numeratorZeros <= 16 && c.curvePoints + c.witnessCount == c.total && t < 2;
    r.detail = "count over Z_1009: numeratorZeros = " + std::to_string(c.numeratorZeros) + " (want 14..16), " +
               std::to_string(c.witnessCount) + " witnesses, " + fmt("%.2f s (limit 2 s)", t);
    return r;
}

// First failing event for tau = r mod p: 3, 2, 1 for a stage denominator,
// 0 for a root of the numerator, -1 for a nonzero completed value.
int first_event(const ClosedForm& cl, long r, long p)
{
    auto vanishes = [&](const Poly& q) { return mod(BigInt(poly_eval(q, Vector{Rational(r)}).get_num()), p) == 0; };
    if (vanishes(cl.Q1) || 5 % p == 0) return 3;
    if (vanishes(cl.Q2) || BigInt(1136142810) % p == 0) return 2;
    if (vanishes(cl.Q3) || BigInt(2358774) % p == 0) return 1;
    for (const auto& t : cl.taus)
        if (mod(BigInt(t.get_den()), p) != 0 && mod(BigInt(t.get_den() * r - t.get_num()), p) == 0) return 0;
    return -1;
}

Result c4()
{
    auto t0 = Clock::now();
    ExampleN4 ex = build_example_n4();
    const long p = 23, q = 29, c = p * q;
    // residue-collision oracle: the gcd is nontrivial exactly when the first
    // failing events mod p and mod q differ
    std::map<int, long> np, nq;
    for (long r = 0; r < p; ++r) ++np[first_event(ex.closed, r, p)];
    for (long r = 0; r < q; ++r) ++nq[first_event(ex.closed, r, q)];
    long same = 0;
    for (const auto& [e, k] : np) same += k * nq[e];
    double prob = 1 - double(same) / double(c);
    std::set<BigInt> r23, r29;
    Modulus m23(p), m29(q);
    for (const auto& t : ex.closed.taus) {
        auto x = reduce_rational_mod(t, m23), y = reduce_rational_mod(t, m29);
        if (auto* e = std::get_if<ModElement>(&x)) r23.insert(e->value);
        if (auto* e = std::get_if<ModElement>(&y)) r29.insert(e->value);
    }

    FactorConfig cfg;
    cfg.maxTrials = 2000;
    cfg.seed = 2024;
    cfg.stopOnFactor = false;
    FactorReport rep = factor_semiprime(c, ex.build.map, cfg);
    double freq = double(rep.factorTrials) / double(rep.trials);
    double sigma = std::sqrt(prob * (1 - prob) / double(rep.trials));
    double t = seconds_since(t0);
    Result r;
    r.pass = rep.trials == 2000 && std::abs(freq - prob) <= 3 * sigma && t < 30;
    r.detail = "factoring 667: " + std::to_string(rep.factorTrials) + "/2000 = " + fmt("%.4f", freq) +
               ", oracle " + std::to_string(c - same) + "/667 = " + fmt("%.4f", prob) + ", 3 sigma = " +
               fmt("%.4f", 3 * sigma) + " (distinct root residues " + std::to_string(r23.size()) + " mod 23, " +
               std::to_string(r29.size()) + " mod 29), " + fmt("%.2f s (limit 30 s)", t);
    return r;
}

Result c5()
{
    StructureParams params;
    params.k0 = 1;
    params.k1 = 1;
    params.r0 = 1;
    params.r1 = 2;
    params.s0 = 3;
    Vector Ap{Rational(1), Rational(2), Rational(3), Rational(4)}, Ad(4, Rational(1));
    Vector want{Rational(-1, 3), Rational(-1, 9), Rational(1, 19), Rational(5, 33)};
    StructureConstants sc = solve_structure_constants(4, Ap, Ad, params);
    bool boxed = structure_identities_hold(sc);
    bool vander = true;
    for (int k = 0; k + 1 < 4; ++k) {
        Rational s = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            Rational ck = 1;
            for (int e = 0; e < k; ++e) ck *= sc.cs[i];
            s += ck * sc.Ws[i];
        }
        vander = vander && is_zero(s);
    }
    std::string got;
    for (const auto& x : sc.cs) got += (got.empty() ? "" : ", ") + to_string(x);
    Result r;
    r.pass = sc.cs == want && boxed && vander;
    r.detail = "structure constants: c = (" + got + "), want (-1/3, -1/9, 1/19, 5/33); product identities " +
               (boxed ? "hold" : "fail") + ", Vandermonde identities " + (vander ? "hold" : "fail");
    return r;
}

Result c6()
{
    auto t0 = Clock::now();
    BuildResult b = build_third_family(7);
    PointSet pts = enumerate_quadratic_zeros(b.model);
    std::set<Vector> distinct(pts.points.begin(), pts.points.end());
    auto mem = verify_membership(b.map, pts);
    std::vector<Poly> P;
    for (auto row : b.stageRows) P.push_back(poly_permute(model_polynomial(b.model, row), b.map.order));
    auto gf = verify_gaussian_form(P);
    double t = seconds_since(t0);
    Result r;
    r.pass = b.map.M == 2 && pts.points.size() == 128 && distinct.size() == 128 && mem.allPass && P.size() == 5 &&
             gf.ok && t < 60;
    r.detail = "third family n = 7: M = " + std::to_string(b.map.M) + ", " + std::to_string(distinct.size()) +
               " distinct points, membership " + (mem.allPass ? "ok" : "fails") + ", Gaussian form on " +
               std::to_string(P.size()) + " polynomials " + (gf.ok ? "ok" : "fails") + ", " +
               fmt("%.2f s (limit 60 s)", t);
    return r;
}

Result c7()
{
    BuildResult b7 = build_third_family(7), b10 = build_third_family(10);
    ExampleN4 ex = build_example_n4();
    std::vector<FamilyMember> fam{
        {"n4", BigInt(16), &ex.build.map}, {"third7", BigInt(128), &b7.map}, {"third10", BigInt(1024), &b10.map}};
    SearchConfig sc;
    sc.base.seed = 7;
    sc.maxRungs = 20;
    SearchReport s = search_np(221, fam, sc);
    bool used7 = false;
    for (const auto& rung : s.rungs) used7 = used7 || fam[rung.member].label == "third7";
    Result r;
    r.pass = s.result.outcome == FactorOutcome::Factor && (s.result.factor == 13 || s.result.factor == 17) &&
             s.rungs.size() <= 20;
    std::string path;
    for (const auto& rung : s.rungs) path += (path.empty() ? "" : " ") + fam[rung.member].label;
    r.detail = "search 221: " + std::string(to_string(s.result.outcome)) + " " + s.result.factor.get_str() + " after " +
               std::to_string(s.rungs.size()) + " rungs (" + path + ")" + (used7 ? "" : ", n = 7 member unused");
    return r;
}

Result c8()
{
    double worstPr = 0, worstXi = 0;
    bool ok = true;
    for (double p : {1e3, 1e6, 1e9})
        for (unsigned k0 : {1u, 2u})
            for (unsigned M : {1u, 2u}) {
                XiResult x = optimal_log_np(Real(p), k0, M);
                Real pr = success_probability(Real(p), Real(k0 * M), exp(x.xi0));
                double dpr = std::abs(pr.convert_to<double>() - 0.5);
                Real two = Real(k0 * M) * log(Real(p)) + log(log(Real(2)));
                double dxi = abs(x.xi0 - two).convert_to<double>();
                double tol = 10 * std::pow(p, -double(k0 * M));
                ok = ok && x.status == OptimumStatus::Interior && dpr <= 1e-6 && dxi <= tol;
                worstPr = std::max(worstPr, dpr);
                worstXi = std::max(worstXi, dxi / tol);
            }
    Result r;
    r.pass = ok;
    r.detail = "formula grid (12 points): max |Pr - 1/2| = " + fmt("%.3g", worstPr) +
               " (limit 1e-6), max |xi0 - expansion| / (10 p^-k0M) = " + fmt("%.3g", worstXi) + " (limit 1)";
    return r;
}

Result c9()
{
    std::mt19937_64 rng(9);
    const unsigned qs[] = {7, 11, 13};
    int violations = 0;
    std::string worst;
    double worstRatio = 0;
    for (int i = 0; i < 20; ++i) {
        unsigned d = 2 + i % 3, q = qs[(i / 3) % 3];
        PlaneCurve c = random_plane_curve(q, d, rng);
        std::uint64_t n = count_projective_points(c);
        long double bound = bound_plane(q, d).value();
        if (static_cast<long double>(n) > bound) ++violations;
        double ratio = double(n) / double(bound);
        if (ratio > worstRatio) {
            worstRatio = ratio;
            worst = std::to_string(n) + " points vs bound " + fmt("%.2f", double(bound)) + " at d = " +
                    std::to_string(d) + ", q = " + std::to_string(q);
        }
    }
    Result r;
    r.pass = violations == 0;
    r.detail = "plane curves: 20 random curves, " + std::to_string(violations) + " bound violations; tightest " + worst;
    return r;
}

Result c10()
{
    std::ostringstream log;
    bool ok = true;
    for (std::size_t n = 3; n <= 10; ++n) {
        ModelSpec diag = random_diagonal_model(n, 1000 + n);
        std::vector<Vector> a0, a1;
        for (std::size_t i = 1; i <= n; ++i) {
            a0.push_back(diag.forms[form_index(i, 0) - 1]);
            a1.push_back(diag.forms[form_index(i, 1) - 1]);
        }
        std::size_t full = enumerate_isolated_points(diag).points.size();
        ModelSpec A = make_model_a(a0, a1, {{1, 2}});
        IsolatedPointSet ap = enumerate_isolated_points(A);
        bool nOk = full == (std::size_t(1) << n) && ap.points.size() == 3 * (std::size_t(1) << (n - 2));
        if (n <= 8) {
            ReducedModel red = reduce_model(A, ap);
            IsolatedPointSet dp = enumerate_isolated_points(red.diagonal);
            std::set<Vector> orig;
            for (const auto& p : ap.points) orig.insert(p.point);
            bool embeds = dp.points.size() == (std::size_t(1) << red.m);
            std::set<Vector> seen;
            for (const auto& y : dp.points) {
                Vector x = red.embed(y.point);
                embeds = embeds && orig.count(x) && satisfies(A, x);
                seen.insert(x);
            }
            embeds = embeds && seen.size() == dp.points.size();
            nOk = nOk && embeds;
            log << " n" << n << ":" << full << "/" << ap.points.size() << "/m" << red.m << (embeds ? "" : "!");
        } else {
            log << " n" << n << ":" << full << "/" << ap.points.size();
        }
        ok = ok && nOk;
    }
    Result r;
    r.pass = ok;
    r.detail = "models (2^n / with one clause / reduced m):" + log.str();
    return r;
}

Result c11()
{
    PollardConfig rho;
    FactorReport r8051 = pollard_baseline(8051, rho);
    bool ok = r8051.outcome == FactorOutcome::Factor && (r8051.factor == 83 || r8051.factor == 97);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<unsigned long> half(1u << 15, (1u << 16) - 1);
    int solved = 0;
    for (int i = 0; i < 10; ++i) {
        BigInt p, q, a = half(rng), b = half(rng);
        mpz_nextprime(p.get_mpz_t(), a.get_mpz_t());
        mpz_nextprime(q.get_mpz_t(), b.get_mpz_t());
        BigInt c = p * q;
        PollardConfig cfg;
        cfg.seed = i;
        FactorReport f = pollard_baseline(c, cfg);
        solved += f.outcome == FactorOutcome::Factor && (f.factor == p || f.factor == q);
    }
    PollardConfig pm1;
    pm1.variant = PollardVariant::PMinus1;
    pm1.bound = 24;
    FactorReport r667 = pollard_baseline(667, pm1);
    bool pm1ok = r667.outcome == FactorOutcome::Factor && (r667.factor == 23 || r667.factor == 29);
    Result r;
    r.pass = ok && solved == 10 && pm1ok;
    r.detail = "baselines: rho 8051 -> " + r8051.factor.get_str() + ", rho on 32-bit semiprimes " +
               std::to_string(solved) + "/10, p-1 (B = 24) on 667 -> " + r667.factor.get_str();
    return r;
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::function<Result()>> all{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= int(all.size()); ++i) which.push_back(i);
    bool ok = true;
    for (int k : which) {
        if (k < 1 || k > int(all.size())) {
            std::fprintf(stderr, "no criterion %d\n", k);
            return 2;
        }
        Result r;
        try {
            r = all[k - 1]();
        } catch (const std::exception& e) {
            r = {false, std::string("threw: ") + e.what()};
        }
        std::printf("criterion %2d: %s  %s\n", k, r.pass ? "PASS" : "FAIL", r.detail.c_str());
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
