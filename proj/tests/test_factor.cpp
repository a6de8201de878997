#include "vfactor/builder.hpp"
#include "vfactor/factor.hpp"

#include <doctest.h>

#include <cmath>

using namespace vf;

namespace {

BigInt gcd(const BigInt& a, const BigInt& b)
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

BigInt mod(const BigInt& a, const BigInt& m)
{
    BigInt r = a % m;
    return r < 0 ? r + m : r;
}

// x1 = x2, P0 = p0(x1, x2)
TriangularMap chain(const Poly& p0)
{
    TriangularMap m;
    m.n = 2;
    m.M = 1;
    m.order = {0, 1};
    m.stages.push_back({poly_var(2, 1), poly_constant(2, 1)});
    m.P0 = p0;
    m.validate();
    return m;
}

void check_factor(const FactorReport& r, const BigInt& c)
{
    if (r.outcome != FactorOutcome::Factor) return;
    CHECK(c % r.factor == 0);
    CHECK(r.factor > 1);
    CHECK(r.factor < c);
}

bool same_log(const FactorReport& a, const FactorReport& b)
{
    if (a.log.size() != b.log.size()) return false;
    for (std::size_t i = 0; i < a.log.size(); ++i) {
        const auto &x = a.log[i], &y = b.log[i];
        if (x.index != y.index || x.tau != y.tau || x.cls != y.cls || x.m != y.m || x.witness != y.witness ||
            x.stage != y.stage || x.factor != y.factor)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("factor_semiprime on 667 with the n4 map")
{
    ExampleN4 ex = build_example_n4();
    FactorConfig cfg;
    cfg.maxTrials = 200;
    cfg.seed = 1;
    FactorReport r = factor_semiprime(667, ex.build.map, cfg);
    REQUIRE(r.outcome == FactorOutcome::Factor);
    CHECK((r.factor == 23 || r.factor == 29));
    CHECK(r.trials <= 200);
    check_factor(r, 667);
}

TEST_CASE("small and degenerate cases")
{
    FactorConfig cfg;
    cfg.maxTrials = 200;
    FactorReport four = factor_semiprime(4, chain(poly_var(2, 0)), cfg);
    REQUIRE(four.outcome == FactorOutcome::Factor);
    CHECK(four.factor == 2);

    // P0 = 1 never vanishes
    cfg.maxTrials = 10;
    FactorReport none = factor_semiprime(667, chain(poly_constant(2, 1)), cfg);
    CHECK(none.outcome == FactorOutcome::Exhausted);
    CHECK(none.zeroTrials == 0);
    CHECK(none.trials == 10);

    // P0 = 0 vanishes everywhere
    FactorReport all = factor_semiprime(667, chain(Poly(2)), cfg);
    CHECK(all.outcome == FactorOutcome::Trivial);
    CHECK(all.trivialTrials == 10);
}

TEST_CASE("determinism and thread invariance")
{
    ExampleN4 ex = build_example_n4();
    FactorConfig cfg;
    cfg.maxTrials = 300;
    cfg.seed = 42;
    cfg.keepLog = true;
    cfg.stopOnFactor = false;
    FactorReport a = factor_semiprime(667, ex.build.map, cfg);
    FactorReport b = factor_semiprime(667, ex.build.map, cfg);
    cfg.threads = 4;
    FactorReport c = factor_semiprime(667, ex.build.map, cfg);
    CHECK(a.log.size() == 300);
    CHECK(same_log(a, b));
    CHECK(same_log(a, c));
    CHECK(a.factorTrials == c.factorTrials);
    CHECK(a.witnessTrials == c.witnessTrials);
    CHECK(a.factorTrials + a.trivialTrials <= a.trials);
    for (const auto& t : a.log) {
        REQUIRE(t.tau.size() == 1);
        CHECK(t.tau[0] >= 0);
        CHECK(t.tau[0] < 667);
        if (t.cls == ClassKind::Factor) CHECK(667 % t.factor == 0);
    }
    cfg.seed = 43;
    cfg.threads = 1;
    CHECK(!same_log(a, factor_semiprime(667, ex.build.map, cfg)));
}

TEST_CASE("per-trial success matches the stage-aware residue count")
{
    // Exhaustive over tau in Z/667: a trial factors exactly when the first
    // failing event differs between 23 and 29.
    ExampleN4 ex = build_example_n4();
    const auto& cl = ex.closed;
    auto event = [&](long r, long p) {
        auto ev = [&](const Poly& q) { return mod(BigInt(poly_eval(q, Vector{Rational(r)}).get_num()), p) == 0; };
        if (ev(cl.Q1) || 5 % p == 0) return 3;
        if (ev(cl.Q2) || BigInt(1136142810) % p == 0) return 2;
        if (ev(cl.Q3) || BigInt(2358774) % p == 0) return 1;
        for (const auto& t : cl.taus) {
            BigInt den = t.get_den(), num = t.get_num();
            if (den % p != 0 && mod(den * r - num, p) == 0) return 0;
        }
        return -1;
    };
    long predicted = 0;
    for (long t = 0; t < 667; ++t)
        if (event(t % 23, 23) != event(t % 29, 29)) ++predicted;
    CHECK(predicted == 382);

    ReducedMap rm(ex.build.map, Modulus(667));
    long observed = 0;
    for (long t = 0; t < 667; ++t) {
        auto o = rm.eval({BigInt(t)});
        BigInt m = o.kind == OutcomeKind::Witness ? o.witness.divisor : o.value;
        if (gcd_extract(m, 667).kind == ClassKind::Factor) ++observed;
    }
    CHECK(observed == predicted);
}

TEST_CASE("search over a single-member family degenerates to one run")
{
    BuildResult b7 = build_third_family(7);
    std::vector<FamilyMember> fam{{"third7", BigInt(128), &b7.map}};
    SearchConfig sc;
    sc.base.seed = 7;
    SearchReport s = search_np(221, fam, sc);
    REQUIRE(!s.rungs.empty());
    CHECK(s.rungs[0].member == 0);
    FactorConfig cfg = sc.base;
    cfg.maxTrials = s.rungs[0].budget;
    FactorReport direct = factor_semiprime(221, b7.map, cfg);
    CHECK(direct.outcome == s.rungs[0].report.outcome);
    CHECK(direct.trials == s.rungs[0].report.trials);
    CHECK(direct.factor == s.rungs[0].report.factor);
    check_factor(s.result, 221);
    CHECK(s.result.outcome == FactorOutcome::Factor);
    CHECK_THROWS_AS(search_np(221, {}, sc), FamilyGap);
}

TEST_CASE("search bracket")
{
    BuildResult b7 = build_third_family(7);
    ExampleN4 ex = build_example_n4();
    std::vector<FamilyMember> fam{{"n4", BigInt(16), &ex.build.map}, {"third7", BigInt(128), &b7.map}};
    SearchConfig sc;
    sc.base.seed = 3;
    SearchReport s = search_np(BigInt(1000003) * 1000033, fam, sc);
    CHECK(s.result.outcome != FactorOutcome::Factor);
    double prev = INFINITY;
    for (const auto& r : s.rungs) {
        CHECK(r.ad < r.au);
        double w = std::log(r.au.get_d()) - std::log(r.ad.get_d());
        CHECK(w < prev);
        prev = w;
        CHECK(r.budget <= sc.budgetCap);
        CHECK(r.budget >= 8);
    }
    CHECK(s.rungs.size() <= sc.maxRungs);
}

TEST_CASE("number field: k0 = 1 matches the plain driver")
{
    ExampleN4 ex = build_example_n4();
    FactorConfig cfg;
    cfg.maxTrials = 100;
    cfg.seed = 5;
    cfg.keepLog = true;
    cfg.stopOnFactor = false;
    FactorReport plain = factor_semiprime(667, ex.build.map, cfg);
    FactorReport nf = factor_number_field(667, lift_to_number_field(ex.build.map, {0, 1}), cfg);
    CHECK(plain.factorTrials == nf.factorTrials);
    CHECK(plain.trivialTrials == nf.trivialTrials);
    REQUIRE(plain.log.size() == nf.log.size());
    for (std::size_t i = 0; i < plain.log.size(); ++i) {
        CHECK(plain.log[i].tau == nf.log[i].tau);
        CHECK(plain.log[i].cls == nf.log[i].cls);
        CHECK(plain.log[i].factor == nf.log[i].factor);
    }
}

TEST_CASE("number field over Z[i]")
{
    // x1 = x2, P0 = x1 - (2 + i); c = 5 * 7 with 5 = (2+i)(2-i) split and 7 inert
    const BigInt c = 35;
    NumberFieldMap nf;
    nf.n = 2;
    nf.M = 1;
    nf.PI = {1, 0, 1};
    nf.stages.push_back({{poly_var(2, 1), Poly(2)}, {poly_constant(2, 1), Poly(2)}});
    nf.P0 = {poly_var(2, 0) - 2, poly_constant(2, -1)};
    nf.validate();

    FactorConfig cfg;
    cfg.maxTrials = 600;
    cfg.seed = 11;
    cfg.keepLog = true;
    cfg.stopOnFactor = false;
    FactorReport r = factor_number_field(c, nf, cfg);
    CHECK(r.method == "number-field");
    std::size_t viaGcd = 0;
    auto nontrivial = [&](const BigInt& g) { return g > 1 && g < c; };
    for (const auto& t : r.log) {
        REQUIRE(t.tau.size() == 2);
        // m = a + b i; coefficient gcds first, then the norm, which p divides
        // exactly when m is a non-unit mod p
        BigInt a = mod(t.tau[0] - 2, c), b = mod(t.tau[1] - 1, c);
        BigInt ga = gcd(a, c), gb = gcd(b, c), g = gcd(a * a + b * b, c);
        if (nontrivial(ga)) {
            CHECK(t.cls == ClassKind::Factor);
            CHECK(t.factor == ga);
        } else if (nontrivial(gb)) {
            CHECK(t.cls == ClassKind::Factor);
            CHECK(t.factor == gb);
        } else if (nontrivial(g)) {
            CHECK(t.cls == ClassKind::Factor);
            CHECK(t.factor == g);
            ++viaGcd;
        } else if (a == 0 && b == 0) {
            CHECK(t.cls == ClassKind::TrivialAll);
        } else {
            CHECK(g == 1);
            CHECK(t.cls == ClassKind::Unit);
        }
    }
    // trials where m lies in (2+i) only, found through the degree collapse
    CHECK(viaGcd > 0);
    CHECK(r.factorTrials > 0);
}

TEST_CASE("pollard baselines")
{
    PollardConfig rho;
    FactorReport r = pollard_baseline(8051, rho);
    REQUIRE(r.outcome == FactorOutcome::Factor);
    CHECK((r.factor == 83 || r.factor == 97));
    CHECK(pollard_baseline(4, rho).factor == 2);

    PollardConfig pm1;
    pm1.variant = PollardVariant::PMinus1;
    pm1.bound = 24;
    FactorReport q = pollard_baseline(667, pm1);
    REQUIRE(q.outcome == FactorOutcome::Factor);
    CHECK((q.factor == 23 || q.factor == 29));
    // 22 = 2 * 11 and 28 = 2^2 * 7 are both 24-smooth
    CHECK(pollard_baseline(4, pm1).factor == 2);

    // 1000003 - 1 = 2 * 3 * 166667 is not 24-smooth, and neither is 1000033 - 1 = 2^5 * 31251
    pm1.bound = 10;
    CHECK(pollard_baseline(BigInt(1000003) * 1000033, pm1).outcome != FactorOutcome::Factor);
}
