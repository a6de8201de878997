#include "vfactor/errors.hpp"
#include "vfactor/models.hpp"

#include <doctest.h>

#include <random>

using namespace vf;

namespace {

Rational eval_form(const Vector& f, const Vector& x)
{
    Rational s = 0;
    for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * x[k];
    return s;
}

std::vector<Vector> random_forms(std::mt19937_64& rng, std::size_t n, std::size_t count)
{
    std::uniform_int_distribution<int> d(-9, 9);
    std::vector<Vector> out(count, Vector(n + 1));
    for (auto& f : out)
        for (auto& x : f) x = d(rng);
    return out;
}

// every choice of one vanishing form per pair, solved directly
std::set<Vector> diagonal_oracle(const std::vector<Vector>& a0, const std::vector<Vector>& a1)
{
    std::size_t n = a0.size();
    std::set<Vector> pts;
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << n); ++s) {
        Matrix A(n, Vector(n));
        Vector b(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vector& f = (s >> i) & 1 ? a1[i] : a0[i];
            for (std::size_t k = 0; k < n; ++k) A[i][k] = f[k];
            b[i] = -f[n];
        }
        auto x = solve_square(A, b);
        REQUIRE(x);
        Vector p = *x;
        p.push_back(1);
        pts.insert(p);
    }
    return pts;
}

std::set<Vector> point_set(const IsolatedPointSet& s)
{
    std::set<Vector> out;
    for (const auto& p : s.points) out.insert(p.point);
    return out;
}

bool hits(const ModelSpec& spec, const std::set<std::size_t>& w)
{
    for (const auto& c : spec.clauses2)
        if (!w.count(c[0]) && !w.count(c[1])) return false;
    for (const auto& c : spec.clauses3)
        if (!w.count(c[0]) && !w.count(c[1]) && !w.count(c[2])) return false;
    return true;
}

// witness vanishes at the point, hits every clause, has rank n and no element can be dropped
void check_certificates(const ModelSpec& spec, const IsolatedPointSet& s)
{
    std::size_t n = spec.n();
    for (const auto& p : s.points) {
        std::set<std::size_t> w(p.witness.begin(), p.witness.end());
        Matrix lin;
        for (std::size_t f : w) {
            CHECK(is_zero(eval_form(spec.forms[f - 1], p.point)));
            lin.push_back(Vector(spec.forms[f - 1].begin(), spec.forms[f - 1].end() - 1));
        }
        CHECK(hits(spec, w));
        CHECK(rank(lin) == n);
        for (std::size_t f : w) {
            auto sub = w;
            sub.erase(f);
            CHECK(!hits(spec, sub));
        }
        CHECK(satisfies(spec, p.point));
    }
}

} // namespace

TEST_CASE("diagonal models")
{
    std::vector<Vector> a0, a1;
    for (std::size_t i = 0; i < 3; ++i) {
        Vector x(4, Rational(0)), y(4, Rational(0));
        x[i] = 1;
        y[i] = 1;
        y[3] = -1;
        a0.push_back(x);
        a1.push_back(y);
    }
    ModelSpec cube = make_diagonal_model(a0, a1);
    CHECK(verify_independence_property(cube).ok);
    IsolatedPointSet s = enumerate_isolated_points(cube);
    CHECK(s.points.size() == 8);
    CHECK(point_set(s) == diagonal_oracle(a0, a1));
    check_certificates(cube, s);

    std::mt19937_64 rng(8);
    for (std::size_t n = 3; n <= 7; ++n) {
        auto b0 = random_forms(rng, n, n), b1 = random_forms(rng, n, n);
        ModelSpec spec = make_diagonal_model(b0, b1);
        if (!verify_independence_property(spec).ok) continue;
        IsolatedPointSet pts = enumerate_isolated_points(spec);
        std::set<Vector> want = diagonal_oracle(b0, b1);
        CHECK(point_set(pts) == want);
        CHECK(pts.points.size() == (std::size_t(1) << n));
        check_certificates(spec, pts);
        CHECK(check_point_bounds(spec, pts.points.size()).withinTwoPowN);

        // one Gamma clause a_{0,1} a_{0,2} removes the strings with both pairs on a_1
        ModelSpec g = make_model_a(b0, b1, {{1, 2}});
        IsolatedPointSet gp = enumerate_isolated_points(g);
        std::set<Vector> filtered;
        for (const auto& p : want)
            if (is_zero(eval_form(b0[0], p)) || is_zero(eval_form(b0[1], p))) filtered.insert(p);
        CHECK(point_set(gp) == filtered);
        CHECK(gp.points.size() == 3 * (std::size_t(1) << (n - 2)));
        check_certificates(g, gp);
    }
}

TEST_CASE("random diagonal models")
{
    for (std::size_t n : {3u, 6u, 9u}) {
        ModelSpec spec = random_diagonal_model(n, 100 + n);
        CHECK(verify_independence_property(spec).ok);
        CHECK(enumerate_isolated_points(spec).points.size() == (std::size_t(1) << n));
    }
    ModelSpec a = random_diagonal_model(5, 4), b = random_diagonal_model(5, 4);
    CHECK(a.forms == b.forms);
}

TEST_CASE("independence property")
{
    std::vector<Vector> a0, a1;
    for (std::size_t i = 0; i < 4; ++i) {
        Vector x(5, Rational(0)), y(5, Rational(0));
        x[i] = 1;
        y[i] = 1;
        y[4] = -1;
        a0.push_back(x);
        a1.push_back(y);
    }
    auto ok = verify_independence_property(make_diagonal_model(a0, a1));
    CHECK(ok.ok);
    CHECK(ok.checked > 0);
    a1[0] = a0[0];
    auto bad = verify_independence_property(make_diagonal_model(a0, a1));
    CHECK(!bad.ok);
    CHECK(!bad.firstViolation.empty());

    ModelSpec broken;
    broken.nbar = 2;
    broken.forms = {a0[0], a0[1]};
    broken.clauses2 = {{{2, 1}}};
    CHECK_THROWS(broken.validate());
    broken.clauses2 = {{{1, 3}}};
    CHECK_THROWS(broken.validate());
}

TEST_CASE("block fast path agrees with the general search")
{
    std::mt19937_64 rng(21);
    auto a0 = random_forms(rng, 5, 5), a1 = random_forms(rng, 5, 5);
    std::vector<std::vector<std::size_t>> blocks{{1, 2}, {3}, {4, 5}};
    ModelSpec spec = make_block_model(a0, a1, blocks);
    REQUIRE(verify_independence_property(spec).ok);
    spec.clauses2.insert({form_index(1, 1), form_index(4, 1)});  // a1 or a3
    spec.clauses3.insert({form_index(1, 0), form_index(3, 0), form_index(5, 1)});  // !a1 or !a2 or a3
    IsolatedPointSet fast = enumerate_isolated_points(spec);
    CHECK(fast.blockPath);
    ModelSpec plain = spec;
    plain.blocks.clear();
    IsolatedPointSet slow = enumerate_isolated_points(plain);
    CHECK(!slow.blockPath);
    CHECK(point_set(fast) == point_set(slow));
    check_certificates(spec, slow);
    // truth table of (a1 | a3)(!a1 | !a2 | a3)
    std::size_t sat = 0;
    for (int s = 0; s < 8; ++s) {
        bool x1 = s & 1, x2 = s & 2, x3 = s & 4;
        sat += (x1 || x3) && (!x1 || !x2 || x3);
    }
    CHECK(fast.points.size() == sat);
    auto corr = sat_correspondence(spec);
    CHECK(corr.bijective);
    CHECK(corr.solutions == sat);
    CHECK(check_point_bounds(spec, fast.points.size()).withinThreePowN);
}

TEST_CASE("sat correspondence")
{
    std::mt19937_64 rng(5);
    auto a0 = random_forms(rng, 3, 3), a1 = random_forms(rng, 3, 3);
    ModelSpec spec = make_block_model(a0, a1, {{1}, {2}, {3}});
    auto empty = sat_correspondence(spec);
    CHECK(empty.solutions == 8);
    CHECK(empty.points == 8);
    CHECK(empty.bijective);

    // a1 | a2
    auto b0 = random_forms(rng, 2, 2), b1 = random_forms(rng, 2, 2);
    ModelSpec two = make_block_model(b0, b1, {{1}, {2}});
    two.clauses2.insert({form_index(1, 1), form_index(2, 1)});
    auto r = sat_correspondence(two);
    CHECK(r.solutions == 3);
    CHECK(r.points == 3);
    CHECK(r.bijective);
    Cnf f = induced_cnf(two);
    REQUIRE(f.clauses.size() == 1);
    CHECK(f.clauses[0] == std::vector<int>{1, 2});

    // (a1)(!a1) with R_1 = {1, 2}
    auto c0 = random_forms(rng, 2, 2), c1 = random_forms(rng, 2, 2);
    ModelSpec unsat = make_block_model(c0, c1, {{1, 2}});
    unsat.clauses2.insert({form_index(1, 1), form_index(2, 1)});
    unsat.clauses2.insert({form_index(1, 0), form_index(2, 0)});
    CHECK(enumerate_isolated_points(unsat).points.empty());
    auto u = sat_correspondence(unsat);
    CHECK(u.solutions == 0);
    CHECK(u.points == 0);
    CHECK(u.bijective);
}

TEST_CASE("cnf utilities")
{
    Cnf f;
    f.nvars = 4;
    f.clauses = {{1}, {-2, 3}, {1, 2, -3, 4}, {-1, -4}};
    auto models = all_models(f);
    std::size_t want = 0;
    for (int s = 0; s < 16; ++s) {
        std::vector<bool> a{bool(s & 1), bool(s & 2), bool(s & 4), bool(s & 8)};
        want += f.eval(a);
    }
    CHECK(models.size() == want);

    Cnf g = to_3sat(f);
    for (const auto& c : g.clauses) CHECK(c.size() == 3);
    CHECK(g.nvars > f.nvars);
    REQUIRE(g.auxiliary.size() == g.nvars);
    for (std::size_t v = 0; v < f.nvars; ++v) CHECK(!g.auxiliary[v]);
    // projection of the 3SAT models onto the original variables
    std::set<std::vector<bool>> proj;
    for (const auto& m : all_models(g)) proj.insert(std::vector<bool>(m.begin(), m.begin() + 4));
    CHECK(std::set<std::vector<bool>>(models.begin(), models.end()) == proj);

    Cnf back = parse_dimacs(to_dimacs(g));
    CHECK(back.nvars == g.nvars);
    CHECK(back.clauses == g.clauses);
    CHECK(back.auxiliary == g.auxiliary);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 5 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
}

TEST_CASE("reduction to a diagonal model")
{
    std::mt19937_64 rng(13);
    auto a0 = random_forms(rng, 3, 3), a1 = random_forms(rng, 3, 3);
    ModelSpec diag = make_diagonal_model(a0, a1);
    REQUIRE(verify_independence_property(diag).ok);
    ReducedModel same = reduce_model(diag, enumerate_isolated_points(diag));
    CHECK(same.m == 3);
    CHECK(same.zeroed.empty());

    for (std::size_t n : {3u, 5u, 7u}) {
        auto b0 = random_forms(rng, n, n), b1 = random_forms(rng, n, n);
        ModelSpec A = make_model_a(b0, b1, {{1, 2}, {2, 3}});
        if (!verify_independence_property(make_diagonal_model(b0, b1)).ok) continue;
        IsolatedPointSet pts = enumerate_isolated_points(A);
        // m by direct count over the points
        std::size_t m = 0;
        for (const auto& p : pts.points) {
            std::size_t k = 0;
            for (const auto& f : b0) k += !is_zero(eval_form(f, p.point));
            m = std::max(m, k);
        }
        ReducedModel red = reduce_model(A, pts);
        CHECK(red.m == m);
        CHECK(red.m <= n);
        CHECK(red.kept.size() + red.zeroed.size() == n);
        IsolatedPointSet dp = enumerate_isolated_points(red.diagonal);
        CHECK(dp.points.size() == (std::size_t(1) << red.m));
        std::set<Vector> orig = point_set(pts), embedded;
        for (const auto& y : dp.points) {
            Vector x = red.embed(y.point);
            CHECK(satisfies(A, x));
            embedded.insert(x);
        }
        CHECK(embedded.size() == dp.points.size());
        for (const auto& x : embedded) CHECK(orig.count(x) == 1);
    }

    CHECK_THROWS_AS(reduce_model(diag, IsolatedPointSet{}), EmptyModel);

    // a_{1,1} is the constant 1, so every point has a_{0,1} = 0
    ModelSpec z;
    z.nbar = 2;
    z.forms = {{Rational(1), Rational(-2)}, {Rational(0), Rational(1)}};
    z.clauses2 = {{{1, 2}}};
    IsolatedPointSet zp = enumerate_isolated_points(z);
    REQUIRE(zp.points.size() == 1);
    CHECK_THROWS_AS(reduce_model(z, zp), EmptyModel);
}

TEST_CASE("point bounds")
{
    ModelSpec s = random_diagonal_model(3, 1);
    CHECK(check_point_bounds(s, 8).withinTwoPowN);
    CHECK(!check_point_bounds(s, 9).withinTwoPowN);
    CHECK(check_point_bounds(s, 27).withinThreePowN);
    CHECK(!check_point_bounds(s, 28).withinThreePowN);
}
