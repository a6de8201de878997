#include "vfactor/exact.hpp"

#include <doctest.h>

#include <random>

using namespace vf;

namespace {

Rational R(const char* s) { return parse_rational(s); }

Poly random_poly(std::mt19937_64& rng, std::size_t nvars, int terms)
{
    std::uniform_int_distribution<int> coef(-9, 9), ex(0, 3);
    Poly p(nvars);
    for (int t = 0; t < terms; ++t) {
        Exponent e(nvars);
        for (auto& x : e) x = unsigned(ex(rng));
        Rational c(coef(rng), 1 + std::abs(coef(rng)));
        c.canonicalize();
        p.add_term(e, c);
    }
    return p;
}

Vector random_point(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<int> d(-50, 50), q(1, 30);
    Vector v(n);
    for (auto& x : v) {
        x = Rational(d(rng), q(rng));
        x.canonicalize();
    }
    return v;
}

} // namespace

TEST_CASE("rational normalization")
{
    CHECK(to_string(rational_normalize(2, 4)) == "1/2");
    CHECK(to_string(rational_normalize(-86, 69)) == "-86/69");
    Rational z = rational_normalize(0, 7);
    CHECK(z.get_num() == 0);
    CHECK(z.get_den() == 1);
    CHECK(to_string(rational_normalize(3, -6)) == "-1/2");
    CHECK_THROWS_AS(rational_normalize(1, 0), ZeroDenominator);
    CHECK(to_string(R("10/5")) == "2");
    CHECK_THROWS_AS(R("1/0"), ZeroDenominator);
}

TEST_CASE("vandermonde nullspace")
{
    auto w2 = vandermonde_nullspace({R("0"), R("1")});
    CHECK(w2 == Vector{R("1"), R("-1")});
    auto w3 = vandermonde_nullspace({R("0"), R("1"), R("2")});
    CHECK(w3 == Vector{R("1"), R("-2"), R("1")});
    CHECK_THROWS_AS(vandermonde_nullspace({R("0"), R("1"), R("1")}), DegenerateNodes);

    // closed form W_i proportional to 1 / prod_{j != i} (c_i - c_j)
    Vector c{R("-1/3"), R("2/7"), R("5"), R("-11/2"), R("3/4"), R("9")};
    auto w = vandermonde_nullspace(c);
    Vector closed(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        Rational p = 1;
        for (std::size_t j = 0; j < c.size(); ++j)
            if (j != i) p *= c[i] - c[j];
        closed[i] = 1 / p;
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(!is_zero(w[i]));
        CHECK(w[i] * closed[0] == closed[i] * w[0]);
    }
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        Rational s = 0, ck;
        for (std::size_t i = 0; i < c.size(); ++i) {
            ck = 1;
            for (std::size_t t = 0; t < k; ++t) ck *= c[i];
            s += ck * w[i];
        }
        CHECK(is_zero(s));
    }
}

TEST_CASE("polynomial evaluation")
{
    Poly p = poly_var(2, 0) * poly_var(2, 1) + 1;
    CHECK(poly_eval(p, Vector{R("2"), R("3")}) == 7);
    CHECK(is_zero(poly_eval(Poly(3), Vector{R("1"), R("2"), R("3")})));
    CHECK_THROWS_AS(poly_eval(p, Vector{R("1")}), ArityError);
}

TEST_CASE("partial derivatives")
{
    Poly x1 = poly_var(2, 0), x2 = poly_var(2, 1);
    Poly p = x1 * x1 * x2;
    CHECK(poly_partial_derivative(p, 0) == 2 * (x1 * x2));
    CHECK(poly_partial_derivative(p, 1) == x1 * x1);
    CHECK_THROWS_AS(poly_partial_derivative(p, 2), ArityError);

    // sum of products of generic linear forms, checked against the expansion
    // and a symmetric difference quotient (exact for quadratics)
    std::mt19937_64 rng(11);
    const std::size_t n = 4;
    std::vector<Vector> a, b;
    for (std::size_t i = 0; i < n; ++i) {
        a.push_back(random_point(rng, n + 1));
        b.push_back(random_point(rng, n + 1));
    }
    Poly P(n);
    for (std::size_t i = 0; i < n; ++i) P += linear_form(a[i]) * linear_form(b[i]);
    for (std::size_t k = 0; k < n; ++k) {
        Poly expect(n);
        for (std::size_t i = 0; i < n; ++i)
            expect += a[i][k] * linear_form(b[i]) + b[i][k] * linear_form(a[i]);
        Poly d = poly_partial_derivative(P, k);
        CHECK(d == expect);
        for (int t = 0; t < 5; ++t) {
            Vector x = random_point(rng, n), xp = x, xm = x;
            Rational h = Rational(1, 7);
            xp[k] += h;
            xm[k] -= h;
            CHECK((poly_eval(P, xp) - poly_eval(P, xm)) / (2 * h) == poly_eval(d, x));
        }
    }
}

TEST_CASE("derivative linearity and product rule")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        Poly p = random_poly(rng, 3, 6), q = random_poly(rng, 3, 6);
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(poly_partial_derivative(p + q, k) == poly_partial_derivative(p, k) + poly_partial_derivative(q, k));
            CHECK(poly_partial_derivative(p * q, k) ==
                  poly_partial_derivative(p, k) * q + p * poly_partial_derivative(q, k));
        }
    }
}

TEST_CASE("substitution, coefficients and permutation")
{
    Poly x = poly_var(3, 0), y = poly_var(3, 1), z = poly_var(3, 2);
    Poly p = x * y + 3 * (z * z) - 2;
    CHECK(poly_substitute(p, 1, R("2")) == 2 * x + 3 * (z * z) - 2);
    CHECK(poly_coefficient_in(p, 2, 2) == poly_constant(3, 3));
    CHECK(poly_coefficient_in(p, 0, 1) == y);
    // new variable i is old variable perm[i]
    Poly q = poly_permute(p, {2, 0, 1});
    CHECK(q == y * z + 3 * (x * x) - 2);
    CHECK(primitive_scale({&p}) == 1);
    Poly h = Rational(1, 6) * x + Rational(1, 4) * y;
    Rational s = primitive_scale({&h});
    CHECK(h.scaled(s) == 2 * x + 3 * y);
}

TEST_CASE("linear algebra")
{
    Matrix m{{R("1"), R("2"), R("3")}, {R("2"), R("4"), R("6")}, {R("0"), R("1"), R("1")}};
    CHECK(rank(m) == 2);
    CHECK(is_zero(determinant(m)));
    auto ker = nullspace(m, 3);
    REQUIRE(ker.size() == 1);
    for (const auto& row : m) {
        Rational s = 0;
        for (std::size_t j = 0; j < 3; ++j) s += row[j] * ker[0][j];
        CHECK(is_zero(s));
    }
    auto x = solve_square({{R("2"), R("1")}, {R("1"), R("3")}}, {R("3"), R("5")});
    REQUIRE(x);
    CHECK((*x)[0] == R("4/5"));
    CHECK((*x)[1] == R("7/5"));
    CHECK(!solve_square({{R("1"), R("2")}, {R("2"), R("4")}}, {R("1"), R("1")}));
}
