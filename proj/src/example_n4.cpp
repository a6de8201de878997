#include "vfactor/builder.hpp"

namespace vf {

namespace {

Vector row(std::initializer_list<const char*> xs)
{
    Vector v;
    for (const char* x : xs) v.push_back(parse_rational(x));
    return v;
}

Poly univariate(std::initializer_list<long> lowToHigh)
{
    Poly p(1);
    unsigned e = 0;
    for (long c : lowToHigh) p.add_term({e++}, Rational(c));
    return p;
}

} // namespace

ExampleN4 build_example_n4()
{
    const std::size_t n = 4;
    Poly x1 = poly_var(n, 0), x2 = poly_var(n, 1), x3 = poly_var(n, 2), x4 = poly_var(n, 3);
    auto C = [&](const char* v) { return poly_constant(n, parse_rational(v)); };

    Poly P3 = 5 * x3 * (8427 * x4 + 9430) - 209 * (3 * x4 * (393 * x4 + 880) + 1478);
    Poly P2 = 5538425 * x3 * x3 + 18810 * (1445 * x2 + 5718 * x4 + 6421) * x3 -
              786258 * (3 * x4 * (267 * x4 + 598) + 1004);
    Poly P1 = 2299 * (205346285 * x3 - 38 * (63526809 * x4 + 35594957)) -
              5 * (C("-2045057058") * x2 * x2 + 1630827 * (1813 * x3 + 1254 * x4) * x2 +
                   C("2891872832") * x3 * x3 + C("495958966272") * x4 * x4 +
                   4892481 * x1 * (1254 * x2 - 1429 * x3 - 418) - C("87093628743") * x3 * x4);
    Poly P0 = (627 * x1 + 627 * x2 - 46 * x3 + 1881 * (x4 + 1)) *
              (5016 * x1 + 6270 * x2 + 2555 * x3 - 3762 * (4 * x4 + 5));

    ExampleN4 ex;
    ex.P = {P0, P1, P2, P3};

    QuadraticModel& m = ex.build.model;
    m.n = n;
    m.aForms = {row({"627", "627", "-46", "1881", "1881"}),
                row({"426360", "106590", "-90565", "165528", "41382"}),
                row({"28215", "9405", "-5435", "11913", "3971"}),
                row({"159885", "351747", "8033", "-84645", "-186219"})};
    m.bForms = {row({"5016", "6270", "2555", "-15048", "-18810"}),
                row({"373065", "1225785", "-304690", "-144837", "-475893"}),
                row({"112860", "319770", "-46945", "-47652", "-135014"}),
                row({"127908", "63954", "-16249", "67716", "33858"})};
    m.coefMatrix = {row({"1", "0", "0", "0"}),
                    row({"4096575/44", "-9801/1612", "208658/341", "-810/13"}),
                    row({"65025/2816", "45/103168", "-2601/152768", "-25/5824"}),
                    row({"21675/2354176", "-3/7840768", "289/6721792", "-25/4868864"})};

    TriangularMap& map = ex.build.map;
    map.n = n;
    map.M = 1;
    map.order = {0, 1, 2, 3};
    for (std::size_t k = 0; k < 3; ++k) map.stages.push_back(stage_from_poly(ex.P[k + 1], k));
    map.P0 = P0;
    map.validate();
    ex.build.family = "n4";
    ex.build.stageRows = {1, 2, 3};
    ex.build.attempts = 1;

    const char* roots[] = {"86/69",     "800/681",   "122/105",   "3166/2775", "140/123",  "718/633",
                           "2452/2163", "5558/4929", "2578/2289", "152/135",   "1070/951", "3932/3507",
                           "158/141",   "2072/1851", "1142/1023", "218/201"};
    for (const char* r : roots) ex.closed.taus.push_back(-parse_rational(r));
    ex.closed.Q1 = univariate({9430, 8427});
    ex.closed.Q2 = univariate({1478, 2640, 1179});
    Poly t = poly_var(1, 0);
    auto K = [](const char* v) { return poly_constant(1, parse_rational(v)); };
    ex.closed.Q3 = 3 * t * (9 * t * (7 * t * (K("5367293625") * t + K("24273841402")) + K("288165964484")) +
                            K("1954792734568")) +
                   K("1657527934720");
    return ex;
}

Rational closed_form_value(const ClosedForm& cf, const Rational& tau)
{
    Rational num = 1;
    for (const auto& t : cf.taus) num *= tau - t;
    Vector pt{tau};
    Rational q1 = poly_eval(cf.Q1, pt), q2 = poly_eval(cf.Q2, pt), q3 = poly_eval(cf.Q3, pt);
    Rational den = q1 * q1 * q2 * q2 * q3 * q3;
    if (is_zero(den)) throw ZeroDenominator("closed form pole");
    return num / den;
}

} // namespace vf
