#include "vfactor/exact.hpp"

#include <numeric>

namespace vf {

Rational rational_normalize(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw ZeroDenominator("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text)
{
    auto slash = text.find('/');
    BigInt num, den = 1;
    try {
        if (slash == std::string::npos) {
            num = BigInt(text);
        } else {
            num = BigInt(text.substr(0, slash));
            den = BigInt(text.substr(slash + 1));
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("not a rational: '" + text + "'");
    }
    return rational_normalize(num, den);
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool GrLexLess::operator()(const Exponent& a, const Exponent& b) const
{
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    // Among equal degree, the exponent with the larger x_1 power ranks higher.
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly poly_constant(std::size_t nvars, const Rational& c)
{
    Poly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Poly poly_var(std::size_t nvars, std::size_t k)
{
    if (k >= nvars) throw ArityError("variable index out of range");
    Exponent e(nvars, 0);
    e[k] = 1;
    Poly p(nvars);
    p.add_term(e, Rational(1));
    return p;
}

Poly operator*(const Rational& s, const Poly& p) { return p.scaled(s); }
Poly operator*(long s, const Poly& p) { return p.scaled(Rational(s)); }
Poly operator+(const Poly& p, long s) { return p + poly_constant(p.nvars(), Rational(s)); }
Poly operator+(long s, const Poly& p) { return p + s; }
Poly operator-(const Poly& p, long s) { return p + (-s); }
Poly operator-(long s, const Poly& p) { return (-p) + s; }

Rational poly_eval(const Poly& p, const Vector& point) { return poly_eval(p, point, Rational(0)); }

Poly poly_substitute(const Poly& p, std::size_t k, const Rational& value)
{
    if (k >= p.nvars()) throw ArityError("substitution index out of range");
    Poly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        Exponent f = e;
        f[k] = 0;
        Rational v = c;
        for (unsigned j = 0; j < e[k]; ++j) v *= value;
        r.add_term(f, v);
    }
    return r;
}

Poly poly_coefficient_in(const Poly& p, std::size_t k, unsigned j)
{
    if (k >= p.nvars()) throw ArityError("variable index out of range");
    Poly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (e[k] != j) continue;
        Exponent f = e;
        f[k] = 0;
        r.add_term(f, c);
    }
    return r;
}

Poly poly_permute(const Poly& p, const std::vector<std::size_t>& perm)
{
    if (perm.size() != p.nvars()) throw ArityError("permutation length does not match nvars");
    Poly r(p.nvars());
    Exponent f(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < perm.size(); ++i) f[i] = e[perm[i]];
        r.add_term(f, c);
    }
    return r;
}

Poly linear_form(const Vector& coeffs)
{
    if (coeffs.empty()) throw ArityError("linear form needs at least the constant entry");
    std::size_t n = coeffs.size() - 1;
    Poly p = poly_constant(n, coeffs[n]);
    for (std::size_t i = 0; i < n; ++i) {
        Exponent e(n, 0);
        e[i] = 1;
        p.add_term(e, coeffs[i]);
    }
    return p;
}

Rational primitive_scale(const std::vector<const Poly*>& polys)
{
    BigInt lcm_den = 1;
    for (const Poly* p : polys)
        for (const auto& [e, c] : p->terms())
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    BigInt g = 0;
    for (const Poly* p : polys) {
        for (const auto& [e, c] : p->terms()) {
            BigInt v = lcm_den / c.get_den() * c.get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
    }
    if (g == 0) return Rational(1);
    return rational_normalize(lcm_den, g);
}

bool has_integer_coefficients(const Poly& p)
{
    for (const auto& [e, c] : p.terms())
        if (c.get_den() != 1) return false;
    return true;
}

} // namespace vf
