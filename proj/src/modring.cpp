#include "vfactor/modring.hpp"

#include <cassert>

namespace vf {

namespace {

BigInt reduce(const BigInt& v, const BigInt& c)
{
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    return r;
}

const Modulus& common(const ModElement& a, const ModElement& b)
{
    assert(a.mod && b.mod);
    if (a.mod != b.mod && a.mod->value() != b.mod->value())
        throw ArityError("residues modulo different moduli");
    return *a.mod;
}

} // namespace

Modulus::Modulus(BigInt c) : c_(std::move(c))
{
    if (c_ < 2) throw InvalidModulus("modulus must be at least 2");
}

ModElement make_mod(const BigInt& v, const Modulus& m) { return {reduce(v, m.value()), &m}; }

bool operator==(const ModElement& a, const ModElement& b) { return a.value == b.value; }

ModElement operator+(const ModElement& a, const ModElement& b)
{
    const Modulus& m = common(a, b);
    BigInt r = a.value + b.value;
    if (r >= m.value()) r -= m.value();
    return {r, &m};
}

ModElement operator-(const ModElement& a, const ModElement& b)
{
    const Modulus& m = common(a, b);
    BigInt r = a.value - b.value;
    if (r < 0) r += m.value();
    return {r, &m};
}

ModElement operator-(const ModElement& a)
{
    if (a.value == 0) return a;
    return {a.mod->value() - a.value, a.mod};
}

ModElement operator*(const ModElement& a, const ModElement& b)
{
    const Modulus& m = common(a, b);
    BigInt r = a.value * b.value;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.value().get_mpz_t());
    return {r, &m};
}

ModElement scale_int(const ModElement& a, long k) { return make_mod(a.value * k, *a.mod); }

const char* to_string(WitnessContext c)
{
    switch (c) {
    case WitnessContext::RingDivision: return "RingDivision";
    case WitnessContext::RationalReduction: return "RationalReduction";
    case WitnessContext::PolyGcdLeadingCoef: return "PolyGcdLeadingCoef";
    }
    return "?";
}

OrWitness<ModElement> mod_inverse(const ModElement& b)
{
    const BigInt& c = b.mod->value();
    BigInt g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b.value.get_mpz_t(), c.get_mpz_t());
    if (g != 1) {
        DivisionWitness w{b.value, WitnessContext::RingDivision};
        assert(w.divisor == 0 || g > 1);
        return w;
    }
    return make_mod(s, *b.mod);
}

OrWitness<ModElement> mod_div(const ModElement& a, const ModElement& b)
{
    common(a, b);
    auto inv = mod_inverse(b);
    if (auto* w = std::get_if<DivisionWitness>(&inv)) return *w;
    return a * std::get<ModElement>(inv);
}

OrWitness<ModElement> reduce_rational_mod(const Rational& r, const Modulus& m)
{
    ModElement den = make_mod(r.get_den(), m);
    auto inv = mod_inverse(den);
    if (auto* w = std::get_if<DivisionWitness>(&inv))
        return DivisionWitness{w->divisor, WitnessContext::RationalReduction};
    return make_mod(r.get_num(), m) * std::get<ModElement>(inv);
}

const char* to_string(ClassKind k)
{
    switch (k) {
    case ClassKind::Unit: return "Unit";
    case ClassKind::TrivialAll: return "TrivialAll";
    case ClassKind::Factor: return "Factor";
    }
    return "?";
}

Classification gcd_extract(const BigInt& m, const BigInt& c)
{
    if (c < 2) throw InvalidModulus("modulus must be at least 2");
    BigInt a = abs(m);
    a %= c;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return {ClassKind::Unit, 0};
    if (g == c) return {ClassKind::TrivialAll, 0};
    assert(c % g == 0);
    return {ClassKind::Factor, g};
}

OrWitness<ModPoly> reduce_poly_mod(const Poly& p, const Modulus& m)
{
    ModPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        auto v = reduce_rational_mod(c, m);
        if (auto* w = std::get_if<DivisionWitness>(&v)) return *w;
        r.add_term(e, std::get<ModElement>(v));
    }
    return r;
}

ModElement mod_poly_eval(const ModPoly& p, const std::vector<ModElement>& point, const Modulus& m)
{
    return poly_eval(p, point, make_mod(0, m));
}

} // namespace vf
