#include "vfactor/modring.hpp"

namespace vf {

namespace {

using Residues = std::vector<BigInt>;

void trim(Residues& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Residues to_residues(const std::vector<ModElement>& v)
{
    Residues r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(x.value);
    trim(r);
    return r;
}

BigInt mulmod(const BigInt& a, const BigInt& b, const BigInt& c)
{
    BigInt r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t());
    return r;
}

BigInt submod(const BigInt& a, const BigInt& b, const BigInt& c)
{
    BigInt r = a - b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t());
    return r;
}

// Inverse of the unit u modulo c, or the witness when u is not a unit.
std::variant<BigInt, DivisionWitness> invert_lead(const BigInt& u, const BigInt& c)
{
    BigInt g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), u.get_mpz_t(), c.get_mpz_t());
    if (g != 1) return DivisionWitness{u, WitnessContext::PolyGcdLeadingCoef};
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), c.get_mpz_t());
    return s;
}

// a = q*b + r over Z/cZ; b must be nonzero with invertible leading coefficient.
void divmod(const Residues& a, const Residues& b, const BigInt& binv, const BigInt& c, Residues& q,
            Residues& r)
{
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, BigInt(0));
    while (r.size() >= b.size() && !r.empty()) {
        std::size_t shift = r.size() - b.size();
        BigInt f = mulmod(r.back(), binv, c);
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            r[shift + i] = submod(r[shift + i], mulmod(f, b[i], c), c);
        r.pop_back();
        trim(r);
    }
    trim(q);
}

Residues mul(const Residues& a, const Residues& b, const BigInt& c)
{
    if (a.empty() || b.empty()) return {};
    Residues r(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& x : r) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    trim(r);
    return r;
}

Residues sub(const Residues& a, const Residues& b, const BigInt& c)
{
    Residues r(std::max(a.size(), b.size()), BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = submod(r[i], b[i], c);
    trim(r);
    return r;
}

QuotientPolyElement from_residues(const QuotientRing& R, const Residues& v)
{
    // reduce modulo the monic P_I
    Residues r = v;
    const IntPoly& pi = R.modulus_poly();
    const BigInt& c = R.modulus().value();
    std::size_t k0 = R.degree();
    while (r.size() > k0) {
        std::size_t shift = r.size() - 1 - k0;
        BigInt f = r.back();
        for (std::size_t i = 0; i <= k0; ++i) r[shift + i] = submod(r[shift + i], mulmod(f, pi[i], c), c);
        r.pop_back();
    }
    QuotientPolyElement out{{}, &R};
    out.coefs.reserve(k0);
    for (std::size_t i = 0; i < k0; ++i) out.coefs.push_back(make_mod(i < r.size() ? r[i] : BigInt(0), R.modulus()));
    return out;
}

Residues reduced_pi(const QuotientRing& R)
{
    Residues p;
    for (const auto& x : R.modulus_poly()) {
        BigInt v = x;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), R.modulus().value().get_mpz_t());
        p.push_back(v);
    }
    trim(p);
    return p;
}

} // namespace

QuotientRing::QuotientRing(const Modulus& m, IntPoly monic) : mod_(&m), pi_(std::move(monic))
{
    if (pi_.size() < 2) throw ArityError("modulus polynomial must have degree at least 1");
    if (pi_.back() != 1) throw ArityError("modulus polynomial must be monic");
}

QuotientPolyElement qp_zero(const QuotientRing& R)
{
    return from_residues(R, {});
}

QuotientPolyElement qp_from_scalar(const QuotientRing& R, const ModElement& a)
{
    return from_residues(R, {a.value});
}

QuotientPolyElement qp_from_coefs(const QuotientRing& R, const std::vector<BigInt>& coefs)
{
    Residues r;
    for (const auto& x : coefs) r.push_back(make_mod(x, R.modulus()).value);
    trim(r);
    return from_residues(R, r);
}

bool is_zero(const QuotientPolyElement& a)
{
    for (const auto& x : a.coefs)
        if (x.value != 0) return false;
    return true;
}

QuotientPolyElement operator+(const QuotientPolyElement& a, const QuotientPolyElement& b)
{
    QuotientPolyElement r = a;
    for (std::size_t i = 0; i < r.coefs.size(); ++i) r.coefs[i] = a.coefs[i] + b.coefs[i];
    return r;
}

QuotientPolyElement operator-(const QuotientPolyElement& a, const QuotientPolyElement& b)
{
    QuotientPolyElement r = a;
    for (std::size_t i = 0; i < r.coefs.size(); ++i) r.coefs[i] = a.coefs[i] - b.coefs[i];
    return r;
}

QuotientPolyElement operator*(const QuotientPolyElement& a, const QuotientPolyElement& b)
{
    const BigInt& c = a.ring->modulus().value();
    return from_residues(*a.ring, mul(to_residues(a.coefs), to_residues(b.coefs), c));
}

QuotientPolyElement operator*(const ModElement& s, const QuotientPolyElement& a)
{
    QuotientPolyElement r = a;
    for (auto& x : r.coefs) x = s * x;
    return r;
}

OrWitness<QuotientPolyElement> qp_inverse(const QuotientPolyElement& a)
{
    const QuotientRing& R = *a.ring;
    const BigInt& c = R.modulus().value();
    Residues r0 = reduced_pi(R), r1 = to_residues(a.coefs);
    if (r1.empty()) return DivisionWitness{0, WitnessContext::PolyGcdLeadingCoef};
    Residues s0, s1 = {1};
    while (!r1.empty()) {
        auto inv = invert_lead(r1.back(), c);
        if (auto* w = std::get_if<DivisionWitness>(&inv)) return *w;
        Residues q, rem;
        divmod(r0, r1, std::get<BigInt>(inv), c, q, rem);
        Residues s2 = sub(s0, mul(q, s1, c), c);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) {
        // a shares a nonconstant factor with P_I modulo c; no divisor surfaced.
        return DivisionWitness{0, WitnessContext::PolyGcdLeadingCoef};
    }
    auto ginv = invert_lead(r0[0], c);
    if (auto* w = std::get_if<DivisionWitness>(&ginv)) return *w;
    QuotientPolyElement s = from_residues(R, s0);
    return make_mod(std::get<BigInt>(ginv), R.modulus()) * s;
}

std::variant<Classification, DivisionWitness>
quotient_poly_gcd(const QuotientPolyElement& m, const IntPoly& pi, const Modulus& cm)
{
    const BigInt& c = cm.value();
    if (is_zero(m)) return Classification{ClassKind::TrivialAll, 0};
    Residues a;
    for (const auto& x : pi) a.push_back(make_mod(x, cm).value);
    trim(a);
    Residues b = to_residues(m.coefs);
    while (!b.empty()) {
        auto inv = invert_lead(b.back(), c);
        if (auto* w = std::get_if<DivisionWitness>(&inv)) return *w;
        Residues q, rem;
        divmod(a, b, std::get<BigInt>(inv), c, q, rem);
        a = std::move(b);
        b = std::move(rem);
    }
    bool all_trivial = true;
    for (const auto& x : m.coefs) {
        Classification k = gcd_extract(x.value, c);
        if (k.kind == ClassKind::Factor) return k;
        if (k.kind != ClassKind::TrivialAll) all_trivial = false;
    }
    return Classification{all_trivial ? ClassKind::TrivialAll : ClassKind::Unit, 0};
}

} // namespace vf
