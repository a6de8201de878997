#pragma once

#include "vfactor/exact.hpp"

#include <memory>
#include <variant>

namespace vf {

class Modulus {
public:
    explicit Modulus(BigInt c);
    const BigInt& value() const { return c_; }

private:
    BigInt c_;
};

// Residue in [0, c) bound to a modulus that must outlive it.
struct ModElement {
    BigInt value;
    const Modulus* mod = nullptr;
};

ModElement make_mod(const BigInt& v, const Modulus& m);
inline bool is_zero(const ModElement& a) { return a.value == 0; }
bool operator==(const ModElement& a, const ModElement& b);
ModElement operator+(const ModElement& a, const ModElement& b);
ModElement operator-(const ModElement& a, const ModElement& b);
ModElement operator-(const ModElement& a);
ModElement operator*(const ModElement& a, const ModElement& b);
ModElement scale_int(const ModElement& a, long k);

enum class WitnessContext { RingDivision, RationalReduction, PolyGcdLeadingCoef };
const char* to_string(WitnessContext c);

struct DivisionWitness {
    BigInt divisor;
    WitnessContext context = WitnessContext::RingDivision;
};

template <class T>
using OrWitness = std::variant<T, DivisionWitness>;

OrWitness<ModElement> mod_inverse(const ModElement& b);
OrWitness<ModElement> mod_div(const ModElement& a, const ModElement& b);
OrWitness<ModElement> reduce_rational_mod(const Rational& r, const Modulus& m);

enum class ClassKind { Unit, TrivialAll, Factor };
const char* to_string(ClassKind k);

struct Classification {
    ClassKind kind = ClassKind::Unit;
    BigInt factor; // set when kind == Factor
};

Classification gcd_extract(const BigInt& m, const BigInt& c);

using ModPoly = SparsePoly<ModElement>;
// Coefficientwise reduction; a coefficient whose denominator is not a unit
// yields the witness.
OrWitness<ModPoly> reduce_poly_mod(const Poly& p, const Modulus& m);
ModElement mod_poly_eval(const ModPoly& p, const std::vector<ModElement>& point, const Modulus& m);

// Dense univariate polynomial with integer coefficients, lowest degree first.
using IntPoly = std::vector<BigInt>;

// (Z/cZ)[X] / (P_I) with P_I monic of degree k0 >= 1.
class QuotientRing {
public:
    QuotientRing(const Modulus& m, IntPoly monic);
    const Modulus& modulus() const { return *mod_; }
    const IntPoly& modulus_poly() const { return pi_; }
    std::size_t degree() const { return pi_.size() - 1; }

private:
    const Modulus* mod_;
    IntPoly pi_;
};

struct QuotientPolyElement {
    std::vector<ModElement> coefs; // length k0
    const QuotientRing* ring = nullptr;
};

QuotientPolyElement qp_zero(const QuotientRing& R);
QuotientPolyElement qp_from_scalar(const QuotientRing& R, const ModElement& a);
QuotientPolyElement qp_from_coefs(const QuotientRing& R, const std::vector<BigInt>& coefs);
bool is_zero(const QuotientPolyElement& a);
QuotientPolyElement operator+(const QuotientPolyElement& a, const QuotientPolyElement& b);
QuotientPolyElement operator-(const QuotientPolyElement& a, const QuotientPolyElement& b);
QuotientPolyElement operator*(const QuotientPolyElement& a, const QuotientPolyElement& b);
QuotientPolyElement operator*(const ModElement& s, const QuotientPolyElement& a);
// Inverse via the extended Euclidean algorithm on (P_I, a) over Z/cZ.
OrWitness<QuotientPolyElement> qp_inverse(const QuotientPolyElement& a);

std::variant<Classification, DivisionWitness>
quotient_poly_gcd(const QuotientPolyElement& m, const IntPoly& pi, const Modulus& c);

} // namespace vf
