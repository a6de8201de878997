#pragma once

#include "vfactor/variety.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <functional>
#include <random>

namespace vf {

using Real = boost::multiprecision::cpp_bin_float_quad;
using RealFn = std::function<Real(const Real&)>;

std::string to_string(const Real& x, int digits = 20);

struct ComplexityInputs {
    Real p = 2;
    unsigned k0 = 1;
    unsigned M = 1;
    Real NP = 1;
};

// 2[1 - (1-p^{-k0 M})^{N_P}](1-p^{-k0 M})^{N_P}, in log space.
Real success_probability(const ComplexityInputs& in);
// Same with the exponent k0*M replaced by a real f.
Real success_probability(const Real& p, const Real& f, const Real& NP);
// 1 / (1 - (1-p^{-k0 M})^{N_P})
Real trials_estimate(const ComplexityInputs& in);

enum class OptimumStatus { Interior, NoInteriorOptimum };
const char* to_string(OptimumStatus s);

struct XiResult {
    Real xi0 = 0;
    OptimumStatus status = OptimumStatus::Interior;
    Real residual = 0;
    unsigned iterations = 0;
    bool bisected = false;
};

// k0 M log p + log log 2
Real xi0_expansion(const Real& p, unsigned k0, unsigned M);
XiResult optimal_log_np(const Real& p, unsigned k0, unsigned M);
// f(xi) = k0(xi) M(xi); values below 1 are clamped to 1.
XiResult optimal_log_np(const Real& p, const RealFn& f);

struct CostReport {
    XiResult xi0;
    Real c0AtXi0 = 0;
    Real xiMin = 0;
    Real costMin = 0;
    Real lower = 0;  // 0.72 C0(xi0)
    Real upper = 0;  // 2 C0(xi0)
    bool sandwich = false;
};

// C(p, xi) = C0(xi) / Pr_succ(p, f(xi), e^xi)
Real map_cost(const Real& p, const RealFn& C0, const RealFn& f, const Real& xi);
CostReport minimize_cost(const Real& p, const RealFn& C0, const RealFn& f);

enum class Scenario {
    PolyPoly,      // C0 ~ xi^alpha, f ~ xi^beta
    PolyNearLinear,// C0 polynomial, f ~ xi / (log xi)^beta
    ExpPoly        // C0 ~ exp(b xi^alpha), f ~ xi^beta
};
enum class ComplexityClass { Polynomial, Subexponential, NotSubexponential };
const char* to_string(ComplexityClass c);

struct LitmusResult {
    ComplexityClass cls = ComplexityClass::NotSubexponential;
    double exponent = 0;  // power of log p (Polynomial) or of log p inside exp (Subexponential)
    std::string label;
};

LitmusResult litmus(Scenario s, double alpha, double beta);

// a + b sqrt(q)
struct Surd {
    Rational a = 0, b = 0;
    BigInt q = 0;
    long double value() const;
};
std::string to_string(const Surd& s);

struct GenusBounds {
    Surd lower, upper;   // (q+1) -/+ 2g sqrt q
};
GenusBounds bound_genus(const BigInt& q, unsigned g);
// With delta singularities counted.
GenusBounds bound_singular(const BigInt& q, unsigned g, unsigned delta);
// q + 1 + (d-1)(d-2) sqrt q
Surd bound_plane(const BigInt& q, unsigned d);
// (q^M - 1)/(q - 1) + [(d-1)^M - (-1)^M](1 - 1/d) q^{(M-1)/2}
Surd bound_hypersurface(const BigInt& q, unsigned d, unsigned M);

struct DegreeBound {
    Rational exponent;   // 2M^2/(M+1)
    Real dPower;         // d^exponent; the bound is K * dPower
};
DegreeBound bound_degree(unsigned d, unsigned M);

// Largest N_P compatible with q^M [1 - (1 - q^{-M})^{N_P}] <= Nq; infinite when Nq >= q^M.
Real np_upper_bound(const Real& q, unsigned M, const Real& Nq);

struct CountReport {
    BigInt q;
    std::uint64_t curvePoints = 0;
    std::uint64_t numeratorZeros = 0;
    std::uint64_t witnessCount = 0;
    std::uint64_t total = 0;
};

CountReport count_points_bruteforce(const TriangularMap& map, const BigInt& q, unsigned threads = 0);

// Homogeneous plane curve F(X,Y,Z) = sum c_{ij} X^i Y^j Z^{d-i-j} over F_q.
struct PlaneCurve {
    unsigned q = 0, d = 0;
    std::vector<std::vector<unsigned>> c;  // c[i][j], i + j <= d

    unsigned coef(unsigned i, unsigned j) const { return c[i][j]; }
};

PlaneCurve plane_curve_from_poly(const Poly& f, unsigned q);  // f(x, y) affine, integer coefficients
std::uint64_t count_projective_points(const PlaneCurve& f);
// True when F has a factor of degree 1 or 2 over F_q (decides reducibility for d <= 4).
bool has_low_degree_factor(const PlaneCurve& f);
// Uniformly random degree-d curve, resampled until no factor of degree <= 2 remains.
PlaneCurve random_plane_curve(unsigned q, unsigned d, std::mt19937_64& rng);

} // namespace vf
