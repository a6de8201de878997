#include "vfactor/analysis.hpp"

#include <cmath>
#include <limits>
#include <thread>

namespace vf {

namespace {

const Real& ln2()
{
    static const Real v = log(Real(2));
    return v;
}

// log(-log 2 / log(1 - p^{-f})), switching to its series when p^{-f} underflows.
Real xi_map(const Real& logp, const Real& f)
{
    Real t = f * logp;
    Real x = exp(-t);
    if (x < Real("1e-30")) return t + log(ln2()) - x / 2;
    return log(-ln2() / log1p(-x));
}

Real clamp_f(const RealFn& f, const Real& xi)
{
    Real v = f(xi);
    return v < 1 ? Real(1) : v;
}

} // namespace

std::string to_string(const Real& x, int digits)
{
    return x.str(digits);
}

Real success_probability(const Real& p, const Real& f, const Real& NP)
{
    if (NP <= 0) return 0;
    Real x = exp(-f * log(p));
    if (x >= 1) return 0;
    Real L = NP * log1p(-x);
    return -2 * expm1(L) * exp(L);
}

Real success_probability(const ComplexityInputs& in)
{
    return success_probability(in.p, Real(in.k0 * in.M), in.NP);
}

Real trials_estimate(const ComplexityInputs& in)
{
    Real x = exp(-Real(in.k0 * in.M) * log(in.p));
    Real L = in.NP * log1p(-x);
    return 1 / (-expm1(L));
}

const char* to_string(OptimumStatus s)
{
    return s == OptimumStatus::Interior ? "Interior" : "NoInteriorOptimum";
}

Real xi0_expansion(const Real& p, unsigned k0, unsigned M)
{
    return Real(k0 * M) * log(p) + log(ln2());
}

XiResult optimal_log_np(const Real& p, unsigned k0, unsigned M)
{
    Real f = k0 * M;
    return optimal_log_np(p, [f](const Real&) { return f; });
}

XiResult optimal_log_np(const Real& p, const RealFn& f)
{
    const Real logp = log(p);
    auto h = [&](const Real& xi) { return xi_map(logp, clamp_f(f, xi)) - xi; };
    const Real tol("1e-28");
    XiResult r;

    Real xi = clamp_f(f, Real(1)) * logp + log(ln2());
    Real omega = 1;
    Real prev = abs(h(xi));
    for (r.iterations = 1; r.iterations <= 400; ++r.iterations) {
        Real step = h(xi);
        if (abs(step) < tol * (1 + abs(xi))) break;
        Real next = xi + omega * step;
        Real now = abs(h(next));
        if (next <= 0 || now > prev) {
            omega /= 2;
            if (omega < Real("1e-12")) break;
            continue;
        }
        xi = next;
        prev = now;
    }
    if (xi > 0 && abs(h(xi)) < Real("1e-20") * (1 + abs(xi))) {
        r.xi0 = xi;
        r.residual = abs(h(xi));
        return r;
    }

    // h > 0 near 0 since f >= 1; look for the first downward crossing.
    r.bisected = true;
    Real lo = Real("1e-6"), hi = lo;
    bool found = false;
    while (hi < Real("1e7")) {
        Real nx = hi * Real("1.25");
        if (h(lo) > 0 && h(nx) <= 0) {
            hi = nx;
            found = true;
            break;
        }
        lo = nx;
        hi = nx;
    }
    if (!found) {
        r.status = OptimumStatus::NoInteriorOptimum;
        r.xi0 = 0;
        r.residual = 0;
        return r;
    }
    for (int it = 0; it < 400 && hi - lo > tol * hi; ++it) {
        Real mid = (lo + hi) / 2;
        (h(mid) > 0 ? lo : hi) = mid;
    }
    r.xi0 = (lo + hi) / 2;
    r.residual = abs(h(r.xi0));
    return r;
}

Real map_cost(const Real& p, const RealFn& C0, const RealFn& f, const Real& xi)
{
    Real pr = success_probability(p, clamp_f(f, xi), exp(xi));
    if (pr <= 0) return std::numeric_limits<Real>::infinity();
    return C0(xi) / pr;
}

CostReport minimize_cost(const Real& p, const RealFn& C0, const RealFn& f)
{
    CostReport rep;
    rep.xi0 = optimal_log_np(p, f);
    Real ref = rep.xi0.xi0;
    rep.c0AtXi0 = C0(ref);
    rep.lower = Real("0.72") * rep.c0AtXi0;
    rep.upper = 2 * rep.c0AtXi0;

    Real top = ref > 5 ? 3 * ref : Real(15);
    const int grid = 3000;
    Real best = std::numeric_limits<Real>::infinity(), bestXi = 0;
    for (int i = 1; i <= grid; ++i) {
        Real xi = top * i / grid;
        Real c = map_cost(p, C0, f, xi);
        if (c < best) {
            best = c;
            bestXi = xi;
        }
    }
    Real a = bestXi - top / grid, b = bestXi + top / grid;
    if (a <= 0) a = top / grid / 1000;
    const Real g = (sqrt(Real(5)) - 1) / 2;
    Real x1 = b - g * (b - a), x2 = a + g * (b - a);
    Real f1 = map_cost(p, C0, f, x1), f2 = map_cost(p, C0, f, x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - g * (b - a);
            f1 = map_cost(p, C0, f, x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + g * (b - a);
            f2 = map_cost(p, C0, f, x2);
        }
    }
    Real xm = (a + b) / 2, cm = map_cost(p, C0, f, xm);
    if (cm < best) {
        best = cm;
        bestXi = xm;
    }
    rep.xiMin = bestXi;
    rep.costMin = best;
    rep.sandwich = rep.lower <= best && best <= rep.upper;
    return rep;
}

const char* to_string(ComplexityClass c)
{
    switch (c) {
    case ComplexityClass::Polynomial: return "polynomial";
    case ComplexityClass::Subexponential: return "subexponential";
    case ComplexityClass::NotSubexponential: return "not-subexponential";
    }
    return "?";
}

LitmusResult litmus(Scenario s, double alpha, double beta)
{
    LitmusResult r;
    char buf[128];
    switch (s) {
    case Scenario::PolyPoly:
        if (beta >= 0 && beta < 1) {
            r.cls = ComplexityClass::Polynomial;
            r.exponent = alpha / (1 - beta);
            std::snprintf(buf, sizeof buf, "(log p)^%g", r.exponent);
            r.label = buf;
        }
        break;
    case Scenario::PolyNearLinear:
        if (beta > 1) {
            r.cls = ComplexityClass::Subexponential;
            r.exponent = 1 / beta;
            std::snprintf(buf, sizeof buf, "exp[b (log p)^%g]", r.exponent);
            r.label = buf;
        }
        break;
    case Scenario::ExpPoly:
        if (alpha > 0 && beta >= 0 && alpha + beta < 1) {
            r.cls = ComplexityClass::Subexponential;
            r.exponent = alpha / (1 - beta);
            std::snprintf(buf, sizeof buf, "exp[b (log p)^%g]", r.exponent);
            r.label = buf;
        }
        break;
    }
    if (r.label.empty()) r.label = "fails the litmus test";
    return r;
}

long double Surd::value() const
{
    return a.get_d() + b.get_d() * std::sqrt(static_cast<long double>(q.get_d()));
}

std::string to_string(const Surd& s)
{
    if (is_zero(s.b)) return to_string(s.a);
    return to_string(s.a) + (sgn(s.b) < 0 ? " - " : " + ") + to_string(Rational(abs(s.b))) + "*sqrt(" +
           to_string(s.q) + ")";
}

GenusBounds bound_genus(const BigInt& q, unsigned g)
{
    return bound_singular(q, g, 0);
}

GenusBounds bound_singular(const BigInt& q, unsigned g, unsigned delta)
{
    GenusBounds r;
    Rational base = Rational(q + 1);
    r.lower = {base - delta, Rational(-2 * long(g)), q};
    r.upper = {base + delta, Rational(2 * long(g)), q};
    return r;
}

Surd bound_plane(const BigInt& q, unsigned d)
{
    if (d < 1) throw ArityError("degree must be positive");
    long g2 = long(d - 1) * long(d - 2);
    return {Rational(q + 1), Rational(g2), q};
}

Surd bound_hypersurface(const BigInt& q, unsigned d, unsigned M)
{
    if (d < 1 || M < 1) throw ArityError("degree and dimension must be positive");
    BigInt qM, dm;
    mpz_pow_ui(qM.get_mpz_t(), q.get_mpz_t(), M);
    BigInt d1 = d - 1;
    mpz_pow_ui(dm.get_mpz_t(), d1.get_mpz_t(), M);
    BigInt t = dm - (M % 2 ? BigInt(-1) : BigInt(1));
    Rational coef = Rational(t) * (1 - Rational(1, d));
    Surd s{Rational(qM - 1, q - 1), 0, q};
    s.a.canonicalize();
    BigInt h;
    if ((M - 1) % 2 == 0) {
        mpz_pow_ui(h.get_mpz_t(), q.get_mpz_t(), (M - 1) / 2);
        s.a += coef * h;
    } else {
        mpz_pow_ui(h.get_mpz_t(), q.get_mpz_t(), (M - 2) / 2);
        s.b = coef * h;
    }
    return s;
}

DegreeBound bound_degree(unsigned d, unsigned M)
{
    DegreeBound b;
    b.exponent = Rational(2 * long(M) * long(M), long(M) + 1);
    b.exponent.canonicalize();
    Real e = Real(b.exponent.get_num().get_si()) / Real(b.exponent.get_den().get_si());
    b.dPower = pow(Real(d), e);
    return b;
}

Real np_upper_bound(const Real& q, unsigned M, const Real& Nq)
{
    Real qM = pow(q, M);
    if (Nq >= qM) return std::numeric_limits<Real>::infinity();
    return log1p(-Nq / qM) / log1p(-1 / qM);
}

CountReport count_points_bruteforce(const TriangularMap& map, const BigInt& q, unsigned threads)
{
    if (q < 2) throw InvalidModulus("q must be at least 2");
    BigInt total = 1;
    for (std::size_t j = 0; j < map.M; ++j) total *= q;
    if (total > 10000000) throw BudgetExceeded("q^M exceeds the enumeration budget of 1e7");
    Modulus mod(q);
    ReducedMap rm(map, mod);
    const std::uint64_t N = total.get_ui();
    const std::uint64_t qq = q.get_ui();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(N, 1)));

    struct Tally { std::uint64_t done = 0, zeros = 0, wit = 0; };
    std::vector<Tally> parts(threads);
    auto work = [&](unsigned t) {
        std::uint64_t lo = N * t / threads, hi = N * (t + 1) / threads;
        std::vector<BigInt> tau(map.M);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            std::uint64_t v = idx;
            for (std::size_t j = map.M; j-- > 0;) {
                tau[j] = static_cast<unsigned long>(v % qq);
                v /= qq;
            }
            EvalOutcome o = rm.eval(tau);
            if (o.kind == OutcomeKind::Witness) {
                ++parts[t].wit;
            } else {
                ++parts[t].done;
                if (o.value == 0) ++parts[t].zeros;
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    CountReport r;
    r.q = q;
    r.total = N;
    for (const auto& p : parts) {
        r.curvePoints += p.done;
        r.numeratorZeros += p.zeros;
        r.witnessCount += p.wit;
    }
    return r;
}

} // namespace vf
