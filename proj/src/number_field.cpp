#include "vfactor/factor.hpp"

namespace vf {

void NumberFieldMap::validate() const
{
    if (PI.size() < 2 || PI.back() != 1) throw ArityError("P_I must be monic of degree >= 1");
    if (M < 1 || M >= n) throw ArityError("need 1 <= M < n");
    if (stages.size() != n - M) throw ArityError("stage count must be n - M");
    auto check = [&](const ComponentPoly& p, const char* what) {
        if (p.size() != k0()) throw ArityError(std::string(what) + " must have k0 components");
        for (const auto& c : p)
            if (c.nvars() != n) throw ArityError(std::string(what) + " has wrong arity");
    };
    check(P0, "P0");
    for (std::size_t k = 0; k < stages.size(); ++k) {
        check(stages[k].N, "stage numerator");
        check(stages[k].D, "stage denominator");
        bool zero = true;
        for (std::size_t j = 0; j < k0(); ++j) {
            zero = zero && stages[k].D[j].empty();
            for (std::size_t v = 0; v <= k; ++v)
                if (stages[k].N[j].degree_in(v) > 0 || stages[k].D[j].degree_in(v) > 0)
                    throw ArityError("stage " + std::to_string(k + 1) + " depends on x_" + std::to_string(v + 1));
        }
        if (zero) throw ArityError("stage " + std::to_string(k + 1) + " has zero denominator");
    }
}

NumberFieldMap lift_to_number_field(const TriangularMap& map, const IntPoly& PI)
{
    NumberFieldMap nf;
    nf.n = map.n;
    nf.M = map.M;
    nf.PI = PI;
    std::size_t k0 = PI.size() - 1;
    auto lift = [&](const Poly& p) {
        ComponentPoly c(k0, Poly(map.n));
        c[0] = p;
        return c;
    };
    for (const auto& s : map.stages) nf.stages.push_back({lift(s.N), lift(s.D)});
    nf.P0 = lift(map.P0);
    nf.validate();
    return nf;
}

namespace {

using Reduced = std::vector<OrWitness<ModPoly>>;

Reduced reduce_components(const ComponentPoly& p, const Modulus& m)
{
    Reduced r;
    for (const auto& c : p) r.push_back(reduce_poly_mod(c, m));
    return r;
}

const DivisionWitness* first_witness(const Reduced& r)
{
    for (const auto& c : r)
        if (auto* w = std::get_if<DivisionWitness>(&c)) return w;
    return nullptr;
}

QuotientPolyElement eval_components(const Reduced& p, const std::vector<QuotientPolyElement>& x,
                                    const QuotientRing& R)
{
    QuotientPolyElement acc = qp_zero(R);
    std::size_t k0 = R.degree();
    for (std::size_t j = 0; j < p.size(); ++j) {
        const ModPoly& comp = std::get<ModPoly>(p[j]);
        if (comp.empty()) continue;
        QuotientPolyElement val = qp_zero(R);
        for (const auto& [e, coef] : comp.terms()) {
            QuotientPolyElement term = qp_from_scalar(R, coef);
            for (std::size_t v = 0; v < e.size(); ++v)
                for (unsigned t = 0; t < e[v]; ++t) term = term * x[v];
            val = val + term;
        }
        std::vector<BigInt> basis(k0, BigInt(0));
        basis[j] = 1;
        acc = acc + qp_from_coefs(R, basis) * val;
    }
    return acc;
}

} // namespace

FactorReport factor_number_field(const BigInt& c, const NumberFieldMap& map, const FactorConfig& cfg)
{
    map.validate();
    Modulus mod(c);
    QuotientRing R(mod, map.PI);
    std::vector<Reduced> N, D;
    for (const auto& s : map.stages) {
        N.push_back(reduce_components(s.N, mod));
        D.push_back(reduce_components(s.D, mod));
    }
    Reduced P0 = reduce_components(map.P0, mod);
    const std::size_t k0 = map.k0(), first = map.n - map.M;

    auto trial = [&](std::uint64_t i) {
        TrialRng rng(cfg.seed, i);
        TrialRecord r;
        r.index = i;
        std::vector<QuotientPolyElement> x(map.n, qp_zero(R));
        for (std::size_t j = 0; j < map.M; ++j) {
            std::vector<BigInt> coefs(k0);
            for (auto& v : coefs) {
                v = rng.below(c);
                r.tau.push_back(v);
            }
            x[first + j] = qp_from_coefs(R, coefs);
        }
        auto witness = [&](const DivisionWitness& w, int stage) {
            r.witness = true;
            r.context = w.context;
            r.stage = stage;
            r.m = w.divisor;
            Classification k = gcd_extract(r.m, c);
            r.cls = k.kind;
            r.factor = k.factor;
            return r;
        };
        for (std::size_t k = first; k-- > 0;) {
            int stage = static_cast<int>(k + 1);
            if (auto* w = first_witness(D[k])) return witness(*w, stage);
            if (auto* w = first_witness(N[k])) return witness(*w, stage);
            auto inv = qp_inverse(eval_components(D[k], x, R));
            if (auto* w = std::get_if<DivisionWitness>(&inv)) return witness(*w, stage);
            x[k] = eval_components(N[k], x, R) * std::get<QuotientPolyElement>(inv);
        }
        if (auto* w = first_witness(P0)) return witness(*w, 0);
        QuotientPolyElement m = eval_components(P0, x, R);
        r.m = 0;
        for (const auto& co : m.coefs)
            if (co.value != 0) {
                r.m = co.value;
                break;
            }
        for (const auto& co : m.coefs) {
            Classification k = gcd_extract(co.value, c);
            if (k.kind == ClassKind::Factor) {
                r.cls = k.kind;
                r.factor = k.factor;
                return r;
            }
        }
        auto g = quotient_poly_gcd(m, map.PI, mod);
        if (auto* w = std::get_if<DivisionWitness>(&g)) {
            r.context = w->context;
            Classification k = gcd_extract(w->divisor, c);
            r.cls = k.kind == ClassKind::Factor ? k.kind : ClassKind::Unit;
            r.factor = k.factor;
            return r;
        }
        r.cls = std::get<Classification>(g).kind;
        r.factor = std::get<Classification>(g).factor;
        return r;
    };
    return run_trials(c, cfg, trial, k0 == 1 ? "variety" : "number-field");
}

} // namespace vf
