#include "vfactor/variety.hpp"

#include <algorithm>
#include <numeric>

namespace vf {

void TriangularMap::validate() const
{
    if (M < 1 || M >= n) throw ArityError("need 1 <= M < n");
    if (stages.size() != n - M) throw ArityError("stage count must be n - M");
    if (order.size() != n) throw ArityError("order must list n coordinates");
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
        if (sorted[i] != i) throw ArityError("order is not a permutation");
    if (P0.nvars() != n) throw ArityError("P0 has wrong arity");
    for (std::size_t k = 0; k < stages.size(); ++k) {
        const Stage& s = stages[k];
        if (s.N.nvars() != n || s.D.nvars() != n) throw ArityError("stage polynomial has wrong arity");
        if (s.D.empty()) throw ArityError("stage " + std::to_string(k + 1) + " has zero denominator");
        for (std::size_t j = 0; j <= k; ++j)
            if (s.N.degree_in(j) > 0 || s.D.degree_in(j) > 0)
                throw ArityError("stage " + std::to_string(k + 1) + " depends on x_" + std::to_string(j + 1));
    }
}

EvalOutcome eval_triangular(const TriangularMap& map, const Vector& tau)
{
    if (tau.size() != map.M) throw ArityError("parameter count does not match M");
    std::size_t n = map.n, first = n - map.M;
    Vector x(n, Rational(0));
    for (std::size_t j = 0; j < map.M; ++j) x[first + j] = tau[j];
    EvalOutcome out;
    for (std::size_t k = first; k-- > 0;) {
        Rational d = poly_eval(map.stages[k].D, x);
        if (is_zero(d)) {
            out.kind = OutcomeKind::Witness;
            out.witness = {0, WitnessContext::RingDivision};
            out.traceStage = static_cast<int>(k + 1);
            out.point = std::move(x);
            return out;
        }
        x[k] = poly_eval(map.stages[k].N, x) / d;
    }
    out.kind = OutcomeKind::RationalValue;
    out.rational = poly_eval(map.P0, x);
    out.point = std::move(x);
    return out;
}

ReducedMap::ReducedMap(const TriangularMap& map, const Modulus& m)
    : map_(&map), mod_(std::make_shared<const Modulus>(m)), P0_(reduce_poly_mod(map.P0, *mod_))
{
    for (const auto& s : map.stages) {
        N_.push_back(reduce_poly_mod(s.N, *mod_));
        D_.push_back(reduce_poly_mod(s.D, *mod_));
    }
}

EvalOutcome ReducedMap::eval(const std::vector<BigInt>& tau) const
{
    const TriangularMap& map = *map_;
    if (tau.size() != map.M) throw ArityError("parameter count does not match M");
    std::size_t n = map.n, first = n - map.M;
    ModElement zero = make_mod(0, *mod_);
    std::vector<ModElement> x(n, zero);
    for (std::size_t j = 0; j < map.M; ++j) x[first + j] = make_mod(tau[j], *mod_);
    EvalOutcome out;
    auto witness = [&](const DivisionWitness& w, int stage) {
        out.kind = OutcomeKind::Witness;
        out.witness = w;
        out.traceStage = stage;
        return out;
    };
    for (std::size_t k = first; k-- > 0;) {
        int stage = static_cast<int>(k + 1);
        if (auto* w = std::get_if<DivisionWitness>(&D_[k])) return witness(*w, stage);
        if (auto* w = std::get_if<DivisionWitness>(&N_[k])) return witness(*w, stage);
        ModElement d = poly_eval(std::get<ModPoly>(D_[k]), x, zero);
        ModElement num = poly_eval(std::get<ModPoly>(N_[k]), x, zero);
        auto q = mod_div(num, d);
        if (auto* w = std::get_if<DivisionWitness>(&q)) return witness(*w, stage);
        x[k] = std::get<ModElement>(q);
    }
    if (auto* w = std::get_if<DivisionWitness>(&P0_)) return witness(*w, 0);
    out.kind = OutcomeKind::Value;
    out.value = poly_eval(std::get<ModPoly>(P0_), x, zero).value;
    return out;
}

EvalOutcome eval_triangular(const TriangularMap& map, const std::vector<BigInt>& tau, const Modulus& m)
{
    return ReducedMap(map, m).eval(tau);
}

Stage stage_from_poly(const Poly& p, std::size_t k)
{
    return {-poly_substitute(p, k, Rational(0)), poly_partial_derivative(p, k)};
}

GaussianFormReport verify_gaussian_form(const std::vector<Poly>& polys)
{
    GaussianFormReport rep;
    for (std::size_t s = 0; s < polys.size(); ++s) {
        if (polys[s].nvars() != polys[0].nvars()) throw ArityError("polynomials must share nvars");
        if (s >= polys[s].nvars()) {
            rep.violations.emplace_back(s, s);
            continue;
        }
        for (std::size_t k = 0; k < s; ++k)
            if (polys[s].degree_in(k) > 0) rep.violations.emplace_back(s, k);
        if (polys[s].degree_in(s) != 1) rep.violations.emplace_back(s, s);
    }
    rep.ok = rep.violations.empty();
    if (rep.ok)
        for (std::size_t s = 0; s < polys.size(); ++s) rep.stages.push_back(stage_from_poly(polys[s], s));
    return rep;
}

Poly model_polynomial(const QuadraticModel& model, std::size_t row)
{
    Poly p(model.n);
    for (std::size_t i = 0; i < model.n; ++i) {
        const Rational& c = model.coefMatrix.at(row).at(i);
        if (is_zero(c)) continue;
        p += (linear_form(model.aForms[i]) * linear_form(model.bForms[i])).scaled(c);
    }
    return p;
}

PointSet enumerate_quadratic_zeros(const QuadraticModel& model)
{
    std::size_t n = model.n;
    if (n > 14) throw BudgetExceeded("2^n enumeration is capped at n = 14");
    PointSet ps;
    std::size_t total = std::size_t(1) << n;
    ps.points.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
        std::vector<int> s(n);
        Matrix a(n, Vector(n));
        Vector rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = static_cast<int>((mask >> (n - 1 - i)) & 1);
            const Vector& f = s[i] ? model.bForms[i] : model.aForms[i];
            for (std::size_t j = 0; j < n; ++j) a[i][j] = f[j];
            rhs[i] = -f[n];
        }
        auto x = solve_square(std::move(a), std::move(rhs));
        if (!x) {
            std::string str;
            for (int b : s) str += char('0' + b);
            throw IndependenceViolation("singular system for sign string " + str);
        }
        x->push_back(Rational(1));
        ps.points.push_back(std::move(*x));
        ps.signs.push_back(std::move(s));
    }
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) { return ps.points[l] < ps.points[r]; });
    for (std::size_t i = 1; i < total; ++i)
        if (ps.points[idx[i]] == ps.points[idx[i - 1]])
            throw IndependenceViolation("two sign strings give the same point");
    return ps;
}

Vector to_map_coordinates(const TriangularMap& map, const Vector& natural)
{
    if (natural.size() != map.n && natural.size() != map.n + 1) throw ArityError("point has wrong length");
    Vector x(map.n);
    for (std::size_t j = 0; j < map.n; ++j) x[j] = natural[map.order[j]];
    return x;
}

MembershipReport verify_membership(const TriangularMap& map, const PointSet& pts)
{
    MembershipReport rep;
    for (const auto& p : pts.points) {
        Vector x = to_map_coordinates(map, p);
        PointCheck chk;
        for (std::size_t k = 0; k < map.stages.size() && chk.ok; ++k) {
            Rational d = poly_eval(map.stages[k].D, x);
            Rational r = x[k] * d - poly_eval(map.stages[k].N, x);
            if (!is_zero(r)) {
                chk = {false, "stage residual nonzero", static_cast<int>(k + 1)};
            } else if (is_zero(d)) {
                chk = {false, "stage denominator vanishes", static_cast<int>(k + 1)};
            }
        }
        if (chk.ok && !is_zero(poly_eval(map.P0, x))) chk = {false, "P0 nonzero", 0};
        if (!chk.ok) rep.allPass = false;
        rep.points.push_back(std::move(chk));
    }
    return rep;
}

} // namespace vf
