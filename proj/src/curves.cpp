#include "vfactor/analysis.hpp"

namespace vf {

namespace {

using Dense = std::vector<std::vector<unsigned>>;  // homogeneous, [i][j] with k = deg - i - j

unsigned mulq(unsigned a, unsigned b, unsigned q)
{
    return static_cast<unsigned>((std::uint64_t(a) * b) % q);
}

Dense zero_form(unsigned d)
{
    Dense f(d + 1);
    for (unsigned i = 0; i <= d; ++i) f[i].assign(d + 1 - i, 0);
    return f;
}

// Leading monomial in lex order X > Y > Z, or false for the zero form.
bool leading(const Dense& f, unsigned& li, unsigned& lj)
{
    for (unsigned i = static_cast<unsigned>(f.size()); i-- > 0;)
        for (unsigned j = static_cast<unsigned>(f[i].size()); j-- > 0;)
            if (f[i][j]) {
                li = i;
                lj = j;
                return true;
            }
    return false;
}

// Exact division test of F (degree d) by G (degree e) with monic leading term.
bool divides(const Dense& G, unsigned e, Dense F, unsigned d, unsigned q)
{
    unsigned gi, gj;
    if (!leading(G, gi, gj)) return false;
    unsigned gk = e - gi - gj;
    unsigned fi, fj;
    while (leading(F, fi, fj)) {
        unsigned fk = d - fi - fj;
        if (fi < gi || fj < gj || fk < gk) return false;
        unsigned si = fi - gi, sj = fj - gj;
        unsigned coef = F[fi][fj];  // G is monic in its leading term
        for (unsigned i = 0; i <= e; ++i)
            for (unsigned j = 0; i + j <= e; ++j) {
                if (!G[i][j]) continue;
                unsigned& t = F[i + si][j + sj];
                t = (t + q - mulq(coef, G[i][j], q)) % q;
            }
    }
    return true;
}

// Calls fn on every nonzero form of degree e, normalized so its leading
// coefficient is 1; stops early when fn returns true.
template <class Fn>
bool any_normalized_form(unsigned e, unsigned q, Fn&& fn)
{
    std::vector<std::pair<unsigned, unsigned>> mons;
    for (unsigned i = e + 1; i-- > 0;)
        for (unsigned j = e - i + 1; j-- > 0;) mons.emplace_back(i, j);  // lex descending
    for (std::size_t lead = 0; lead < mons.size(); ++lead) {
        std::size_t free = mons.size() - lead - 1;
        std::vector<unsigned> digits(free, 0);
        while (true) {
            Dense g = zero_form(e);
            g[mons[lead].first][mons[lead].second] = 1;
            for (std::size_t t = 0; t < free; ++t) g[mons[lead + 1 + t].first][mons[lead + 1 + t].second] = digits[t];
            if (fn(g)) return true;
            std::size_t t = 0;
            while (t < free && ++digits[t] == q) digits[t++] = 0;
            if (t == free) break;
        }
    }
    return false;
}

} // namespace

PlaneCurve plane_curve_from_poly(const Poly& f, unsigned q)
{
    if (f.nvars() != 2) throw ArityError("plane curve needs a bivariate polynomial");
    PlaneCurve c;
    c.q = q;
    c.d = f.total_degree();
    c.c = zero_form(c.d);
    Modulus mod(q);
    for (const auto& [e, coef] : f.terms()) {
        auto r = reduce_rational_mod(coef, mod);
        if (std::holds_alternative<DivisionWitness>(r)) throw ZeroDenominator("coefficient denominator vanishes mod q");
        c.c[e[0]][e[1]] = static_cast<unsigned>(std::get<ModElement>(r).value.get_ui());
    }
    return c;
}

std::uint64_t count_projective_points(const PlaneCurve& f)
{
    const unsigned q = f.q, d = f.d;
    std::vector<std::vector<unsigned>> pw(q, std::vector<unsigned>(d + 1, 1));
    for (unsigned x = 0; x < q; ++x)
        for (unsigned k = 1; k <= d; ++k) pw[x][k] = mulq(pw[x][k - 1], x, q);
    auto eval = [&](unsigned X, unsigned Y, unsigned Z) {
        std::uint64_t s = 0;
        for (unsigned i = 0; i <= d; ++i)
            for (unsigned j = 0; i + j <= d; ++j) {
                unsigned c = f.c[i][j];
                if (!c) continue;
                s += mulq(mulq(c, pw[X][i], q), mulq(pw[Y][j], pw[Z][d - i - j], q), q);
            }
        return s % q;
    };
    std::uint64_t n = 0;
    for (unsigned x = 0; x < q; ++x)
        for (unsigned y = 0; y < q; ++y)
            if (eval(x, y, 1) == 0) ++n;
    for (unsigned y = 0; y < q; ++y)
        if (eval(1, y, 0) == 0) ++n;
    if (eval(0, 1, 0) == 0) ++n;
    return n;
}

bool has_low_degree_factor(const PlaneCurve& f)
{
    // a reducible form of degree d has a factor of degree at most d/2
    for (unsigned e = 1; e <= 2 && 2 * e <= f.d; ++e)
        if (any_normalized_form(e, f.q, [&](const Dense& g) { return divides(g, e, f.c, f.d, f.q); }))
            return true;
    return false;
}

PlaneCurve random_plane_curve(unsigned q, unsigned d, std::mt19937_64& rng)
{
    std::uniform_int_distribution<unsigned> dist(0, q - 1);
    while (true) {
        PlaneCurve c;
        c.q = q;
        c.d = d;
        c.c = zero_form(d);
        bool nonzero = false;
        for (unsigned i = 0; i <= d; ++i)
            for (unsigned j = 0; i + j <= d; ++j) {
                c.c[i][j] = dist(rng);
                nonzero = nonzero || c.c[i][j];
            }
        if (nonzero && !has_low_degree_factor(c)) return c;
    }
}

} // namespace vf
