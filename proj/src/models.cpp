#include "vfactor/models.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace vf {

namespace {

// Reduced row echelon basis of a growing set of vectors.
class Echelon {
public:
    explicit Echelon(std::size_t width) : width_(width) {}

    std::size_t rank() const { return rows_.size(); }

    bool in_span(const Vector& v) const { return is_zero_vec(reduce(v)); }

    bool add(const Vector& v)
    {
        Vector r = reduce(v);
        std::size_t p = 0;
        while (p < width_ && is_zero(r[p])) ++p;
        if (p == width_) return false;
        Rational inv = 1 / r[p];
        for (auto& x : r) x *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Rational f = rows_[i][p];
            if (is_zero(f)) continue;
            for (std::size_t j = 0; j < width_; ++j) rows_[i][j] -= f * r[j];
        }
        auto pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
        piv_.insert(piv_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(r));
        return true;
    }

    // For affine forms (constant last): the equations a = 0 have no solution.
    bool inconsistent() const { return !piv_.empty() && piv_.back() == width_ - 1; }

    // The unique common zero when the rank is width - 1 and the system is consistent.
    Vector point() const
    {
        Vector x(width_, Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) x[piv_[i]] = -rows_[i][width_ - 1];
        x[width_ - 1] = 1;
        return x;
    }

private:
    static bool is_zero_vec(const Vector& v)
    {
        for (const auto& x : v)
            if (!is_zero(x)) return false;
        return true;
    }

    Vector reduce(const Vector& v) const
    {
        Vector r = v;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Rational f = r[piv_[i]];
            if (is_zero(f)) continue;
            for (std::size_t j = 0; j < width_; ++j) r[j] -= f * rows_[i][j];
        }
        return r;
    }

    std::size_t width_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> piv_;
};

Rational eval_form(const Vector& f, const Vector& x)
{
    std::size_t n = f.size() - 1;
    Rational s = f[n];
    for (std::size_t i = 0; i < n; ++i) s += f[i] * x[i];
    return s;
}

std::vector<std::vector<std::size_t>> clause_list(const ModelSpec& spec)
{
    std::vector<std::vector<std::size_t>> cl;
    for (const auto& c : spec.clauses2) cl.push_back({c[0], c[1]});
    for (const auto& c : spec.clauses3) cl.push_back({c[0], c[1], c[2]});
    return cl;
}

std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return "{" + s + "}";
}

std::vector<std::size_t> vanishing_forms(const ModelSpec& spec, const Vector& x)
{
    std::vector<std::size_t> out;
    for (std::size_t f = 1; f <= spec.nbar; ++f)
        if (is_zero(eval_form(spec.forms[f - 1], x))) out.push_back(f);
    return out;
}

std::optional<Vector> solve_forms(const ModelSpec& spec, const std::vector<std::size_t>& idx)
{
    std::size_t n = spec.n();
    Matrix a;
    Vector b;
    for (auto f : idx) {
        const Vector& v = spec.forms[f - 1];
        a.emplace_back(v.begin(), v.begin() + long(n));
        b.push_back(-v[n]);
    }
    auto x = solve_square(std::move(a), std::move(b));
    if (x) x->push_back(Rational(1));
    return x;
}

void fill_signs(const ModelSpec& spec, IsolatedPoint& p)
{
    std::size_t n = spec.n();
    if (spec.nbar != 2 * n) return;
    std::vector<int> s(n, -1);
    for (auto f : p.flat) {
        std::size_t i = (f + 1) / 2;
        int bit = f % 2 == 0 ? 1 : 0;
        s[i - 1] = s[i - 1] == -1 ? bit : 2;
    }
    for (int v : s)
        if (v < 0 || v > 1) return;
    p.signs = std::move(s);
}

} // namespace

void ModelSpec::validate() const
{
    if (forms.size() != nbar) throw ArityError("forms must list nbar vectors");
    std::size_t w = forms.empty() ? 0 : forms[0].size();
    for (const auto& f : forms)
        if (f.size() != w || w < 2) throw ArityError("forms must share length n+1");
    for (const auto& c : clauses2)
        if (!(1 <= c[0] && c[0] < c[1] && c[1] <= nbar)) throw ArityError("clause indices must increase within [1, nbar]");
    for (const auto& c : clauses3)
        if (!(1 <= c[0] && c[0] < c[1] && c[1] < c[2] && c[2] <= nbar))
            throw ArityError("clause indices must increase within [1, nbar]");
    if (!blocks.empty()) {
        std::vector<int> seen(n() + 1, 0);
        for (const auto& b : blocks)
            for (auto i : b) {
                if (i < 1 || i > n()) throw ArityError("block index out of range");
                ++seen[i];
            }
        for (std::size_t i = 1; i <= n(); ++i)
            if (seen[i] != 1) throw ArityError("blocks must partition 1..n");
        if (nbar != 2 * n()) throw ArityError("block specs need nbar = 2n");
    }
}


ModelSpec make_model_a(const std::vector<Vector>& a0, const std::vector<Vector>& a1,
                       const std::vector<std::array<std::size_t, 2>>& gamma)
{
    if (a0.size() != a1.size() || a0.empty()) throw ArityError("need n forms a_0 and n forms a_1");
    const std::size_t n = a0.size();
    ModelSpec s;
    s.nbar = 2 * n;
    for (std::size_t i = 0; i < n; ++i) {
        if (a0[i].size() != n + 1 || a1[i].size() != n + 1) throw ArityError("forms must have length n+1");
        s.forms.push_back(a0[i]);
        s.forms.push_back(a1[i]);
        s.clauses2.insert({form_index(i + 1, 0), form_index(i + 1, 1)});
    }
    for (auto [i, j] : gamma) {
        if (i == j || i < 1 || j < 1 || i > n || j > n) throw ArityError("gamma pair out of range");
        auto a = form_index(std::min(i, j), 0), b = form_index(std::max(i, j), 0);
        s.clauses2.insert({a, b});
    }
    s.validate();
    return s;
}

ModelSpec make_diagonal_model(const std::vector<Vector>& a0, const std::vector<Vector>& a1)
{
    return make_model_a(a0, a1);
}

ModelSpec random_diagonal_model(std::size_t n, std::uint64_t seed, int bound)
{
    if (n == 0) throw ArityError("n must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-bound, bound);
    for (int tries = 0; tries < 1000; ++tries) {
        std::vector<Vector> a0(n, Vector(n + 1)), a1(n, Vector(n + 1));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= n; ++j) {
                a0[i][j] = d(rng);
                a1[i][j] = d(rng);
            }
        ModelSpec s = make_diagonal_model(a0, a1);
        if (verify_independence_property(s).ok) return s;
    }
    throw IndependenceViolation("no random model with the independence property");
}

ModelSpec make_block_model(const std::vector<Vector>& a0, const std::vector<Vector>& a1,
                           const std::vector<std::vector<std::size_t>>& blocks)
{
    if (a0.size() != a1.size() || a0.empty()) throw ArityError("need n forms a_0 and n forms a_1");
    const std::size_t n = a0.size();
    ModelSpec s;
    s.nbar = 2 * n;
    for (std::size_t i = 0; i < n; ++i) {
        s.forms.push_back(a0[i]);
        s.forms.push_back(a1[i]);
    }
    s.blocks = blocks;
    for (const auto& b : blocks)
        for (auto i : b)
            for (auto j : b) {
                auto x = form_index(i, 0), y = form_index(j, 1);
                s.clauses2.insert({std::min(x, y), std::max(x, y)});
            }
    s.validate();
    return s;
}

bool satisfies(const ModelSpec& spec, const Vector& x)
{
    for (const auto& c : clause_list(spec)) {
        bool hit = false;
        for (auto f : c) hit = hit || is_zero(eval_form(spec.forms[f - 1], x));
        if (!hit) return false;
    }
    return true;
}

namespace {

struct Search {
    const ModelSpec& spec;
    std::vector<std::vector<std::size_t>> clauses;
    std::size_t n;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<Vector> points;
    std::size_t positiveDim = 0;

    void tick()
    {
        if (++nodes > budget) throw BudgetExceeded("enumeration exceeded its node budget");
    }

    // Each flat closed under the vanishing forms is reached along exactly one
    // branch: the one choosing, in each open clause, the first form that
    // vanishes on it. Earlier forms of the clause are forbidden below.
    void dfs(const Echelon& e, const std::vector<std::size_t>& forbidden)
    {
        tick();
        const std::vector<std::size_t>* open = nullptr;
        for (const auto& c : clauses) {
            bool hit = false;
            for (auto f : c)
                if (e.in_span(spec.forms[f - 1])) {
                    hit = true;
                    break;
                }
            if (!hit) {
                open = &c;
                break;
            }
        }
        if (!open) {
            if (e.rank() < n)
                ++positiveDim;
            else
                points.push_back(e.point());
            return;
        }
        std::vector<std::size_t> forb = forbidden;
        for (auto f : *open) {
            Echelon next = e;
            next.add(spec.forms[f - 1]);
            bool ok = !next.inconsistent();
            for (auto g : forb)
                if (ok && next.in_span(spec.forms[g - 1])) ok = false;
            if (ok) dfs(next, forb);
            forb.push_back(f);
        }
    }

    // Minimal hitting sets inside the forms vanishing at a point. The point is
    // isolated iff every one of them spans a flat of dimension zero.
    bool certify(IsolatedPoint& p)
    {
        const auto& F = p.flat;
        if (F.size() > 24) throw BudgetExceeded("too many forms vanish at a candidate point");
        std::vector<std::uint32_t> masks;
        for (const auto& c : clauses) {
            std::uint32_t m = 0;
            for (std::size_t t = 0; t < F.size(); ++t)
                if (std::find(c.begin(), c.end(), F[t]) != c.end()) m |= 1u << t;
            masks.push_back(m);
        }
        auto hits = [&](std::uint32_t s) {
            for (auto m : masks)
                if (!(m & s)) return false;
            return true;
        };
        std::size_t count = 0;
        bool isolated = true;
        std::vector<std::uint32_t> subsets(std::size_t(1) << F.size());
        for (std::uint32_t s = 0; s < subsets.size(); ++s) subsets[s] = s;
        std::stable_sort(subsets.begin(), subsets.end(),
                         [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });
        for (auto s : subsets) {
            tick();
            if (!hits(s)) continue;
            bool minimal = true;
            for (std::size_t t = 0; t < F.size() && minimal; ++t)
                if ((s >> t & 1) && hits(s & ~(1u << t))) minimal = false;
            if (!minimal) continue;
            Echelon e(n + 1);
            std::vector<std::size_t> T;
            for (std::size_t t = 0; t < F.size(); ++t)
                if (s >> t & 1) {
                    e.add(spec.forms[F[t] - 1]);
                    T.push_back(F[t]);
                }
            if (e.rank() < n) isolated = false;
            if (count == 0) p.witness = T;
            ++count;
        }
        p.multiplicity = count;
        return isolated;
    }
};

} // namespace

IsolatedPointSet enumerate_isolated_points(const ModelSpec& spec, const EnumerateOptions& opt)
{
    spec.validate();
    const std::size_t n = spec.n();
    IsolatedPointSet out;
    if (!spec.blocks.empty()) {
        const std::size_t m = spec.blocks.size();
        if (m > 24) throw BudgetExceeded("too many blocks for the sign-string path");
        out.blockPath = true;
        for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << m); ++bits) {
            if (++out.nodes > opt.nodeBudget) throw BudgetExceeded("enumeration exceeded its node budget");
            std::vector<int> s(m);
            std::vector<std::size_t> idx;
            for (std::size_t k = 0; k < m; ++k) {
                s[k] = int(bits >> k & 1);
                for (auto i : spec.blocks[k]) idx.push_back(form_index(i, s[k]));
            }
            std::sort(idx.begin(), idx.end());
            auto x = solve_forms(spec, idx);
            if (!x) throw IndependenceViolation("forms of sign string are dependent");
            if (!satisfies(spec, *x)) continue;
            IsolatedPoint p;
            p.point = std::move(*x);
            p.flat = vanishing_forms(spec, p.point);
            p.witness = idx;
            p.signs = std::move(s);
            out.points.push_back(std::move(p));
        }
        return out;
    }

    Search S{spec, clause_list(spec), n, opt.nodeBudget};
    S.dfs(Echelon(n + 1), {});
    std::map<Vector, std::size_t> seen;
    for (auto& x : S.points) {
        if (seen.count(x)) continue;
        seen[x] = 1;
        IsolatedPoint p;
        p.point = x;
        p.flat = vanishing_forms(spec, x);
        if (!S.certify(p)) {
            ++out.nonIsolatedCandidates;
            continue;
        }
        fill_signs(spec, p);
        out.points.push_back(std::move(p));
    }
    out.nonIsolatedCandidates += S.positiveDim;
    out.nodes = S.nodes;
    return out;
}

IndependenceReport verify_independence_property(const ModelSpec& spec)
{
    spec.validate();
    const std::size_t n = spec.n();
    if (spec.nbar != 2 * n) throw ArityError("independence property needs nbar = 2n");
    IndependenceReport rep;
    std::vector<std::vector<std::size_t>> blocks = spec.blocks;
    if (blocks.empty())
        for (std::size_t i = 1; i <= n; ++i) blocks.push_back({i});
    const std::size_t m = blocks.size();
    if (m > 24) throw BudgetExceeded("too many sign strings");
    auto fail = [&](const std::string& why) {
        if (rep.ok) rep.firstViolation = why;
        rep.ok = false;
    };
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << m); ++bits) {
        Echelon e(n + 1);
        std::vector<std::size_t> in, off;
        for (std::size_t k = 0; k < m; ++k) {
            int s = int(bits >> k & 1);
            for (auto i : blocks[k]) {
                in.push_back(form_index(i, s));
                off.push_back(form_index(i, 1 - s));
            }
        }
        ++rep.checked;
        bool indep = true;
        for (auto f : in) indep = e.add(spec.forms[f - 1]) && indep;
        if (!indep) {
            fail("forms " + join(in) + " are dependent");
            continue;
        }
        for (auto f : off) {
            ++rep.checked;
            if (e.in_span(spec.forms[f - 1])) fail("form " + std::to_string(f) + " lies in the span of " + join(in));
        }
    }
    return rep;
}

CorrespondenceReport sat_correspondence(const ModelSpec& spec)
{
    if (spec.blocks.empty()) throw ArityError("correspondence needs a block spec");
    auto ind = verify_independence_property(spec);
    if (!ind.ok) throw IndependenceViolation(ind.firstViolation);
    Cnf f = induced_cnf(spec);
    auto models = all_models(f);
    auto pts = enumerate_isolated_points(spec);
    std::set<std::vector<bool>> sol(models.begin(), models.end()), fromPoints;
    for (const auto& p : pts.points) {
        std::vector<bool> a(p.signs.begin(), p.signs.end());
        if (!sol.count(a)) throw CorrespondenceViolation("isolated point without a satisfying assignment");
        fromPoints.insert(a);
    }
    for (const auto& a : sol)
        if (!fromPoints.count(a)) throw CorrespondenceViolation("satisfying assignment without an isolated point");
    CorrespondenceReport r;
    r.solutions = sol.size();
    r.points = pts.points.size();
    r.bijective = r.solutions == r.points && fromPoints.size() == r.points;
    if (!r.bijective) throw CorrespondenceViolation("points and assignments are not in bijection");
    return r;
}

Vector ReducedModel::embed(const Vector& y) const
{
    if (y.size() != m && y.size() != m + 1) throw ArityError("embed needs a point of length m or m+1");
    Vector x = x0;
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = 0; j < m; ++j) x[i] += B[i][j] * y[j];
    x.push_back(Rational(1));
    return x;
}

ReducedModel reduce_model(const ModelSpec& modelA, const IsolatedPointSet& pts)
{
    modelA.validate();
    const std::size_t n = modelA.n();
    if (modelA.nbar != 2 * n) throw ArityError("reduction needs a model with nbar = 2n");
    if (pts.points.empty()) throw EmptyModel("no isolated points to reduce");
    ReducedModel r;
    for (std::size_t k = 0; k < pts.points.size(); ++k) {
        std::size_t cnt = 0;
        for (std::size_t i = 1; i <= n; ++i)
            if (!is_zero(eval_form(modelA.forms[form_index(i, 0) - 1], pts.points[k].point))) ++cnt;
        if (cnt > r.m) {
            r.m = cnt;
            r.witnessPoint = k;
        }
    }
    if (r.m == 0) throw EmptyModel("every a_0 vanishes on every isolated point");
    const Vector& p = pts.points[r.witnessPoint].point;
    Matrix rows;
    for (std::size_t i = 1; i <= n; ++i) {
        const Vector& a = modelA.forms[form_index(i, 0) - 1];
        if (is_zero(eval_form(a, p))) {
            r.zeroed.push_back(i);
            rows.push_back(a);
        } else {
            r.kept.push_back(i);
        }
    }
    auto ker = rows.empty() ? std::vector<Vector>{} : nullspace(rows, n + 1);
    if (rows.empty())
        for (std::size_t j = 0; j <= n; ++j) {
            Vector e(n + 1, Rational(0));
            e[j] = 1;
            ker.push_back(e);
        }
    std::vector<Vector> dirs;
    bool particular = false;
    for (auto& v : ker) {
        if (!is_zero(v[n]) && !particular) {
            Rational inv = 1 / v[n];
            r.x0.assign(n, Rational(0));
            for (std::size_t j = 0; j < n; ++j) r.x0[j] = v[j] * inv;
            particular = true;
        } else {
            dirs.push_back(v);
        }
    }
    if (!particular) throw IndependenceViolation("zeroed forms have no common zero");
    // directions must have zero constant part
    for (auto& d : dirs)
        if (!is_zero(d[n])) {
            Rational t = d[n];
            for (std::size_t j = 0; j < n; ++j) d[j] -= t * r.x0[j];
            d[n] = 0;
        }
    if (dirs.size() != r.m)
        throw IndependenceViolation("zeroed forms leave a flat of dimension " + std::to_string(dirs.size()) +
                                    ", expected " + std::to_string(r.m));
    r.B.assign(n, Vector(r.m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < r.m; ++j) r.B[i][j] = dirs[j][i];

    auto restrict = [&](const Vector& a) {
        Vector g(r.m + 1, Rational(0));
        for (std::size_t j = 0; j < r.m; ++j)
            for (std::size_t l = 0; l < n; ++l) g[j] += a[l] * r.B[l][j];
        g[r.m] = a[n];
        for (std::size_t l = 0; l < n; ++l) g[r.m] += a[l] * r.x0[l];
        return g;
    };
    std::vector<Vector> a0, a1;
    for (auto i : r.kept) {
        a0.push_back(restrict(modelA.forms[form_index(i, 0) - 1]));
        a1.push_back(restrict(modelA.forms[form_index(i, 1) - 1]));
    }
    r.diagonal = make_diagonal_model(a0, a1);
    return r;
}

BoundFlags check_point_bounds(const ModelSpec& spec, std::size_t count)
{
    BoundFlags f;
    const std::size_t n = spec.n();
    BigInt three, two;
    mpz_ui_pow_ui(three.get_mpz_t(), 3, n);
    mpz_ui_pow_ui(two.get_mpz_t(), 2, n);
    f.withinThreePowN = BigInt(static_cast<unsigned long>(count)) <= three;
    f.withinTwoPowN = !spec.clauses3.empty() || BigInt(static_cast<unsigned long>(count)) <= two;
    return f;
}

} // namespace vf
