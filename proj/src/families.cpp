#include "vfactor/builder.hpp"

#include <random>

namespace vf {

namespace {

Rational power(const Rational& x, std::size_t k)
{
    Rational r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= x;
    return r;
}

Vector default_nodes(std::size_t n, bool index)
{
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = index ? Rational(long(i + 1)) : Rational(1);
    return v;
}

// Q(v) = sum alpha_i beta_i on the 2n-vector (alpha, beta).
Rational quad(const Vector& v, std::size_t n)
{
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += v[i] * v[n + i];
    return s;
}

Rational bilinear(const Vector& u, const Vector& v, std::size_t n)
{
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += u[i] * v[n + i] + v[i] * u[n + i];
    return s / 2;
}

struct Completion {
    std::vector<Vector> basis;
    Vector isotropicSeed;
};

// Kernel of the constraint rows on (alpha, beta), and a vector (alpha0, 0)
// inside it, from which an isotropic column is reached along a secant.
Completion completion_space(const Matrix& rows, std::size_t n)
{
    Completion c;
    c.basis = nullspace(rows, 2 * n);
    Matrix alphaRows;
    for (const auto& r : rows) alphaRows.emplace_back(r.begin(), r.begin() + long(n));
    auto z = nullspace(alphaRows, n);
    if (z.empty()) throw NondegeneracyExhausted("no isotropic direction in the completion space");
    c.isotropicSeed.assign(2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) c.isotropicSeed[i] = z[0][i];
    return c;
}

class Sampler {
public:
    Sampler(std::uint64_t seed, int bound) : rng_(seed), dist_(-bound, bound) {}

    Vector combination(const std::vector<Vector>& basis)
    {
        Vector v(basis.at(0).size(), Rational(0));
        for (const auto& b : basis) {
            long k = dist_(rng_);
            if (k == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] += b[j] * k;
        }
        return v;
    }

private:
    std::mt19937_64 rng_;
    std::uniform_int_distribution<int> dist_;
};

struct Layout {
    std::string family;
    std::size_t n = 0, M = 0;
    std::vector<Vector> a, b;      // n forms of length n+1, prescribed part filled
    std::size_t firstFree = 0;     // columns firstFree..n (constant last) are completed
    Matrix constraints;
    Matrix coefMatrix;
    std::vector<std::size_t> order, stageRows;
};

std::optional<BuildResult> attempt(const Layout& L, const Completion& comp, std::uint64_t seed, int bound)
{
    const std::size_t n = L.n;
    Sampler s(seed, bound);
    Vector r = s.combination(comp.basis);
    Rational q = quad(r, n);
    if (is_zero(q)) return std::nullopt;
    Rational lambda = -2 * bilinear(comp.isotropicSeed, r, n) / q;
    std::vector<Vector> cols;
    Vector t1(2 * n);
    for (std::size_t j = 0; j < 2 * n; ++j) t1[j] = comp.isotropicSeed[j] + lambda * r[j];
    cols.push_back(std::move(t1));
    while (L.firstFree + cols.size() <= n) cols.push_back(s.combination(comp.basis));

    BuildResult br;
    br.family = L.family;
    br.model.n = n;
    br.model.aForms = L.a;
    br.model.bForms = L.b;
    br.model.coefMatrix = L.coefMatrix;
    for (std::size_t idx = 0; idx < cols.size(); ++idx) {
        std::size_t j = L.firstFree + idx;
        for (std::size_t i = 0; i < n; ++i) {
            br.model.aForms[i][j] = cols[idx][i];
            br.model.bForms[i][j] = cols[idx][n + i];
        }
    }

    TriangularMap& map = br.map;
    map.n = n;
    map.M = L.M;
    map.order = L.order;
    for (std::size_t k = 0; k < L.stageRows.size(); ++k) {
        Poly P = poly_permute(model_polynomial(br.model, L.stageRows[k]), L.order);
        if (P.degree_in(k) != 1) return std::nullopt;
        Stage st = stage_from_poly(P, k);
        Rational sc = primitive_scale({&st.N, &st.D});
        map.stages.push_back({st.N.scaled(sc), st.D.scaled(sc)});
    }
    Poly P0 = poly_permute(model_polynomial(br.model, 0), L.order);
    map.P0 = P0.scaled(primitive_scale({&P0}));
    try {
        map.validate();
        PointSet pts = enumerate_quadratic_zeros(br.model);
        if (!verify_membership(map, pts).allPass) return std::nullopt;
    } catch (const ArityError&) {
        return std::nullopt;
    } catch (const IndependenceViolation&) {
        return std::nullopt;
    }
    br.stageRows = L.stageRows;
    br.seed = seed;
    return br;
}

BuildResult complete(const Layout& L, const FamilyOptions& opt)
{
    Completion comp = completion_space(L.constraints, L.n);
    for (unsigned t = 0; t < opt.maxAttempts; ++t) {
        auto br = attempt(L, comp, opt.seed + t, opt.coefBound);
        if (br) {
            br->seed = opt.seed;
            br->attempts = t + 1;
            return std::move(*br);
        }
    }
    throw NondegeneracyExhausted(L.family + " family: no nondegenerate completion in " +
                                 std::to_string(opt.maxAttempts) + " attempts");
}

Vector coefficient_row(const Vector& c, std::size_t e)
{
    Vector row(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) row[i] = power(c[i], e);
    return row;
}

Vector unit_row(std::size_t n)
{
    Vector row(n, Rational(0));
    row[0] = 1;
    return row;
}

} // namespace

BuildResult build_third_family(std::size_t n, const FamilyOptions& opt)
{
    if (n < 7 || n % 3 != 1) throw UnsupportedDimension("third family needs n = 1 mod 3, n >= 7");
    const std::size_t n1 = (n - 1) / 3;
    Vector A = opt.A.empty() ? default_nodes(n, true) : opt.A;
    Vector Ab = opt.Abar.empty() ? default_nodes(n, false) : opt.Abar;
    if (A.size() != n || Ab.size() != n) throw ArityError("A, Abar must have n entries");
    Vector c(n), B(n), Bb(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (is_zero(A[i]) || is_zero(Ab[i])) throw ZeroPivot("zero entry in A or Abar");
        c[i] = (A[i] * A[i] + Ab[i] * Ab[i]) / (2 * A[i] * Ab[i]);
    }
    Vector W = vandermonde_nullspace(c);
    for (std::size_t i = 0; i < n; ++i) {
        B[i] = W[i] / A[i];
        Bb[i] = W[i] / Ab[i];
    }

    Layout L;
    L.family = "third";
    L.n = n;
    L.M = n1;
    L.a.assign(n, Vector(n + 1, Rational(0)));
    L.b.assign(n, Vector(n + 1, Rational(0)));
    for (std::size_t k = 0; k < n1; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            Rational ck = power(c[i], k);
            L.a[i][k] = ck * Ab[i];
            L.b[i][k] = ck * Bb[i];
            L.a[i][n1 + k] = ck * A[i];
            L.b[i][n1 + k] = ck * B[i];
        }
    L.firstFree = 2 * n1;
    auto push = [&](std::size_t m, const Vector& alpha, const Vector& beta) {
        Vector row(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational cm = power(c[i], m);
            row[i] = cm * alpha[i];
            row[n + i] = cm * beta[i];
        }
        L.constraints.push_back(std::move(row));
    };
    for (std::size_t m = 0; m < 2 * n1; ++m) push(m, Bb, Ab);
    for (std::size_t m = 0; m < n1; ++m) push(m, B, A);

    L.coefMatrix.push_back(unit_row(n));
    for (std::size_t s = 1; s <= 2 * n1 + 1; ++s) L.coefMatrix.push_back(coefficient_row(c, s - 1));
    for (std::size_t i = 0; i < n; ++i) L.order.push_back(i);
    for (std::size_t k = 1; k <= n1; ++k) L.stageRows.push_back(2 * n1 + 2 - k);
    for (std::size_t j = 1; j <= n1; ++j) L.stageRows.push_back(n1 + 2 - j);
    L.stageRows.push_back(1);
    return complete(L, opt);
}

BuildResult build_half_family(std::size_t n, const FamilyOptions& opt)
{
    if (n == 4) throw UnsupportedDimension("no one-parameter even family beyond the fixed n = 4 example");
    if (n < 6 || n % 2 != 0) throw UnsupportedDimension("half family needs even n >= 6");
    const std::size_t n1 = (n - 2) / 2;
    Vector Ap = opt.Aprime.empty() ? default_nodes(n, true) : opt.Aprime;
    Vector Ad = opt.Adbl.empty() ? default_nodes(n, false) : opt.Adbl;
    StructureConstants sc = solve_structure_constants(n, Ap, Ad, opt.params);
    const Vector& c = sc.cs;

    Layout L;
    L.family = "half";
    L.n = n;
    L.M = n1;
    L.a.assign(n, Vector(n + 1, Rational(0)));
    L.b.assign(n, Vector(n + 1, Rational(0)));
    for (std::size_t k = 0; k < n1; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            Rational ck = power(c[i], k);
            L.a[i][k] = ck * sc.Aprime[i];
            L.b[i][k] = ck * sc.Bprime[i];
            L.a[i][n1 + k] = ck * sc.Adbl[i];
            L.b[i][n1 + k] = ck * sc.Bdbl[i];
        }
    L.firstFree = 2 * n1;
    auto push = [&](std::size_t m, const Vector& alpha, const Vector& beta) {
        Vector row(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational cm = power(c[i], m);
            row[i] = cm * alpha[i];
            row[n + i] = cm * beta[i];
        }
        L.constraints.push_back(std::move(row));
    };
    for (std::size_t m = 0; m <= n1; ++m) push(m, sc.Bprime, sc.Aprime);
    for (std::size_t m = 0; m < n1; ++m) push(m, sc.Bdbl, sc.Adbl);

    L.coefMatrix.push_back(unit_row(n));
    for (std::size_t j = 0; j <= n1 + 1; ++j) L.coefMatrix.push_back(coefficient_row(c, j));
    // u_1, v_1..v_{n1}, t_1 are solved; u_2..u_{n1}, t_2 are the parameters
    L.order.push_back(0);
    for (std::size_t k = 0; k < n1; ++k) L.order.push_back(n1 + k);
    L.order.push_back(2 * n1);
    for (std::size_t k = 1; k < n1; ++k) L.order.push_back(k);
    L.order.push_back(2 * n1 + 1);
    L.stageRows.push_back(n1 + 2);
    for (std::size_t i = 1; i <= n1; ++i) L.stageRows.push_back(n1 + 2 - i);
    L.stageRows.push_back(1);
    return complete(L, opt);
}

} // namespace vf
