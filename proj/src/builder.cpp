#include "vfactor/builder.hpp"

#include <random>
#include <stdexcept>

namespace vf {

namespace {

void require_nonzero(const Vector& v, const char* name)
{
    for (const auto& x : v)
        if (is_zero(x)) throw ZeroPivot(std::string("zero entry in ") + name);
}

template <class F>
void for_each_combination(std::size_t n, std::size_t m, F&& fn)
{
    std::vector<std::size_t> J(m);
    for (std::size_t i = 0; i < m; ++i) J[i] = i;
    while (true) {
        fn(J);
        std::size_t i = m;
        while (i > 0 && J[i - 1] == n - m + i - 1) --i;
        if (i == 0) return;
        ++J[i - 1];
        for (std::size_t j = i; j < m; ++j) J[j] = J[j - 1] + 1;
    }
}

// The maximal minors of a full-rank r x n matrix, taken by deleting a column
// set J, agree up to one common factor with the minors of its kernel basis on J.
bool kernel_minor_nonzero(const std::vector<Vector>& ker, const std::vector<std::size_t>& J)
{
    std::size_t m = J.size();
    if (ker.size() != m) return false;
    Matrix sub(m, Vector(m));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) sub[r][c] = ker[r][J[c]];
    return !is_zero(determinant(std::move(sub)));
}

std::string list_str(const std::vector<std::size_t>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

} // namespace

Vector printed_structure_nodes(const Vector& Ap, const Vector& Ad, const StructureParams& p)
{
    Vector c(Ap.size());
    for (std::size_t i = 0; i < Ap.size(); ++i) {
        Rational den = p.r1 * Ap[i] * Ap[i] + p.k1 * Ad[i] * Ad[i];
        if (is_zero(den)) throw ZeroPivot("vanishing node denominator");
        c[i] = (p.r0 * Ap[i] * Ap[i] + p.k0 * Ad[i] * Ad[i] - p.s0 * Ap[i] * Ad[i]) / den;
    }
    return c;
}

StructureConstants solve_structure_constants(std::size_t n, const Vector& Ap, const Vector& Ad,
                                             const StructureParams& p)
{
    if (n < 4 || n % 2 != 0) throw UnsupportedDimension("structure constants need even n >= 4");
    if (Ap.size() != n || Ad.size() != n) throw ArityError("A', A'' must have n entries");
    if (is_zero(p.k1)) throw ZeroPivot("k1 must be nonzero");
    require_nonzero(Ap, "A'");
    require_nonzero(Ad, "A''");
    StructureConstants sc;
    sc.params = p;
    sc.Aprime = Ap;
    sc.Adbl = Ad;
    // Multiplying the cross equation by A'A'' and substituting the two product
    // equations leaves a linear equation for c_i.
    sc.cs = printed_structure_nodes(Ap, Ad, p);
    for (auto& c : sc.cs) c = -c;
    sc.Ws = vandermonde_nullspace(sc.cs);
    sc.Bprime.resize(n);
    sc.Bdbl.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sc.Bprime[i] = (p.k0 + p.k1 * sc.cs[i]) * sc.Ws[i] / Ap[i];
        sc.Bdbl[i] = (p.r0 + p.r1 * sc.cs[i]) * sc.Ws[i] / Ad[i];
    }
    if (!structure_identities_hold(sc)) throw std::logic_error("structure identities failed");
    return sc;
}

bool structure_identities_hold(const StructureConstants& sc)
{
    const auto& p = sc.params;
    std::size_t n = sc.cs.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (sc.Aprime[i] * sc.Bprime[i] != (p.k0 + p.k1 * sc.cs[i]) * sc.Ws[i]) return false;
        if (sc.Adbl[i] * sc.Bdbl[i] != (p.r0 + p.r1 * sc.cs[i]) * sc.Ws[i]) return false;
        if (sc.Aprime[i] * sc.Bdbl[i] + sc.Adbl[i] * sc.Bprime[i] != p.s0 * sc.Ws[i]) return false;
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Rational t = sc.Ws[i];
            for (std::size_t e = 0; e < k; ++e) t *= sc.cs[i];
            s += t;
        }
        if (!is_zero(s)) return false;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (sc.cs[i] == sc.cs[j]) return false;
    return !is_zero(p.k1);
}

bool stages_match_model(const BuildResult& b)
{
    const TriangularMap& map = b.map;
    auto proportional = [](const Poly& ref, const Poly& got, Rational& lambda) {
        if (ref.empty() || got.empty()) return ref.empty() && got.empty();
        if (is_zero(lambda)) lambda = got.terms().begin()->second / ref.terms().begin()->second;
        return ref.scaled(lambda) == got;
    };
    for (std::size_t k = 0; k < map.stages.size(); ++k) {
        Poly P = poly_permute(model_polynomial(b.model, b.stageRows.at(k)), map.order);
        Stage st = stage_from_poly(P, k);
        Rational lambda = 0;
        if (!proportional(st.D, map.stages[k].D, lambda)) return false;
        if (!proportional(st.N, map.stages[k].N, lambda)) return false;
    }
    Rational lambda = 0;
    return proportional(poly_permute(model_polynomial(b.model, 0), map.order), map.P0, lambda);
}

NondegeneracyReport check_nondegeneracy(const QuadraticModel& model, unsigned m, std::size_t samples,
                                        std::uint64_t seed)
{
    std::size_t n = model.n;
    if (m < 1 || m >= n) throw ArityError("m must satisfy 1 <= m < n");
    NondegeneracyReport rep;
    std::vector<std::uint64_t> strings;
    if (n <= 12) {
        for (std::uint64_t s = 0; s < (std::uint64_t(1) << n); ++s) strings.push_back(s);
    } else {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < samples; ++i) strings.push_back(rng() & ((std::uint64_t(1) << n) - 1));
    }
    for (std::uint64_t s : strings) {
        // rows k = 1..n-m of M^s: coefficient of x_k in the chosen form of column i
        Matrix a(n - m, Vector(n));
        for (std::size_t k = 0; k < n - m; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                bool one = (s >> (n - 1 - i)) & 1;
                a[k][i] = (one ? model.bForms[i] : model.aForms[i])[k];
            }
        std::vector<Vector> ker = nullspace(a, n);
        for_each_combination(n, m, [&](const std::vector<std::size_t>& J) {
            ++rep.mChecked;
            if (kernel_minor_nonzero(ker, J)) return;
            ++rep.mViolations;
            if (rep.firstViolation.empty()) {
                std::string str;
                for (std::size_t i = 0; i < n; ++i) str += char('0' + ((s >> (n - 1 - i)) & 1));
                rep.firstViolation = "M matrix singular for s=" + str + " deleting columns " + list_str(J);
            }
        });
    }
    std::size_t rows = model.coefMatrix.size();
    if (m <= rows) {
        for_each_combination(n, m, [&](const std::vector<std::size_t>& J) {
            Matrix sub(m, Vector(m));
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c) sub[r][c] = model.coefMatrix[rows - m + r][J[c]];
            ++rep.cChecked;
            if (!is_zero(determinant(std::move(sub)))) return;
            ++rep.cViolations;
            if (rep.firstViolation.empty())
                rep.firstViolation = "coefficient submatrix singular on columns " + list_str(J);
        });
    }
    rep.ok = rep.mViolations == 0 && rep.cViolations == 0;
    return rep;
}

} // namespace vf
