#pragma once

#include "vfactor/errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vf {

using BigInt = mpz_class;
using Rational = mpq_class;
using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

Rational rational_normalize(const BigInt& num, const BigInt& den);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline Rational scale_int(const Rational& r, long k) { return r * k; }

// Graded lexicographic order on exponent vectors: total degree first, then
// lexicographic with x_1 most significant.
using Exponent = std::vector<unsigned>;
struct GrLexLess {
    bool operator()(const Exponent& a, const Exponent& b) const;
};
unsigned total_degree(const Exponent& e);

template <class T>
class SparsePoly {
public:
    using Terms = std::map<Exponent, T, GrLexLess>;

    SparsePoly() = default;
    explicit SparsePoly(std::size_t nvars) : nvars_(nvars) {}

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Exponent& e, const T& c)
    {
        if (e.size() != nvars_) throw ArityError("exponent length does not match nvars");
        if (is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second = it->second + c;
        if (is_zero(it->second)) terms_.erase(it);
    }

    unsigned degree_in(std::size_t k) const
    {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
        return d;
    }

    unsigned total_degree() const
    {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, vf::total_degree(e));
        return d;
    }

    SparsePoly& operator+=(const SparsePoly& o)
    {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    SparsePoly& operator-=(const SparsePoly& o)
    {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    SparsePoly operator-() const
    {
        SparsePoly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b)
    {
        a.check_same(b);
        SparsePoly r(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    SparsePoly scaled(const T& s) const
    {
        SparsePoly r(nvars_);
        for (const auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }

    bool operator==(const SparsePoly& o) const
    {
        if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [e, c] : terms_) {
            if (e != it->first || !(c == it->second)) return false;
            ++it;
        }
        return true;
    }

private:
    void check_same(const SparsePoly& o) const
    {
        if (nvars_ != o.nvars_) throw ArityError("polynomials live in different rings");
    }

    std::size_t nvars_ = 0;
    Terms terms_;
};

using Poly = SparsePoly<Rational>;

Poly poly_constant(std::size_t nvars, const Rational& c);
Poly poly_var(std::size_t nvars, std::size_t k);
Poly operator*(const Rational& s, const Poly& p);
Poly operator*(long s, const Poly& p);
Poly operator+(const Poly& p, long s);
Poly operator+(long s, const Poly& p);
Poly operator-(const Poly& p, long s);
Poly operator-(long s, const Poly& p);

template <class T>
T poly_eval(const SparsePoly<T>& p, const std::vector<T>& point, const T& zero)
{
    if (point.size() != p.nvars()) throw ArityError("point length does not match nvars");
    T acc = zero;
    for (const auto& [e, c] : p.terms()) {
        T term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) term = term * point[i];
        acc = acc + term;
    }
    return acc;
}

Rational poly_eval(const Poly& p, const Vector& point);

template <class T>
SparsePoly<T> poly_partial_derivative(const SparsePoly<T>& p, std::size_t k)
{
    if (k >= p.nvars()) throw ArityError("derivative index out of range");
    SparsePoly<T> r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (e[k] == 0) continue;
        Exponent f = e;
        --f[k];
        r.add_term(f, scale_int(c, static_cast<long>(e[k])));
    }
    return r;
}

// Substitute x_k := value, keeping nvars (x_k simply no longer occurs).
Poly poly_substitute(const Poly& p, std::size_t k, const Rational& value);
// Coefficient of x_k^j as a polynomial in the remaining variables.
Poly poly_coefficient_in(const Poly& p, std::size_t k, unsigned j);
// New variable i takes the role of old variable perm[i].
Poly poly_permute(const Poly& p, const std::vector<std::size_t>& perm);
// Linear form a_1 x_1 + ... + a_n x_n + a_{n+1}.
Poly linear_form(const Vector& coeffs);
// Smallest positive rational s with s*p having coprime integer coefficients.
Rational primitive_scale(const std::vector<const Poly*>& polys);
bool has_integer_coefficients(const Poly& p);

Vector vandermonde_nullspace(const Vector& c);

// Exact Gaussian elimination over Q.
std::size_t rank(Matrix m);
Rational determinant(Matrix m);
std::vector<Vector> nullspace(const Matrix& m, std::size_t ncols);
std::optional<Vector> solve_square(Matrix a, Vector b);

} // namespace vf
