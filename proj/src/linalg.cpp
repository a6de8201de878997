#include "vfactor/exact.hpp"

#include <cassert>

namespace vf {

namespace {

// Reduced row echelon form in place, pivoting only in the first ncols
// columns; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t ncols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && is_zero(m[sel][col])) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        Rational inv = 1 / m[row][col];
        for (std::size_t j = col; j < m[row].size(); ++j) m[row][j] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || is_zero(m[r][col])) continue;
            Rational f = m[r][col];
            for (std::size_t j = col; j < m[r].size(); ++j) m[r][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(Matrix m)
{
    if (m.empty()) return 0;
    return rref(m, m[0].size()).size();
}

Rational determinant(Matrix m)
{
    std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && is_zero(m[sel][col])) ++sel;
        if (sel == n) return Rational(0);
        if (sel != col) {
            std::swap(m[sel], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (is_zero(m[r][col])) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    return det;
}

std::vector<Vector> nullspace(const Matrix& m, std::size_t ncols)
{
    Matrix a = m;
    auto pivots = rref(a, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        Vector v(ncols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve_square(Matrix a, Vector b)
{
    std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    auto pivots = rref(a, n);
    if (pivots.size() < n) return std::nullopt;
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

Vector vandermonde_nullspace(const Vector& c)
{
    std::size_t n = c.size();
    if (n < 2) throw DegenerateNodes("need at least two nodes");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (c[i] == c[j]) throw DegenerateNodes("nodes must be pairwise distinct");

    // Column i scaled by den(c_i)^(n-2) so every entry is an integer; the
    // nullspace of the scaled matrix is S^{-1} W.
    std::size_t rows = n - 1;
    std::vector<BigInt> scale(n);
    std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const BigInt& num = c[i].get_num();
        const BigInt& den = c[i].get_den();
        BigInt dpow = 1;
        for (std::size_t k = 0; k + 2 < n; ++k) dpow *= den;
        scale[i] = dpow;
        BigInt nk = 1, dk = dpow;
        for (std::size_t k = 0; k < rows; ++k) {
            a[k][i] = nk * dk;
            nk *= num;
            if (k + 1 < rows) dk /= den;
        }
    }

    // Bareiss fraction-free forward elimination.
    std::vector<std::size_t> pivcol;
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < rows; ++col) {
        std::size_t sel = r;
        while (sel < rows && a[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[r], a[sel]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < n; ++j)
                a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[r][col];
        pivcol.push_back(col);
        ++r;
    }
    if (pivcol.size() != rows) throw DegenerateNodes("Vandermonde rows are dependent");

    std::size_t free = 0;
    while (free < n && std::find(pivcol.begin(), pivcol.end(), free) != pivcol.end()) ++free;
    Vector w(n, Rational(0));
    w[free] = 1;
    for (std::size_t k = rows; k-- > 0;) {
        std::size_t pc = pivcol[k];
        Rational s = 0;
        for (std::size_t j = pc + 1; j < n; ++j) s += Rational(a[k][j]) * w[j];
        w[pc] = -s / Rational(a[k][pc]);
    }
    for (std::size_t i = 0; i < n; ++i) w[i] *= Rational(scale[i]);

    Rational lead = 0;
    for (const auto& x : w)
        if (!is_zero(x)) { lead = x; break; }
    for (auto& x : w) x /= lead;
    for (const auto& x : w) {
        assert(!is_zero(x));
        if (is_zero(x)) throw DegenerateNodes("vanishing Vandermonde weight");
    }
    return w;
}

} // namespace vf
