#pragma once

#include "vfactor/exact.hpp"

#include <array>
#include <cstdint>
#include <set>

namespace vf {

// Forms are numbered 1..nbar. For negation-style specs nbar = 2n, form 2i-1 is
// a_{0,i} and form 2i is a_{1,i}. Every clause (i, j) or (i, j, k) is the
// generator a_i a_j (a_k) = 0, i.e. at least one of its forms vanishes.
struct ModelSpec {
    std::size_t nbar = 0;
    std::vector<Vector> forms;                             // each of length n+1, constant last
    std::set<std::array<std::size_t, 2>> clauses2;
    std::set<std::array<std::size_t, 3>> clauses3;
    std::vector<std::vector<std::size_t>> blocks;          // partition of 1..n, possibly empty

    std::size_t n() const { return forms.empty() ? 0 : forms[0].size() - 1; }
    void validate() const;
};

inline std::size_t form_index(std::size_t i, int s) { return 2 * i - 1 + (s ? 1 : 0); }

// a_{0,i} a_{1,i} for every i, plus a_{0,i} a_{0,j} for (i, j) in gamma.
ModelSpec make_model_a(const std::vector<Vector>& a0, const std::vector<Vector>& a1,
                       const std::vector<std::array<std::size_t, 2>>& gamma = {});
ModelSpec make_diagonal_model(const std::vector<Vector>& a0, const std::vector<Vector>& a1);
// Random integer forms with |entries| <= bound, resampled until the
// independence property holds.
ModelSpec random_diagonal_model(std::size_t n, std::uint64_t seed, int bound = 20);
// Block generators a_{0,i} a_{1,j} for (i, j) in R_k x R_k.
ModelSpec make_block_model(const std::vector<Vector>& a0, const std::vector<Vector>& a1,
                           const std::vector<std::vector<std::size_t>>& blocks);

struct IsolatedPoint {
    Vector point;                         // length n+1, last entry 1
    std::vector<std::size_t> flat;        // all forms vanishing at the point
    std::vector<std::size_t> witness;     // a minimal hitting set certifying it
    std::size_t multiplicity = 1;         // distinct minimal hitting sets giving this point
    std::vector<int> signs;               // per block (fast path) or per pair when determined
};

struct IsolatedPointSet {
    std::vector<IsolatedPoint> points;
    std::size_t nonIsolatedCandidates = 0;
    std::uint64_t nodes = 0;
    bool blockPath = false;
};

struct EnumerateOptions {
    std::uint64_t nodeBudget = 50'000'000;
};

IsolatedPointSet enumerate_isolated_points(const ModelSpec& spec, const EnumerateOptions& opt = {});

// True when every clause has a form vanishing at x.
bool satisfies(const ModelSpec& spec, const Vector& x);

struct IndependenceReport {
    bool ok = true;
    std::size_t checked = 0;
    std::string firstViolation;
};

IndependenceReport verify_independence_property(const ModelSpec& spec);

// CNF over variables 1..nvars; literal v > 0 means a_v true.
struct Cnf {
    std::size_t nvars = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<bool> auxiliary;   // per variable, 0-based

    bool eval(const std::vector<bool>& assignment) const;   // assignment[v-1]
};

std::string to_dimacs(const Cnf& f);
Cnf parse_dimacs(const std::string& text);
// Clauses of length 1 and 2 are padded and longer clauses chained with
// auxiliary variables, so every clause has exactly three literals.
Cnf to_3sat(const Cnf& f);
std::vector<std::vector<bool>> all_models(const Cnf& f, std::size_t cap = 1u << 22);

// Boolean formula induced by a block spec: a_{1,i} vanishing means a_k true
// for the block k containing i. Tautological clauses are dropped.
Cnf induced_cnf(const ModelSpec& spec);

struct CorrespondenceReport {
    std::size_t solutions = 0;
    std::size_t points = 0;
    bool bijective = false;
};

CorrespondenceReport sat_correspondence(const ModelSpec& spec);

struct ReducedModel {
    ModelSpec diagonal;                 // n = m, no cross clauses
    std::size_t m = 0;
    std::size_t witnessPoint = 0;       // index into the input point set
    std::vector<std::size_t> kept;      // original pair indices i with a_{0,i} != 0, in order
    std::vector<std::size_t> zeroed;    // original pair indices with a_{0,i} = 0 (placed last)
    Vector x0;                          // x = x0 + B y
    Matrix B;                           // n x m

    Vector embed(const Vector& y) const;   // y of length m or m+1
};

ReducedModel reduce_model(const ModelSpec& modelA, const IsolatedPointSet& pts);

struct BoundFlags {
    bool withinThreePowN = true;
    bool withinTwoPowN = true;   // only asserted when clauses3 is empty
};

BoundFlags check_point_bounds(const ModelSpec& spec, std::size_t count);

} // namespace vf
