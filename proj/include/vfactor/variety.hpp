#pragma once

#include "vfactor/modring.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace vf {

// Stage k computes x_k = N_k / D_k from x_{k+1}, ..., x_n; equivalently
// P_k = x_k D_k - N_k.
struct Stage {
    Poly N;
    Poly D;
};

// All polynomials are in map coordinates; map coordinate j is the natural
// variable order[j]. The last M coordinates are the parameters.
struct TriangularMap {
    std::size_t n = 0;
    std::size_t M = 0;
    std::vector<std::size_t> order;
    std::vector<Stage> stages;
    Poly P0;

    void validate() const;
};

enum class OutcomeKind { Value, Witness, RationalValue };

struct EvalOutcome {
    OutcomeKind kind = OutcomeKind::Value;
    BigInt value;                  // Value: residue in [0, c)
    Rational rational;             // RationalValue
    DivisionWitness witness;       // Witness
    int traceStage = -1;           // 1-based stage of the witness; 0 means P0 reduction
    std::vector<Rational> point;   // completed point over Q (map coordinates)
};

EvalOutcome eval_triangular(const TriangularMap& map, const Vector& tau);

// A map reduced modulo c once, reused across trials. Keeps its own copy of the modulus.
class ReducedMap {
public:
    ReducedMap(const TriangularMap& map, const Modulus& m);
    const Modulus& modulus() const { return *mod_; }
    const TriangularMap& source() const { return *map_; }
    EvalOutcome eval(const std::vector<BigInt>& tau) const;

private:
    const TriangularMap* map_;
    std::shared_ptr<const Modulus> mod_;
    std::vector<OrWitness<ModPoly>> N_, D_;
    OrWitness<ModPoly> P0_;
};

EvalOutcome eval_triangular(const TriangularMap& map, const std::vector<BigInt>& tau, const Modulus& m);

struct GaussianFormReport {
    bool ok = false;
    std::vector<Stage> stages;
    // (s, k), 0-based: P_s depends on x_k with k < s, or (s, s) when P_s is not
    // of degree exactly one in x_s.
    std::vector<std::pair<std::size_t, std::size_t>> violations;
};

GaussianFormReport verify_gaussian_form(const std::vector<Poly>& polys);
Stage stage_from_poly(const Poly& p, std::size_t k);

struct PointSet {
    std::vector<Vector> points;               // length n+1, last entry 1
    std::vector<std::vector<int>> signs;      // per point, empty when untagged
};

// Linear forms a_i, b_i (length n+1, constant last) and the rows c_{l,i}
// defining P_l = sum_i c_{l,i} a_i b_i. Row 0 is the hypersurface P0.
struct QuadraticModel {
    std::size_t n = 0;
    std::vector<Vector> aForms;
    std::vector<Vector> bForms;
    Matrix coefMatrix;
};

Poly model_polynomial(const QuadraticModel& model, std::size_t row);

PointSet enumerate_quadratic_zeros(const QuadraticModel& model);

struct PointCheck {
    bool ok = true;
    std::string failure;     // first failing condition
    int stage = -1;          // 1-based stage, 0 for P0
};

struct MembershipReport {
    bool allPass = true;
    std::vector<PointCheck> points;
};

MembershipReport verify_membership(const TriangularMap& map, const PointSet& pts);

// Natural-coordinate point (length n or n+1) to map coordinates (length n).
Vector to_map_coordinates(const TriangularMap& map, const Vector& natural);

} // namespace vf
