#pragma once

#include "vfactor/variety.hpp"

#include <cstdint>
#include <string>

namespace vf {

struct StructureParams {
    Rational k0 = 1, k1 = 1, r0 = 1, r1 = 2, s0 = 3; // s1 is fixed to 0
};

struct StructureConstants {
    Vector cs, Ws;
    Vector Aprime, Adbl, Bprime, Bdbl;
    StructureParams params;
};

// Solves A'B' = (k0+k1 c)W, A''B'' = (r0+r1 c)W, A'B''+A''B' = s0 W with
// sum_i c_i^{k-1} W_i = 0 for k < n.
StructureConstants solve_structure_constants(std::size_t n, const Vector& Aprime, const Vector& Adbl,
                                             const StructureParams& params);
// The c_i formula as printed alongside the boxed system (opposite sign).
Vector printed_structure_nodes(const Vector& Aprime, const Vector& Adbl, const StructureParams& params);
bool structure_identities_hold(const StructureConstants& sc);

struct BuildResult {
    std::string family;
    QuadraticModel model;
    TriangularMap map;
    std::vector<std::size_t> stageRows; // model row solving each stage
    std::uint64_t seed = 0;
    unsigned attempts = 0;
};

struct ClosedForm {
    Vector taus;        // the sixteen roots
    Poly Q1, Q2, Q3;    // univariate (nvars = 1)
};

struct ExampleN4 {
    BuildResult build;
    std::vector<Poly> P;  // P0, P1, P2, P3 as printed
    ClosedForm closed;
};

ExampleN4 build_example_n4();
// prod_k (tau - tau_k) / (Q1^2 Q2^2 Q3^2)
Rational closed_form_value(const ClosedForm& cf, const Rational& tau);

struct FamilyOptions {
    Vector A, Abar;              // third family; default A_i = i, Abar_i = 1
    Vector Aprime, Adbl;         // half family; default A'_i = i, A''_i = 1
    StructureParams params;
    std::uint64_t seed = 0;
    unsigned maxAttempts = 50;
    int coefBound = 20;
};

BuildResult build_half_family(std::size_t n, const FamilyOptions& opt = {});
BuildResult build_third_family(std::size_t n, const FamilyOptions& opt = {});

// Rebuilds P_row from the model in map coordinates and checks that it is a
// rational multiple of the stored stage.
bool stages_match_model(const BuildResult& b);

struct NondegeneracyReport {
    bool ok = true;
    std::size_t mChecked = 0, mViolations = 0;
    std::size_t cChecked = 0, cViolations = 0;
    std::string firstViolation;
};

// Rank conditions on the Plucker minors. Exhaustive over sign strings for n <= 12,
// otherwise `samples` random strings drawn from `seed`.
NondegeneracyReport check_nondegeneracy(const QuadraticModel& model, unsigned m, std::size_t samples = 256,
                                        std::uint64_t seed = 0);

} // namespace vf
