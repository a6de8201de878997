#pragma once

#include "vfactor/json_io.hpp"

#include <memory>

namespace vf::cli {

struct Fixture {
    std::string name;
    BuildResult build;
    PointSet points;
    std::unique_ptr<ExampleN4> n4;   // set for the n4 fixture only
};

// n4, third7, third10, half6, half8
const std::vector<std::string>& fixture_names();
Fixture load_fixture(const std::string& name, std::uint64_t seed = 0);

// Stage polynomials P_k rebuilt from the model rows, in map coordinates.
std::vector<Poly> stage_polynomials(const BuildResult& b);

// Random rational in [-1000, 1000] with denominator in [1, 1000].
Rational random_rational(std::uint64_t seed, std::uint64_t i);

} // namespace vf::cli
