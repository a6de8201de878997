#include "fixtures.hpp"

namespace vf::cli {

const std::vector<std::string>& fixture_names()
{
    static const std::vector<std::string> names{"n4", "third7", "third10", "half6", "half8"};
    return names;
}

Fixture load_fixture(const std::string& name, std::uint64_t seed)
{
    Fixture f;
    f.name = name;
    FamilyOptions opt;
    opt.seed = seed;
    if (name == "n4") {
        f.n4 = std::make_unique<ExampleN4>(build_example_n4());
        f.build = f.n4->build;
    } else if (name == "third7") {
        f.build = build_third_family(7, opt);
    } else if (name == "third10") {
        f.build = build_third_family(10, opt);
    } else if (name == "half6") {
        f.build = build_half_family(6, opt);
    } else if (name == "half8") {
        f.build = build_half_family(8, opt);
    } else {
        throw ArityError("unknown fixture '" + name + "'");
    }
    f.points = enumerate_quadratic_zeros(f.build.model);
    return f;
}

std::vector<Poly> stage_polynomials(const BuildResult& b)
{
    std::vector<Poly> out;
    for (auto row : b.stageRows) out.push_back(poly_permute(model_polynomial(b.model, row), b.map.order));
    return out;
}

Rational random_rational(std::uint64_t seed, std::uint64_t i)
{
    TrialRng rng(seed, i);
    BigInt num = rng.below(2001) - 1000;
    BigInt den = rng.below(1000) + 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace vf::cli
