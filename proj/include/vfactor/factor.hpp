#pragma once

#include "vfactor/analysis.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace vf {

// Counter-based stream: trial i's draws depend only on (seed, i).
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial);
    std::uint64_t next();
    // Uniform in [0, c) by rejection on the bit length of c.
    BigInt below(const BigInt& c);

private:
    std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t& state);

struct FactorConfig {
    std::uint64_t maxTrials = 1000;
    std::uint64_t seed = 0;
    IntPoly numberField;        // empty: plain Z/cZ; otherwise the monic P_I
    unsigned threads = 1;
    bool keepLog = false;
    bool stopOnFactor = true;   // false: run every trial and count outcomes
};

enum class FactorOutcome { Factor, Trivial, Exhausted };
const char* to_string(FactorOutcome o);

struct TrialRecord {
    std::uint64_t index = 0;
    std::vector<BigInt> tau;          // flattened; k0 coefficients per parameter
    ClassKind cls = ClassKind::Unit;
    BigInt m;                         // value or divisor handed to the gcd
    bool witness = false;
    WitnessContext context = WitnessContext::RingDivision;
    int stage = -1;
    BigInt factor;
};

struct FactorReport {
    std::string method;
    FactorOutcome outcome = FactorOutcome::Exhausted;
    BigInt factor;
    std::uint64_t trials = 0;
    std::uint64_t witnessTrials = 0;
    std::uint64_t zeroTrials = 0;
    std::uint64_t factorTrials = 0;
    std::uint64_t trivialTrials = 0;
    std::uint64_t seed = 0;
    std::vector<TrialRecord> log;
};

// Runs trial(i) for i = 0, 1, ... in parallel chunks and merges the records
// by index, so the report does not depend on the thread count.
using TrialFn = std::function<TrialRecord(std::uint64_t)>;
FactorReport run_trials(const BigInt& c, const FactorConfig& cfg, const TrialFn& trial, const std::string& method);

FactorReport factor_semiprime(const BigInt& c, const TriangularMap& map, const FactorConfig& cfg);

struct FamilyMember {
    std::string label;
    BigInt NP;
    const TriangularMap* map = nullptr;
};

struct SearchConfig {
    FactorConfig base;
    unsigned maxRungs = 20;
    std::uint64_t budgetCap = 10000;
};

struct SearchRung {
    unsigned index = 0;
    BigInt ad, au;
    Real target = 0;       // sqrt(ad * au)
    std::size_t member = 0;
    std::uint64_t budget = 0;
    Real prHat = 0;
    FactorReport report;
};

struct SearchReport {
    FactorReport result;
    std::vector<SearchRung> rungs;
};

SearchReport search_np(const BigInt& c, const std::vector<FamilyMember>& family, const SearchConfig& cfg);

// Map over Q(alpha), alpha a root of the monic P_I of degree k0; every
// polynomial is stored as k0 rational components (coefficients of alpha^j).
using ComponentPoly = std::vector<Poly>;

struct NumberFieldStage {
    ComponentPoly N, D;
};

struct NumberFieldMap {
    std::size_t n = 0, M = 0;
    IntPoly PI;
    std::vector<NumberFieldStage> stages;
    ComponentPoly P0;

    std::size_t k0() const { return PI.size() - 1; }
    void validate() const;
};

// Embeds a map over Q as the alpha^0 component.
NumberFieldMap lift_to_number_field(const TriangularMap& map, const IntPoly& PI);

FactorReport factor_number_field(const BigInt& c, const NumberFieldMap& map, const FactorConfig& cfg);

enum class PollardVariant { Rho, PMinus1 };

struct PollardConfig {
    PollardVariant variant = PollardVariant::Rho;
    std::uint64_t bound = 1000;        // p-1 smoothness bound B
    std::uint64_t maxIterations = 1u << 24;
    std::uint64_t seed = 0;
};

FactorReport pollard_baseline(const BigInt& c, const PollardConfig& cfg);

} // namespace vf
