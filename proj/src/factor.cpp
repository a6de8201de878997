#include "vfactor/factor.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace vf {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
{
    std::uint64_t a = seed, b = trial ^ 0xD1B54A32D192ED03ULL;
    state_ = splitmix64(a) ^ (splitmix64(b) << 1);
}

std::uint64_t TrialRng::next()
{
    return splitmix64(state_);
}

BigInt TrialRng::below(const BigInt& c)
{
    std::size_t bits = mpz_sizeinbase(c.get_mpz_t(), 2);
    std::size_t words = (bits + 63) / 64;
    BigInt r;
    while (true) {
        r = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t x = next();
            if (w == words - 1 && bits % 64) x &= (std::uint64_t(1) << (bits % 64)) - 1;
            BigInt part;
            mpz_import(part.get_mpz_t(), 1, 1, sizeof x, 0, 0, &x);
            r = (r << 64) + part;
        }
        if (r < c) return r;
    }
}

const char* to_string(FactorOutcome o)
{
    switch (o) {
    case FactorOutcome::Factor: return "Factor";
    case FactorOutcome::Trivial: return "Trivial";
    case FactorOutcome::Exhausted: return "Exhausted";
    }
    return "?";
}

namespace {

void check_factor(const BigInt& f, const BigInt& c)
{
    if (!(f > 1 && f < c && c % f == 0)) throw std::logic_error("reported factor does not divide c");
}

} // namespace

FactorReport run_trials(const BigInt& c, const FactorConfig& cfg, const TrialFn& trial, const std::string& method)
{
    if (cfg.maxTrials < 1) throw ArityError("maxTrials must be at least 1");
    FactorReport rep;
    rep.method = method;
    rep.seed = cfg.seed;
    unsigned threads = std::max(1u, cfg.threads);
    const std::uint64_t chunk = std::max<std::uint64_t>(64, 16 * std::uint64_t(threads));
    bool found = false;
    std::vector<TrialRecord> buf;
    for (std::uint64_t start = 0; start < cfg.maxTrials && !(found && cfg.stopOnFactor); start += chunk) {
        std::uint64_t len = std::min(chunk, cfg.maxTrials - start);
        buf.assign(len, TrialRecord{});
        if (threads == 1 || len == 1) {
            for (std::uint64_t i = 0; i < len; ++i) buf[i] = trial(start + i);
        } else {
            std::vector<std::thread> pool;
            unsigned used = static_cast<unsigned>(std::min<std::uint64_t>(threads, len));
            for (unsigned t = 0; t < used; ++t)
                pool.emplace_back([&, t] {
                    for (std::uint64_t i = t; i < len; i += used) buf[i] = trial(start + i);
                });
            for (auto& th : pool) th.join();
        }
        for (auto& r : buf) {
            ++rep.trials;
            if (r.witness) ++rep.witnessTrials;
            if (!r.witness && r.m == 0) ++rep.zeroTrials;
            if (r.cls == ClassKind::TrivialAll) ++rep.trivialTrials;
            if (r.cls == ClassKind::Factor) {
                check_factor(r.factor, c);
                ++rep.factorTrials;
                if (!found) {
                    found = true;
                    rep.outcome = FactorOutcome::Factor;
                    rep.factor = r.factor;
                }
            }
            if (cfg.keepLog) rep.log.push_back(std::move(r));
            if (found && cfg.stopOnFactor) break;
        }
    }
    if (!found) rep.outcome = rep.trivialTrials == rep.trials ? FactorOutcome::Trivial : FactorOutcome::Exhausted;
    return rep;
}

FactorReport factor_semiprime(const BigInt& c, const TriangularMap& map, const FactorConfig& cfg)
{
    if (!cfg.numberField.empty()) return factor_number_field(c, lift_to_number_field(map, cfg.numberField), cfg);
    Modulus mod(c);
    ReducedMap rm(map, mod);
    auto trial = [&](std::uint64_t i) {
        TrialRng rng(cfg.seed, i);
        TrialRecord r;
        r.index = i;
        r.tau.resize(map.M);
        for (auto& t : r.tau) t = rng.below(c);
        EvalOutcome o = rm.eval(r.tau);
        r.stage = o.traceStage;
        if (o.kind == OutcomeKind::Witness) {
            r.witness = true;
            r.context = o.witness.context;
            r.m = o.witness.divisor;
        } else {
            r.m = o.value;
        }
        Classification k = gcd_extract(r.m, c);
        r.cls = k.kind;
        r.factor = k.factor;
        return r;
    };
    return run_trials(c, cfg, trial, "variety");
}

SearchReport search_np(const BigInt& c, const std::vector<FamilyMember>& family, const SearchConfig& cfg)
{
    if (family.empty()) throw FamilyGap("empty map family");
    std::size_t Mmax = 0;
    for (const auto& m : family) {
        if (!m.map) throw ArityError("family member without a map");
        Mmax = std::max(Mmax, m.map->M);
    }
    SearchReport sr;
    FactorReport& total = sr.result;
    total.method = "search";
    total.seed = cfg.base.seed;
    BigInt ad = 1, au;
    mpz_pow_ui(au.get_mpz_t(), c.get_mpz_t(), Mmax);
    const Real pHat = sqrt(Real(c.get_str()));
    bool allTrivial = true;

    for (unsigned rung = 1; rung <= cfg.maxRungs; ++rung) {
        Real logMid = (log(Real(ad.get_str())) + log(Real(au.get_str()))) / 2;
        std::optional<std::size_t> pick;
        Real bestDist = 0;
        for (std::size_t i = 0; i < family.size(); ++i) {
            const BigInt& np = family[i].NP;
            if (!(ad < np && np < au)) continue;
            Real d = abs(log(Real(np.get_str())) - logMid);
            if (!pick || d < bestDist || (d == bestDist && np < family[*pick].NP)) {
                pick = i;
                bestDist = d;
            }
        }
        if (!pick) {
            if (rung == 1) throw FamilyGap("no family member strictly inside the initial bracket");
            break;
        }
        const FamilyMember& mem = family[*pick];
        SearchRung r;
        r.index = rung;
        r.ad = ad;
        r.au = au;
        r.target = exp(logMid);
        r.member = *pick;
        ComplexityInputs in{pHat, 1, static_cast<unsigned>(mem.map->M), Real(mem.NP.get_str())};
        r.prHat = success_probability(in);
        std::uint64_t budget = cfg.budgetCap;
        if (r.prHat > 0) {
            Real b = 8 * ceil(1 / r.prHat);
            if (b < Real(cfg.budgetCap)) budget = static_cast<std::uint64_t>(b.convert_to<double>());
        }
        r.budget = std::max<std::uint64_t>(budget, 1);
        FactorConfig fc = cfg.base;
        fc.maxTrials = r.budget;
        fc.seed = cfg.base.seed + (rung - 1);
        fc.stopOnFactor = true;
        r.report = factor_semiprime(c, *mem.map, fc);
        total.trials += r.report.trials;
        total.witnessTrials += r.report.witnessTrials;
        total.zeroTrials += r.report.zeroTrials;
        total.factorTrials += r.report.factorTrials;
        total.trivialTrials += r.report.trivialTrials;
        FactorOutcome out = r.report.outcome;
        sr.rungs.push_back(std::move(r));
        if (out == FactorOutcome::Factor) {
            total.outcome = FactorOutcome::Factor;
            total.factor = sr.rungs.back().report.factor;
            return sr;
        }
        if (out == FactorOutcome::Trivial) {
            au = mem.NP;
        } else {
            allTrivial = false;
            ad = mem.NP;
        }
    }
    total.outcome = allTrivial ? FactorOutcome::Trivial : FactorOutcome::Exhausted;
    return sr;
}

} // namespace vf
