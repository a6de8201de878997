#include "vfactor/factor.hpp"

namespace vf {

namespace {

BigInt gcd(const BigInt& a, const BigInt& b)
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

FactorReport found(FactorReport rep, const BigInt& f)
{
    rep.outcome = FactorOutcome::Factor;
    rep.factor = f;
    rep.factorTrials = 1;
    return rep;
}

FactorReport rho(const BigInt& c, const PollardConfig& cfg, FactorReport rep)
{
    for (std::uint64_t attempt = 0; rep.trials < cfg.maxIterations; ++attempt) {
        TrialRng rng(cfg.seed, attempt);
        BigInt a = 1 + rng.below(c - 3);  // avoid a = 0 and a = -2
        BigInt x = rng.below(c), y = x;
        auto f = [&](BigInt& v) {
            v = v * v + a;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
        };
        while (rep.trials < cfg.maxIterations) {
            ++rep.trials;
            f(x);
            f(y);
            f(y);
            BigInt diff = abs(x - y);
            BigInt d = gcd(diff, c);
            if (d == 1) continue;
            if (d == c) {
                ++rep.trivialTrials;
                break;
            }
            return found(std::move(rep), d);
        }
    }
    return rep;
}

FactorReport pminus1(const BigInt& c, const PollardConfig& cfg, FactorReport rep)
{
    std::uint64_t B = cfg.bound;
    std::vector<bool> composite(B + 1, false);
    BigInt a = 2;
    for (std::uint64_t q = 2; q <= B; ++q) {
        if (composite[q]) continue;
        for (std::uint64_t k = q * q; k <= B; k += q) composite[k] = true;
        std::uint64_t qe = q;
        while (qe <= B / q) qe *= q;
        mpz_powm_ui(a.get_mpz_t(), a.get_mpz_t(), qe, c.get_mpz_t());
        ++rep.trials;
        BigInt g = gcd(a - 1, c);
        if (g == c) {
            ++rep.trivialTrials;
            return rep;
        }
        if (g > 1) return found(std::move(rep), g);
    }
    return rep;
}

} // namespace

FactorReport pollard_baseline(const BigInt& c, const PollardConfig& cfg)
{
    if (c < 4) throw InvalidModulus("pollard baselines need c >= 4");
    FactorReport rep;
    rep.method = cfg.variant == PollardVariant::Rho ? "rho" : "p-1";
    rep.seed = cfg.seed;
    if (c % 2 == 0) {
        rep.trials = 1;
        return found(std::move(rep), BigInt(2));
    }
    rep = cfg.variant == PollardVariant::Rho ? rho(c, cfg, std::move(rep)) : pminus1(c, cfg, std::move(rep));
    if (rep.outcome != FactorOutcome::Factor) rep.outcome = FactorOutcome::Exhausted;
    return rep;
}

} // namespace vf
