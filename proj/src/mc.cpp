// SPDX-License-Identifier: MIT
#include <cmath>
#include <cstdlib>
#include <thread>

#include "cooltrace/analytic.hpp"
#include "cooltrace/parallel.hpp"
#include "cooltrace/rng.hpp"
#include "cooltrace/simulator.hpp"

namespace cooltrace {

int max_threads() {
    if (const char* env = std::getenv("COOLTRACE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

namespace {

// Binomial standard error; a degenerate count (none or all) falls back to
// the one-sided rule-of-three bound 3/n so the interval never collapses.
double freq_std_err(std::uint64_t ones, std::uint64_t n) {
    if (ones == 0 || ones == n) return 3.0 / static_cast<double>(n);
    const double p_hat = static_cast<double>(ones) / static_cast<double>(n);
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

struct AcceptCounts {
    std::uint64_t accepted = 0;
    std::uint64_t target_ones = 0;
};

// One shot of the post-selected protocol: true iff all readouts are 0.
// On acceptance *target_bit is the (unmeasured) target value.
bool sample_mbac_shot(ShotRng& rng, const SpamParams& target,
                      std::span<const SpamParams> ancillas, int* target_bit) {
    const int t = rng.bernoulli(target.delta_sp) ? 1 : 0;
    for (const SpamParams& ancilla : ancillas) {
        int a = rng.bernoulli(ancilla.delta_sp) ? 1 : 0;
        a ^= t;  // CNOT from the target
        const int readout = a ^ (rng.bernoulli(ancilla.delta_m) ? 1 : 0);
        if (readout != 0) return false;
    }
    *target_bit = t;
    return true;
}

}  // namespace

McEstimate mc_run_mbac_k(const SpamParams& target, std::span<const SpamParams> ancillas,
                         std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw DomainError("shots must be >= 1");
    const AcceptCounts counts = parallel_accumulate<AcceptCounts>(
        shots,
        [&](std::uint64_t begin, std::uint64_t end, AcceptCounts& acc) {
            for (std::uint64_t s = begin; s < end; ++s) {
                ShotRng rng(seed, s);
                int t = 0;
                if (sample_mbac_shot(rng, target, ancillas, &t)) {
                    ++acc.accepted;
                    acc.target_ones += static_cast<std::uint64_t>(t);
                }
            }
        },
        [](AcceptCounts& total, const AcceptCounts& part) {
            total.accepted += part.accepted;
            total.target_ones += part.target_ones;
        });
    if (counts.accepted == 0)
        throw EstimationError("no shot was accepted; the estimate is undefined", shots, 0);
    const double mean =
        static_cast<double>(counts.target_ones) / static_cast<double>(counts.accepted);
    return {mean, freq_std_err(counts.target_ones, counts.accepted), shots, counts.accepted, seed};
}

McEstimate mc_mbac2_failure(const SpamParams& target, const SpamParams& ancilla,
                            std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw DomainError("shots must be >= 1");
    const SpamParams ancillas[] = {ancilla};
    const AcceptCounts counts = parallel_accumulate<AcceptCounts>(
        shots,
        [&](std::uint64_t begin, std::uint64_t end, AcceptCounts& acc) {
            for (std::uint64_t s = begin; s < end; ++s) {
                ShotRng rng(seed, s);
                const int t = rng.bernoulli(target.delta_sp) ? 1 : 0;
                int a = rng.bernoulli(ancillas[0].delta_sp) ? 1 : 0;
                a ^= t;
                const int readout = a ^ (rng.bernoulli(ancillas[0].delta_m) ? 1 : 0);
                if (readout == 1) {  // rejected branch is the conditioning event here
                    ++acc.accepted;
                    acc.target_ones += static_cast<std::uint64_t>(t);
                }
            }
        },
        [](AcceptCounts& total, const AcceptCounts& part) {
            total.accepted += part.accepted;
            total.target_ones += part.target_ones;
        });
    if (counts.accepted == 0)
        throw EstimationError("no shot was rejected; the failure-branch estimate is undefined",
                              shots, 0);
    const double mean =
        static_cast<double>(counts.target_ones) / static_cast<double>(counts.accepted);
    return {mean, freq_std_err(counts.target_ones, counts.accepted), shots, counts.accepted, seed};
}

McEstimate mc_runs_to_success(const SpamParams& target, std::span<const SpamParams> ancillas,
                              std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw DomainError("trials must be >= 1");
    // The chained acceptance probability is positive whenever every delta is
    // in [0, 1); guard anyway so a pathological configuration fails loudly
    // instead of looping.
    {
        double joint = 1.0;
        double delta_t = target.delta_sp;
        for (const SpamParams& ancilla : ancillas) {
            const double p0 =
                (1.0 - delta_t - ancilla.delta_sp + 2.0 * delta_t * ancilla.delta_sp) *
                (1.0 - ancilla.delta_m);
            joint *= p0;
            const double next = delta_t * ancilla.delta_sp /
                                (1.0 - delta_t - ancilla.delta_sp + 2.0 * delta_t * ancilla.delta_sp);
            delta_t = std::isfinite(next) ? next : delta_t;
        }
        if (!(joint > 1e-15))
            throw DivergenceError("overall success probability is (numerically) zero");
    }

    struct RunCounts {
        std::uint64_t total_runs = 0;
        std::uint64_t total_runs_sq = 0;
    };
    const RunCounts counts = parallel_accumulate<RunCounts>(
        trials,
        [&](std::uint64_t begin, std::uint64_t end, RunCounts& acc) {
            for (std::uint64_t trial = begin; trial < end; ++trial) {
                ShotRng rng(seed, trial);
                std::uint64_t runs = 0;
                int t = 0;
                do {
                    ++runs;
                } while (!sample_mbac_shot(rng, target, ancillas, &t));
                acc.total_runs += runs;
                acc.total_runs_sq += runs * runs;
            }
        },
        [](RunCounts& total, const RunCounts& part) {
            total.total_runs += part.total_runs;
            total.total_runs_sq += part.total_runs_sq;
        });
    const double n = static_cast<double>(trials);
    const double mean = static_cast<double>(counts.total_runs) / n;
    double std_err = 0.0;
    if (trials > 1) {
        const double var =
            (static_cast<double>(counts.total_runs_sq) - n * mean * mean) / (n - 1.0);
        std_err = std::sqrt(std::max(var, 0.0) / n);
    }
    return {mean, std_err, counts.total_runs, trials, seed};
}

McEstimate mc_run_bcs(double d1, double dt, double d2, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw DomainError("shots must be >= 1");
    for (double d : {d1, dt, d2})
        if (!(d >= 0.0 && d < 1.0)) throw DomainError("error probabilities must lie in [0, 1)");
    struct Counts {
        std::uint64_t target_ones = 0;
    };
    const Counts counts = parallel_accumulate<Counts>(
        shots,
        [&](std::uint64_t begin, std::uint64_t end, Counts& acc) {
            for (std::uint64_t s = begin; s < end; ++s) {
                ShotRng rng(seed, s);
                int t = rng.bernoulli(dt) ? 1 : 0;
                int a1 = rng.bernoulli(d1) ? 1 : 0;
                int a2 = rng.bernoulli(d2) ? 1 : 0;
                a1 ^= t;             // CNOT target -> s1
                if (a1) std::swap(t, a2);  // CSWAP controlled by s1
                acc.target_ones += static_cast<std::uint64_t>(t);
            }
        },
        [](Counts& total, const Counts& part) { total.target_ones += part.target_ones; });
    const double mean = static_cast<double>(counts.target_ones) / static_cast<double>(shots);
    return {mean, freq_std_err(counts.target_ones, shots), shots, shots, seed};
}

}  // namespace cooltrace
