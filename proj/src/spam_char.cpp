// SPDX-License-Identifier: MIT
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cooltrace/analytic.hpp"
#include "cooltrace/errors.hpp"
#include "cooltrace/parallel.hpp"
#include "cooltrace/rng.hpp"
#include "cooltrace/spam_char.hpp"

namespace cooltrace {

BlochState z_twirl_state(const BlochState& rho) { return BlochState(0.0, 0.0, rho.sz); }

Povm1Q z_twirl_measurement(const Povm1Q& m0) { return Povm1Q(m0.mi, 0.0, 0.0, m0.mz); }

Povm1Q x_relabel_measurement(const Povm1Q& m0) {
    // (M0 + X(I - M0)X)/2. Conjugation by X fixes the x component and flips
    // y and z; the complement flips the sign of the whole Bloch part, so the
    // two flips cancel for y and z while x averages away.
    return Povm1Q(1.0, 0.0, m0.my, m0.mz);
}

DiagonalSpam reduce_to_diagonal(const BlochState& rho, const Povm1Q& m0) {
    const BlochState rho_d = z_twirl_state(rho);
    const Povm1Q m_d = x_relabel_measurement(z_twirl_measurement(m0));
    const double delta_sp = (1.0 - rho_d.sz) / 2.0;
    const double delta_m = (1.0 - m_d.mz) / 2.0;
    return DiagonalSpam{delta_sp, delta_m, delta_sp < 0.5 && delta_m < 0.5};
}

namespace {

// Seed-space tags so the three experiment stages draw from disjoint streams.
constexpr std::uint64_t kTagDirectTarget = 0xD1;
constexpr std::uint64_t kTagMbac = 0xB0;
constexpr std::uint64_t kTagAncillaBase = 0xA000;

struct BinomialCount {
    std::uint64_t trials = 0;
    std::uint64_t ones = 0;
};

struct Frequency {
    double mean;
    double std_err;
};

// Plug-in estimate with the binomial standard error; a zero (or full) count
// falls back to the one-sided rule-of-three interval 3/n.
Frequency frequency_of(const BinomialCount& c) {
    const double n = static_cast<double>(c.trials);
    const double mean = static_cast<double>(c.ones) / n;
    double se = std::sqrt(mean * (1.0 - mean) / n);
    if (c.ones == 0 || c.ones == c.trials) se = 3.0 / n;
    return {mean, se};
}

// Prepare-and-measure on a single qubit: counts of readout 1.
BinomialCount sample_direct(const DiagonalSpam& q, std::uint64_t shots, std::uint64_t seed) {
    return parallel_accumulate<BinomialCount>(
        shots,
        [&](std::uint64_t begin, std::uint64_t end, BinomialCount& acc) {
            for (std::uint64_t s = begin; s < end; ++s) {
                ShotRng rng(seed, s);
                const int t = rng.bernoulli(q.delta_sp) ? 1 : 0;
                const int readout = t ^ (rng.bernoulli(q.delta_m) ? 1 : 0);
                acc.ones += static_cast<std::uint64_t>(readout);
            }
            acc.trials += end - begin;
        },
        [](BinomialCount& total, const BinomialCount& part) {
            total.trials += part.trials;
            total.ones += part.ones;
        });
}

// One MBAC round followed by a noisy readout of the cooled target; counts
// only post-selected shots.
BinomialCount sample_mbac_then_measure(const DiagonalSpam& target,
                                       std::span<const DiagonalSpam> ancillas,
                                       std::uint64_t shots, std::uint64_t seed) {
    return parallel_accumulate<BinomialCount>(
        shots,
        [&](std::uint64_t begin, std::uint64_t end, BinomialCount& acc) {
            for (std::uint64_t s = begin; s < end; ++s) {
                ShotRng rng(seed, s);
                const int t = rng.bernoulli(target.delta_sp) ? 1 : 0;
                bool accepted = true;
                for (const DiagonalSpam& ancilla : ancillas) {
                    int a = rng.bernoulli(ancilla.delta_sp) ? 1 : 0;
                    a ^= t;
                    if ((a ^ (rng.bernoulli(ancilla.delta_m) ? 1 : 0)) != 0) {
                        accepted = false;
                        break;
                    }
                }
                if (!accepted) continue;
                ++acc.trials;
                acc.ones += static_cast<std::uint64_t>(t ^ (rng.bernoulli(target.delta_m) ? 1 : 0));
            }
        },
        [](BinomialCount& total, const BinomialCount& part) {
            total.trials += part.trials;
            total.ones += part.ones;
        });
}

}  // namespace

SpamEstimate characterize(SimulatedDevice& device, const CharacterizeOptions& options) {
    if (options.shots_direct < 1 || options.shots_mbac < 1)
        throw DomainError("shot counts must be >= 1");
    if (options.k && *options.k < 2) throw DomainError("k must be >= 2");
    if (device.ancillas.empty()) throw CapacityError("device has no ancilla qubits");
    if (options.k && static_cast<std::size_t>(*options.k) - 1 > device.ancillas.size())
        throw CapacityError("k-1 exceeds the ancilla pool");
    if (!(options.bias_tolerance > 0.0)) throw DomainError("bias_tolerance must be positive");

    const DiagonalSpam target = reduce_to_diagonal(device.target.first, device.target.second);
    std::vector<DiagonalSpam> pool;
    pool.reserve(device.ancillas.size());
    for (const auto& [rho, m0] : device.ancillas) {
        const DiagonalSpam d = reduce_to_diagonal(rho, m0);
        if (!d.protocol_valid)
            throw DomainError("ancilla SPAM error reaches 1/2; cooling cannot converge");
        pool.push_back(d);
    }

    // Experiment 1: direct readout of the prepared target.
    const BinomialCount direct =
        sample_direct(target, options.shots_direct, derive_seed(options.seed, kTagDirectTarget));
    device.shots_used += options.shots_direct;
    const Frequency spam_t = frequency_of(direct);

    // Ancilla calibration. With an explicit k only the ancillas the protocol
    // touches are calibrated; auto-k surveys the whole pool because the
    // choice of k depends on the worst calibrated error.
    const std::size_t survey =
        options.k ? std::min<std::size_t>(static_cast<std::size_t>(*options.k) - 1, pool.size())
                  : pool.size();
    std::vector<double> spam_a(survey);
    for (std::size_t i = 0; i < survey; ++i) {
        const BinomialCount c = sample_direct(pool[i], options.shots_direct,
                                              derive_seed(options.seed, kTagAncillaBase + i));
        device.shots_used += options.shots_direct;
        spam_a[i] = frequency_of(c).mean;
    }

    int k = 0;
    if (options.k) {
        k = *options.k;
    } else {
        const double worst = *std::max_element(spam_a.begin(), spam_a.end());
        int needed = 1;
        const double r = spam_t.mean / options.bias_tolerance;
        if (r > 1.0 && worst > 0.0) needed = std::max(1, ancillas_for_ratio(r, worst));
        k = 1 + std::min<int>(needed, static_cast<int>(pool.size()));
    }

    // Experiment 2: cool with k-1 ancillas, then read the target out.
    const std::span<const DiagonalSpam> used(pool.data(), static_cast<std::size_t>(k - 1));
    const BinomialCount mbac = sample_mbac_then_measure(
        target, used, options.shots_mbac, derive_seed(options.seed, kTagMbac));
    device.shots_used += options.shots_mbac;
    if (mbac.trials == 0)
        throw EstimationError("post-selection rejected every shot", options.shots_mbac, 0);
    const Frequency m_t = frequency_of(mbac);

    const double sp_hat = invert_spam_for_sp(spam_t.mean, m_t.mean);
    // First-order propagation of (spam, m) errors through the inversion.
    const double denom = 1.0 - 2.0 * m_t.mean;
    const double d_sp_d_spam = 1.0 / denom;
    const double d_sp_d_m = (2.0 * spam_t.mean - 1.0) / (denom * denom);
    const double se_sp = std::sqrt(d_sp_d_spam * d_sp_d_spam * spam_t.std_err * spam_t.std_err +
                                   d_sp_d_m * d_sp_d_m * m_t.std_err * m_t.std_err);

    return SpamEstimate{
        .delta_spam_hat = spam_t.mean,
        .delta_m_hat = m_t.mean,
        .delta_sp_hat = sp_hat,
        .se_spam = spam_t.std_err,
        .se_m = m_t.std_err,
        .se_sp = se_sp,
        .residual_bias_bound =
            mbac_k_noisy_bound(sp_hat, std::span<const double>(spam_a.data(),
                                                               static_cast<std::size_t>(k - 1))),
        .k_used = k,
        .mbac_samples = options.shots_mbac,
        .mbac_accepted = mbac.trials,
    };
}

}  // namespace cooltrace
