// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cooltrace/noise.hpp"

namespace cooltrace {

/// sigma_z twirl of a state: the average (rho + Z rho Z)/2, which zeroes the
/// equatorial components.
BlochState z_twirl_state(const BlochState& rho);

/// sigma_z twirl of a measurement (Z gate inserted before readout, averaged).
Povm1Q z_twirl_measurement(const Povm1Q& m0);

/// Average of M0 with X(I - M0)X (an X gate before readout plus outcome
/// relabelling): pins the identity coefficient to 1.
Povm1Q x_relabel_measurement(const Povm1Q& m0);

/// Diagonal reduction of an arbitrary SPAM pair. delta values can reach
/// [0, 1]; protocol_valid is false when either is >= 1/2 (the pair is still
/// returned).
struct DiagonalSpam {
    double delta_sp;
    double delta_m;
    bool protocol_valid;
};

/// Applies both z twirls and the x relabelling, then reads off
/// delta_sp = (1 - sz)/2 and delta_m = (1 - mz)/2.
DiagonalSpam reduce_to_diagonal(const BlochState& rho, const Povm1Q& m0);

/// Ground-truth SPAM description of one simulated device: the target qubit
/// plus the ancilla pool, each an arbitrary (state, measurement) pair.
/// shots_used totals every sampled shot across experiments on this device.
struct SimulatedDevice {
    SimulatedDevice(std::pair<BlochState, Povm1Q> target_pair,
                    std::vector<std::pair<BlochState, Povm1Q>> ancilla_pairs)
        : target(std::move(target_pair)), ancillas(std::move(ancilla_pairs)) {}

    std::pair<BlochState, Povm1Q> target;
    std::vector<std::pair<BlochState, Povm1Q>> ancillas;
    std::uint64_t shots_used = 0;
};

/// Separated SPAM estimate for the target qubit.
struct SpamEstimate {
    double delta_spam_hat;
    double delta_m_hat;
    double delta_sp_hat;
    double se_spam;
    double se_m;
    double se_sp;
    double residual_bias_bound;  // product bound on the leftover SP error
    int k_used;
    std::uint64_t mbac_samples;
    std::uint64_t mbac_accepted;
};

struct CharacterizeOptions {
    std::optional<int> k;  // nullopt = auto-select from the residual tolerance
    std::uint64_t shots_direct = 1'000'000;
    std::uint64_t shots_mbac = 1'000'000;
    std::uint64_t seed = 0;
    double bias_tolerance = 1e-4;  // auto-k: residual_bias_bound target
};

/// Two-experiment separation of delta_sp and delta_m on the target:
/// (1) direct measurement gives delta_spam_hat, (2) a post-selected cooling
/// run followed by a target measurement gives delta_m_hat (biased upward by
/// at most residual_bias_bound), and the composition is inverted for
/// delta_sp_hat. Ancilla SPAM errors are calibrated with shots_direct shots
/// each, feeding the residual bound and auto-k.
SpamEstimate characterize(SimulatedDevice& device, const CharacterizeOptions& options);

}  // namespace cooltrace
