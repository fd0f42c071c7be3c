// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cooltrace {

/// A value lies outside the domain an operation's derivation assumes.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The requested inversion is singular (e.g. delta_m = 1/2: the total SPAM
/// error is 1/2 regardless of the state, so delta_sp is unrecoverable).
struct SingularityError : DomainError {
    using DomainError::DomainError;
};

/// Estimates are mutually incompatible (e.g. an inverted probability lands
/// outside [0, 1]).
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A register or grid exceeds a hard implementation cap.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A post-selection branch has probability zero (or below the
/// renormalization floor) and carries no state.
struct UnreachableBranchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A run-until-success process has zero success probability.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Monte Carlo estimate is undefined; carries the acceptance statistics
/// so callers can report how the run failed.
struct EstimationError : std::runtime_error {
    EstimationError(const std::string& what, std::uint64_t samples, std::uint64_t accepted)
        : std::runtime_error(what), n_samples(samples), n_accepted(accepted) {}
    std::uint64_t n_samples;
    std::uint64_t n_accepted;
};

}  // namespace cooltrace
