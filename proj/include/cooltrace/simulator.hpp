// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cooltrace/noise.hpp"

namespace cooltrace {

/// Diagonal POVM of a noisy readout: M0 = diag(1 - delta_m, delta_m).
struct MeasSpec {
    explicit MeasSpec(double delta_m);

    double delta_m;
};

/// Probability vector over the 2^n computational basis states of an n-qubit
/// register (density matrices here are always diagonal, so a classical
/// distribution is the exact state).
///
/// Bit convention: qubit 0 is the MOST significant bit of the basis index,
/// i.e. bit(index, q) = (index >> (n - 1 - q)) & 1.
class DiagonalState {
public:
    static constexpr int kMaxQubits = 24;  // dense 2^n vector

    /// |0...0> on n qubits.
    explicit DiagonalState(int n_qubits);
    /// Takes ownership of a distribution; probs.size() must be 2^n_qubits,
    /// entries nonnegative, sum within 1e-9 of 1.
    DiagonalState(int n_qubits, std::vector<double> probs);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return probs_.size(); }
    std::span<const double> probs() const { return probs_; }
    double prob(std::uint64_t basis) const { return probs_.at(basis); }

    /// Value of qubit q in basis index `basis`.
    int bit(std::uint64_t basis, int q) const {
        return static_cast<int>((basis >> (n_qubits_ - 1 - q)) & 1u);
    }

private:
    friend DiagonalState unchecked_state(int, std::vector<double>);
    struct Unchecked {};
    DiagonalState(Unchecked, int n_qubits, std::vector<double> probs);

    int n_qubits_;
    std::vector<double> probs_;
};

/// Outcome of measuring one qubit. A branch with probability below the
/// renormalization floor (1e-300) is absent.
struct MeasuredState {
    double p0;
    std::optional<DiagonalState> post0;
    std::optional<DiagonalState> post1;
};

struct StepRecord {
    int step;            // 1-based ancilla index
    double accept_prob;  // p_0 of this step
    double delta_t;      // target error after the step
};

/// Result of an exact post-selected protocol run.
struct ProtocolResult {
    double delta_out;
    double success_prob;  // product of per-step acceptance probabilities
    std::vector<StepRecord> per_step;
};

/// Monte Carlo estimate. `mean` is conditioned on the accepted event;
/// n_accepted counts how often that event occurred among n_samples. std_err
/// is the binomial standard error of `mean`, except that a degenerate count
/// (no hits, or all hits) reports the one-sided rule-of-three bound 3/n.
struct McEstimate {
    double mean;
    double std_err;
    std::uint64_t n_samples;
    std::uint64_t n_accepted;
    std::uint64_t seed;
};

/// Tensor product of per-qubit (1 - delta_sp, delta_sp) distributions.
DiagonalState product_state(std::span<const SpamParams> params);

/// Appends one fresh qubit with the given preparation error.
DiagonalState extend_with(const DiagonalState& state, const SpamParams& qubit);

DiagonalState apply_cnot(const DiagonalState& state, int control, int target);
DiagonalState apply_x(const DiagonalState& state, int q);
DiagonalState apply_cswap(const DiagonalState& state, int control, int t1, int t2);

/// POVM measurement of qubit q. The measured qubit is retained (not traced
/// out) in both branches; use discard_qubit afterwards.
MeasuredState measure_qubit(const DiagonalState& state, int q, const MeasSpec& meas);

/// Post-selected branch for the given outcome; throws UnreachableBranchError
/// if that branch has (near-)zero probability.
DiagonalState post_select(const DiagonalState& state, int q, const MeasSpec& meas, int outcome);

/// Marginal over the remaining qubits (partial trace of qubit q).
DiagonalState discard_qubit(const DiagonalState& state, int q);

/// Probability that qubit q reads 1.
double marginal_error(const DiagonalState& state, int q);

/// Full 3-qubit compression circuit (CNOT then CSWAP); returns the target
/// error. Equals bcs_step(d1, dt, d2).
double run_bcs_exact(double d1, double dt, double d2);

/// Sequential exact k-qubit run: per ancilla, prepare / CNOT from target /
/// measure / keep outcome 0 / discard. Never holds more than 2 live qubits.
ProtocolResult run_mbac_k_exact(const SpamParams& target, std::span<const SpamParams> ancillas);

/// Same protocol with every ancilla live at once (register cap applies);
/// cross-check for the sequential realization.
ProtocolResult run_mbac_k_exact_live(const SpamParams& target, std::span<const SpamParams> ancillas);

/// Descending sort of the probabilities, reassigned to basis states in index
/// order. Stable: equal probabilities keep ascending basis-index order.
DiagonalState sv_compress(const DiagonalState& state);

/// Qubit-0 error after sv_compress of the k-qubit product state at error
/// delta (optimal reversible cooling of one qubit out of k).
double run_sv_k(double delta, int k);

/// Shot-level sampler of the post-selected k-qubit protocol. mean = fraction
/// of accepted shots whose target bit is 1; n_accepted / n_samples estimates
/// the acceptance probability. Bit-identical for fixed (seed, shots)
/// regardless of threading.
McEstimate mc_run_mbac_k(const SpamParams& target, std::span<const SpamParams> ancillas,
                         std::uint64_t shots, std::uint64_t seed);

/// Shot-level sampler of the rejected branch of a 2-qubit round: mean =
/// fraction of rejected shots whose target bit is 1, n_accepted = rejected
/// shots (the conditioning event).
McEstimate mc_mbac2_failure(const SpamParams& target, const SpamParams& ancilla,
                            std::uint64_t shots, std::uint64_t seed);

/// Repeats full runs until one accepts, `trials` times; mean = average
/// number of runs per success (geometric sampling).
McEstimate mc_runs_to_success(const SpamParams& target, std::span<const SpamParams> ancillas,
                              std::uint64_t trials, std::uint64_t seed);

/// Shot-level sampler of the 3-qubit compression circuit (no post-selection);
/// mean = target-bit average.
McEstimate mc_run_bcs(double d1, double dt, double d2, std::uint64_t shots, std::uint64_t seed);

}  // namespace cooltrace
