// SPDX-License-Identifier: MIT
#include "cooltrace/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace cooltrace {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kBranchFloor = 1e-300;  // below this a branch is unreachable

void require_index(const DiagonalState& state, int q, const char* name) {
    if (q < 0 || q >= state.n_qubits())
        throw DomainError(std::string(name) + " index " + std::to_string(q) +
                          " out of range for " + std::to_string(state.n_qubits()) + " qubits");
}

void require_protocol(double delta, const char* name) {
    if (!(delta >= 0.0 && delta < 0.5))
        throw DomainError(std::string(name) + " must lie in [0, 1/2), got " + std::to_string(delta));
}

}  // namespace

MeasSpec::MeasSpec(double delta_m_) : delta_m(delta_m_) {
    if (!(delta_m >= 0.0 && delta_m < 1.0))
        throw DomainError("delta_m must lie in [0, 1), got " + std::to_string(delta_m));
}

DiagonalState::DiagonalState(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw DomainError("register needs at least one qubit");
    if (n_qubits > kMaxQubits)
        throw CapacityError("register of " + std::to_string(n_qubits) + " qubits exceeds the cap of " +
                            std::to_string(kMaxQubits));
    probs_.assign(std::uint64_t{1} << n_qubits, 0.0);
    probs_[0] = 1.0;
}

DiagonalState::DiagonalState(int n_qubits, std::vector<double> probs)
    : DiagonalState(Unchecked{}, n_qubits, std::move(probs)) {
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) throw DomainError("probabilities must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTol)
        throw DomainError("probabilities sum to " + std::to_string(sum) + ", expected 1");
}

DiagonalState::DiagonalState(Unchecked, int n_qubits, std::vector<double> probs)
    : n_qubits_(n_qubits), probs_(std::move(probs)) {
    if (n_qubits < 1) throw DomainError("register needs at least one qubit");
    if (n_qubits > kMaxQubits)
        throw CapacityError("register of " + std::to_string(n_qubits) + " qubits exceeds the cap of " +
                            std::to_string(kMaxQubits));
    if (probs_.size() != (std::uint64_t{1} << n_qubits))
        throw DomainError("probability vector has " + std::to_string(probs_.size()) +
                          " entries, expected 2^" + std::to_string(n_qubits));
}

// Internal constructor for distributions already known to be normalized.
DiagonalState unchecked_state(int n_qubits, std::vector<double> probs) {
    return DiagonalState(DiagonalState::Unchecked{}, n_qubits, std::move(probs));
}

DiagonalState product_state(std::span<const SpamParams> params) {
    if (params.empty()) throw DomainError("product_state needs at least one qubit");
    if (params.size() > DiagonalState::kMaxQubits)
        throw CapacityError("register of " + std::to_string(params.size()) +
                            " qubits exceeds the cap of " + std::to_string(DiagonalState::kMaxQubits));
    const int n = static_cast<int>(params.size());
    std::vector<double> probs{1.0};
    for (const SpamParams& p : params) {
        std::vector<double> next(probs.size() * 2);
        for (std::size_t b = 0; b < probs.size(); ++b) {
            next[2 * b] = probs[b] * (1.0 - p.delta_sp);
            next[2 * b + 1] = probs[b] * p.delta_sp;
        }
        probs = std::move(next);
    }
    return unchecked_state(n, std::move(probs));
}

DiagonalState extend_with(const DiagonalState& state, const SpamParams& qubit) {
    std::vector<double> next(state.dim() * 2);
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
        next[2 * b] = state.prob(b) * (1.0 - qubit.delta_sp);
        next[2 * b + 1] = state.prob(b) * qubit.delta_sp;
    }
    return unchecked_state(state.n_qubits() + 1, std::move(next));
}

DiagonalState apply_cnot(const DiagonalState& state, int control, int target) {
    require_index(state, control, "control");
    require_index(state, target, "target");
    if (control == target) throw DomainError("CNOT control and target must differ");
    const int n = state.n_qubits();
    const std::uint64_t cmask = std::uint64_t{1} << (n - 1 - control);
    const std::uint64_t tmask = std::uint64_t{1} << (n - 1 - target);
    std::vector<double> out(state.dim());
    for (std::uint64_t b = 0; b < state.dim(); ++b)
        out[(b & cmask) ? (b ^ tmask) : b] = state.prob(b);
    return unchecked_state(n, std::move(out));
}

DiagonalState apply_x(const DiagonalState& state, int q) {
    require_index(state, q, "qubit");
    const std::uint64_t mask = std::uint64_t{1} << (state.n_qubits() - 1 - q);
    std::vector<double> out(state.dim());
    for (std::uint64_t b = 0; b < state.dim(); ++b) out[b ^ mask] = state.prob(b);
    return unchecked_state(state.n_qubits(), std::move(out));
}

DiagonalState apply_cswap(const DiagonalState& state, int control, int t1, int t2) {
    require_index(state, control, "control");
    require_index(state, t1, "t1");
    require_index(state, t2, "t2");
    if (control == t1 || control == t2 || t1 == t2)
        throw DomainError("CSWAP needs three distinct qubits");
    const int n = state.n_qubits();
    const std::uint64_t cmask = std::uint64_t{1} << (n - 1 - control);
    const std::uint64_t m1 = std::uint64_t{1} << (n - 1 - t1);
    const std::uint64_t m2 = std::uint64_t{1} << (n - 1 - t2);
    std::vector<double> out(state.dim());
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
        std::uint64_t dest = b;
        if ((b & cmask) && static_cast<bool>(b & m1) != static_cast<bool>(b & m2))
            dest = b ^ m1 ^ m2;
        out[dest] = state.prob(b);
    }
    return unchecked_state(n, std::move(out));
}

MeasuredState measure_qubit(const DiagonalState& state, int q, const MeasSpec& meas) {
    require_index(state, q, "qubit");
    const std::uint64_t mask = std::uint64_t{1} << (state.n_qubits() - 1 - q);
    double p0 = 0.0;
    for (std::uint64_t b = 0; b < state.dim(); ++b)
        p0 += state.prob(b) * ((b & mask) ? meas.delta_m : 1.0 - meas.delta_m);
    const double p1 = 1.0 - p0;

    MeasuredState result{p0, std::nullopt, std::nullopt};
    if (p0 > kBranchFloor) {
        std::vector<double> post(state.dim());
        for (std::uint64_t b = 0; b < state.dim(); ++b)
            post[b] = state.prob(b) * ((b & mask) ? meas.delta_m : 1.0 - meas.delta_m) / p0;
        result.post0 = unchecked_state(state.n_qubits(), std::move(post));
    }
    if (p1 > kBranchFloor) {
        std::vector<double> post(state.dim());
        for (std::uint64_t b = 0; b < state.dim(); ++b)
            post[b] = state.prob(b) * ((b & mask) ? 1.0 - meas.delta_m : meas.delta_m) / p1;
        result.post1 = unchecked_state(state.n_qubits(), std::move(post));
    }
    return result;
}

DiagonalState post_select(const DiagonalState& state, int q, const MeasSpec& meas, int outcome) {
    if (outcome != 0 && outcome != 1) throw DomainError("measurement outcome must be 0 or 1");
    MeasuredState measured = measure_qubit(state, q, meas);
    auto& branch = outcome == 0 ? measured.post0 : measured.post1;
    if (!branch)
        throw UnreachableBranchError("outcome " + std::to_string(outcome) + " of qubit " +
                                     std::to_string(q) + " has probability 0");
    return *std::move(branch);
}

DiagonalState discard_qubit(const DiagonalState& state, int q) {
    require_index(state, q, "qubit");
    if (state.n_qubits() < 2) throw CapacityError("cannot discard the last remaining qubit");
    const int n = state.n_qubits();
    const int pos = n - 1 - q;  // bit position of q, counting from the LSB
    const std::uint64_t low = (std::uint64_t{1} << pos) - 1;
    std::vector<double> out(state.dim() / 2, 0.0);
    for (std::uint64_t b = 0; b < state.dim(); ++b)
        out[((b >> (pos + 1)) << pos) | (b & low)] += state.prob(b);
    return unchecked_state(n - 1, std::move(out));
}

double marginal_error(const DiagonalState& state, int q) {
    require_index(state, q, "qubit");
    const std::uint64_t mask = std::uint64_t{1} << (state.n_qubits() - 1 - q);
    double p = 0.0;
    for (std::uint64_t b = 0; b < state.dim(); ++b)
        if (b & mask) p += state.prob(b);
    return p;
}

double run_bcs_exact(double d1, double dt, double d2) {
    require_protocol(d1, "d1");
    require_protocol(dt, "dt");
    require_protocol(d2, "d2");
    // Register layout: qubit 0 = target, qubit 1 = s1, qubit 2 = s2.
    const SpamParams qubits[] = {{dt, 0.0}, {d1, 0.0}, {d2, 0.0}};
    DiagonalState state = product_state(qubits);
    state = apply_cnot(state, 0, 1);
    state = apply_cswap(state, 1, 0, 2);
    return marginal_error(state, 0);
}

ProtocolResult run_mbac_k_exact(const SpamParams& target, std::span<const SpamParams> ancillas) {
    const SpamParams just_target[] = {target};
    DiagonalState state = product_state(just_target);
    ProtocolResult result{target.delta_sp, 1.0, {}};
    result.per_step.reserve(ancillas.size());
    int step = 0;
    for (const SpamParams& ancilla : ancillas) {
        ++step;
        DiagonalState joint = apply_cnot(extend_with(state, ancilla), 0, 1);
        MeasuredState measured = measure_qubit(joint, 1, MeasSpec(ancilla.delta_m));
        if (!measured.post0)
            throw UnreachableBranchError("step " + std::to_string(step) +
                                         " has zero acceptance probability");
        state = discard_qubit(*measured.post0, 1);
        result.success_prob *= measured.p0;
        result.per_step.push_back({step, measured.p0, marginal_error(state, 0)});
    }
    result.delta_out = marginal_error(state, 0);
    return result;
}

ProtocolResult run_mbac_k_exact_live(const SpamParams& target,
                                     std::span<const SpamParams> ancillas) {
    std::vector<SpamParams> qubits;
    qubits.reserve(ancillas.size() + 1);
    qubits.push_back(target);
    qubits.insert(qubits.end(), ancillas.begin(), ancillas.end());
    DiagonalState state = product_state(qubits);
    for (int i = 1; i <= static_cast<int>(ancillas.size()); ++i) state = apply_cnot(state, 0, i);

    ProtocolResult result{target.delta_sp, 1.0, {}};
    // Measure all ancillas at the end; the diagonal POVMs commute, so the
    // ordering matches the sequential realization.
    for (int i = static_cast<int>(ancillas.size()); i >= 1; --i) {
        MeasuredState measured = measure_qubit(state, i, MeasSpec(ancillas[i - 1].delta_m));
        if (!measured.post0)
            throw UnreachableBranchError("ancilla " + std::to_string(i) +
                                         " has zero acceptance probability");
        state = discard_qubit(*measured.post0, i);
        result.success_prob *= measured.p0;
    }
    result.delta_out = marginal_error(state, 0);
    const int k_minus_1 = static_cast<int>(ancillas.size());
    result.per_step.push_back({k_minus_1, result.success_prob, result.delta_out});
    return result;
}

DiagonalState sv_compress(const DiagonalState& state) {
    std::vector<double> sorted(state.probs().begin(), state.probs().end());
    // Stable: equal probabilities keep ascending basis-index order.
    std::stable_sort(sorted.begin(), sorted.end(), std::greater<>());
    return unchecked_state(state.n_qubits(), std::move(sorted));
}

double run_sv_k(double delta, int k) {
    require_protocol(delta, "delta");
    if (k < 1) throw DomainError("k must be a positive integer");
    if (k > DiagonalState::kMaxQubits)
        throw CapacityError("SV-" + std::to_string(k) + " exceeds the register cap of " +
                            std::to_string(DiagonalState::kMaxQubits));
    const std::vector<SpamParams> qubits(static_cast<std::size_t>(k), SpamParams(delta, 0.0));
    return marginal_error(sv_compress(product_state(qubits)), 0);
}

}  // namespace cooltrace
