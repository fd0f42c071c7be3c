// SPDX-License-Identifier: MIT
#pragma once

#include <span>

#include "cooltrace/noise.hpp"

namespace cooltrace {

/// Output error and acceptance probability of one noisy protocol step.
struct NoisyStepResult {
    double delta_out;
    double success_prob;
};

/// Expected-runs bound for a requested cooling ratio r:
/// n_upper = r^exponent with exponent = ln(A)/ln(B).
struct TrialBound {
    int ancillas_needed;
    double exponent;
    double n_upper;
};

/// Target error after one 3-qubit compression round (CNOT + CSWAP) with
/// ancilla errors delta_1, delta_2 and target error delta_t.
double bcs_step(double delta_1, double delta_t, double delta_2);

/// Repeats bcs_step with fixed ancilla errors and evolving target error.
double bcs_iterate(double delta_1, double delta_2, double delta_t0, int rounds);

/// Steady state of bcs_step under infinitely many rounds with fresh ancillas.
double bcs_fixed_point(double delta_1, double delta_2);

/// Target error after one successful post-selected round with ancilla error
/// delta_1 and ideal ancilla measurement.
double mbac2_step(double delta_1, double delta_t);

/// Rejected-branch target error and the failure probability of one round.
/// success_prob carries p_fail. Throws UnreachableBranchError when
/// delta_1 = delta_t = 0 (the branch has probability zero).
NoisyStepResult mbac2_failure(double delta_1, double delta_t);

/// Target error after a successful k-qubit run with all errors equal:
/// delta^k / (delta^k + (1-delta)^k). k = 1 is the initial error.
double mbac_k_closed(double delta, int k);

/// One successful round with a noisily measured ancilla
/// (delta_sp_1, delta_m_1). Reduces to mbac2_step at delta_m_1 = 0.
double mbac2_noisy_step(double delta_sp_t, double delta_sp_1, double delta_m_1);

/// Cooling ratio delta_sp_t / mbac2_noisy_step(...). Returns +inf when the
/// ancilla SPAM error is zero.
double improvement_ratio(double delta_sp_t, double delta_sp_1, double delta_m_1);

/// Guaranteed single-round ratio 1/(2*delta_spam_1); +inf at zero.
double improvement_lower_bound(double delta_spam_1);

/// Product bound on the target error after one successful run with the given
/// ancilla SPAM errors: delta_sp_t * prod_i(2*delta_spam_i).
double mbac_k_noisy_bound(double delta_sp_t, std::span<const double> delta_spam_ancillas);

/// Smallest ancilla count k-1 whose guaranteed ratio (2*delta_spam_a)^-(k-1)
/// reaches r. Rounds up: the result guarantees ratio >= r.
int ancillas_for_ratio(double r, double delta_spam_a);

/// Probability of accepting step i of a run, given the current target error.
double step_success_prob(double delta_sp_t_i, double delta_sp_a, double delta_m_a);

/// Upper bound on the expected number of runs needed to reach cooling ratio
/// r, with A = step_success_prob at the first step and B = 2*delta_spam_a.
TrialBound n_upper(double r, double delta_sp_t1, double delta_sp_a, double delta_m_a);

}  // namespace cooltrace
