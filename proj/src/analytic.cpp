// SPDX-License-Identifier: MIT
#include "cooltrace/analytic.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cooltrace {

namespace {

void require_protocol(double delta, const char* name) {
    if (!(delta >= 0.0 && delta < 0.5))
        throw DomainError(std::string(name) + " must lie in [0, 1/2), got " + std::to_string(delta));
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double bcs_step(double delta_1, double delta_t, double delta_2) {
    require_protocol(delta_1, "delta_1");
    require_protocol(delta_t, "delta_t");
    require_protocol(delta_2, "delta_2");
    return delta_1 * delta_t + delta_2 * delta_t + delta_1 * delta_2 -
           2.0 * delta_1 * delta_t * delta_2;
}

double bcs_iterate(double delta_1, double delta_2, double delta_t0, int rounds) {
    if (rounds < 0) throw DomainError("rounds must be nonnegative");
    require_protocol(delta_t0, "delta_t0");
    double delta_t = delta_t0;
    for (int i = 0; i < rounds; ++i) delta_t = bcs_step(delta_1, delta_t, delta_2);
    return delta_t;
}

double bcs_fixed_point(double delta_1, double delta_2) {
    require_protocol(delta_1, "delta_1");
    require_protocol(delta_2, "delta_2");
    return delta_1 * delta_2 / (1.0 - delta_1 - delta_2 + 2.0 * delta_1 * delta_2);
}

double mbac2_step(double delta_1, double delta_t) {
    require_protocol(delta_1, "delta_1");
    require_protocol(delta_t, "delta_t");
    return delta_1 * delta_t / (1.0 - delta_1 - delta_t + 2.0 * delta_1 * delta_t);
}

NoisyStepResult mbac2_failure(double delta_1, double delta_t) {
    require_protocol(delta_1, "delta_1");
    require_protocol(delta_t, "delta_t");
    const double p_fail = delta_1 + delta_t - 2.0 * delta_1 * delta_t;
    if (p_fail == 0.0)
        throw UnreachableBranchError("both errors are zero: the failure branch has probability 0");
    const double delta_out = delta_t * (1.0 - delta_1) / p_fail;
    return {delta_out, p_fail};
}

double mbac_k_closed(double delta, int k) {
    require_protocol(delta, "delta");
    if (k < 1) throw DomainError("k must be a positive integer");
    const double num = std::pow(delta, k);
    return num / (num + std::pow(1.0 - delta, k));
}

double mbac2_noisy_step(double delta_sp_t, double delta_sp_1, double delta_m_1) {
    require_protocol(delta_sp_t, "delta_sp_t");
    require_protocol(delta_sp_1, "delta_sp_1");
    require_protocol(delta_m_1, "delta_m_1");
    const double spam_1 = compose_spam(delta_sp_1, delta_m_1);
    const double denom =
        1.0 + (1.0 - 2.0 * delta_sp_1) * (1.0 - 2.0 * delta_sp_t) * (1.0 - 2.0 * delta_m_1);
    return delta_sp_t * 2.0 * spam_1 / denom;
}

double improvement_ratio(double delta_sp_t, double delta_sp_1, double delta_m_1) {
    require_protocol(delta_sp_t, "delta_sp_t");
    require_protocol(delta_sp_1, "delta_sp_1");
    require_protocol(delta_m_1, "delta_m_1");
    const double spam_1 = compose_spam(delta_sp_1, delta_m_1);
    if (spam_1 == 0.0) return kInf;  // noiseless ancilla projects the target exactly
    const double denom =
        1.0 + (1.0 - 2.0 * delta_sp_1) * (1.0 - 2.0 * delta_sp_t) * (1.0 - 2.0 * delta_m_1);
    return denom / (2.0 * spam_1);
}

double improvement_lower_bound(double delta_spam_1) {
    if (!(delta_spam_1 >= 0.0 && delta_spam_1 <= 0.5))
        throw DomainError("delta_spam_1 must lie in [0, 1/2]");
    if (delta_spam_1 == 0.0) return kInf;
    return 1.0 / (2.0 * delta_spam_1);
}

double mbac_k_noisy_bound(double delta_sp_t, std::span<const double> delta_spam_ancillas) {
    require_protocol(delta_sp_t, "delta_sp_t");
    double bound = delta_sp_t;
    for (double spam_i : delta_spam_ancillas) {
        require_protocol(spam_i, "delta_spam_i");
        bound *= 2.0 * spam_i;
    }
    return bound;
}

int ancillas_for_ratio(double r, double delta_spam_a) {
    if (!(r >= 1.0)) throw DomainError("cooling ratio r must be >= 1");
    if (!(delta_spam_a > 0.0 && delta_spam_a < 0.5))
        throw DomainError("delta_spam_a must lie in (0, 1/2); no finite ancilla count otherwise");
    // Round up: the returned k-1 guarantees (2*delta_spam_a)^-(k-1) >= r.
    const double k_minus_1 = std::log(r) / -std::log(2.0 * delta_spam_a);
    return static_cast<int>(std::ceil(k_minus_1));
}

double step_success_prob(double delta_sp_t_i, double delta_sp_a, double delta_m_a) {
    require_protocol(delta_sp_t_i, "delta_sp_t_i");
    require_protocol(delta_sp_a, "delta_sp_a");
    require_protocol(delta_m_a, "delta_m_a");
    return (1.0 - delta_sp_t_i - delta_sp_a + 2.0 * delta_sp_t_i * delta_sp_a) *
           (1.0 - delta_m_a);
}

TrialBound n_upper(double r, double delta_sp_t1, double delta_sp_a, double delta_m_a) {
    if (!(r >= 1.0)) throw DomainError("cooling ratio r must be >= 1");
    const double a = step_success_prob(delta_sp_t1, delta_sp_a, delta_m_a);
    const double spam_a = compose_spam(delta_sp_a, delta_m_a);
    const double b = 2.0 * spam_a;
    if (!(b < 1.0)) throw DomainError("2*delta_spam_a must be < 1 for the bound to exist");
    const double exponent = std::log(a) / std::log(b);
    return TrialBound{
        .ancillas_needed = ancillas_for_ratio(r, spam_a),
        .exponent = exponent,
        .n_upper = std::exp(exponent * std::log(r)),
    };
}

}  // namespace cooltrace
