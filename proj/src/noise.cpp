// SPDX-License-Identifier: MIT
#include "cooltrace/noise.hpp"

#include <cmath>
#include <string>

namespace cooltrace {

namespace {

constexpr double kPsdTol = 1e-12;

void require_prob(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0))
        throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
}

void require_sub_unit(double value, const char* name) {
    if (!(value >= 0.0 && value < 1.0))
        throw DomainError(std::string(name) + " must lie in [0, 1), got " + std::to_string(value));
}

}  // namespace

SpamParams::SpamParams(double delta_sp_, double delta_m_) : delta_sp(delta_sp_), delta_m(delta_m_) {
    require_sub_unit(delta_sp, "delta_sp");
    require_sub_unit(delta_m, "delta_m");
}

BlochState::BlochState(double sx_, double sy_, double sz_) : sx(sx_), sy(sy_), sz(sz_) {
    const double norm2 = sx * sx + sy * sy + sz * sz;
    if (!(norm2 <= 1.0 + kPsdTol))
        throw DomainError("Bloch vector length " + std::to_string(std::sqrt(norm2)) +
                          " exceeds 1 (state not positive semidefinite)");
}

Povm1Q::Povm1Q(double mi_, double mx_, double my_, double mz_)
    : mi(mi_), mx(mx_), my(my_), mz(mz_) {
    if (!(mi >= 0.0 && mi <= 2.0))
        throw DomainError("POVM identity coefficient must lie in [0, 2], got " + std::to_string(mi));
    const double norm = std::sqrt(mx * mx + my * my + mz * mz);
    if (!(norm <= std::min(mi, 2.0 - mi) + kPsdTol))
        throw DomainError("POVM Pauli vector length " + std::to_string(norm) +
                          " violates 0 <= M0 <= I");
}

ThermalScale::ThermalScale(double energy_ratio_) : energy_ratio(energy_ratio_) {
    if (!(energy_ratio > 0.0)) throw DomainError("energy_ratio must be positive");
}

double compose_spam(double delta_sp, double delta_m) {
    require_prob(delta_sp, "delta_sp");
    require_prob(delta_m, "delta_m");
    return delta_sp + delta_m - 2.0 * delta_sp * delta_m;
}

double invert_spam_for_sp(double delta_spam, double delta_m) {
    require_prob(delta_spam, "delta_spam");
    require_prob(delta_m, "delta_m");
    if (delta_m == 0.5)
        throw SingularityError(
            "delta_m = 1/2: total SPAM error is 1/2 for every state, delta_sp is unrecoverable");
    const double result = (delta_spam - delta_m) / (1.0 - 2.0 * delta_m);
    if (!(result >= 0.0 && result <= 1.0))
        throw InconsistencyError("inverted delta_sp = " + std::to_string(result) +
                                 " lies outside [0, 1]; the estimates are incompatible");
    return result;
}

double spam_error(const BlochState& rho, const Povm1Q& m0) {
    return 1.0 - 0.5 * (m0.mi + rho.sx * m0.mx + rho.sy * m0.my + rho.sz * m0.mz);
}

double effective_temperature(double delta, const ThermalScale& scale) {
    if (delta == 0.0) return 0.0;  // ground state
    if (!(delta > 0.0 && delta < 0.5))
        throw DomainError("effective temperature is defined for delta in [0, 1/2), got " +
                          std::to_string(delta));
    return scale.energy_ratio / std::log(1.0 / delta - 1.0);
}

double delta_from_temperature(double t, const ThermalScale& scale) {
    if (!(t > 0.0)) throw DomainError("temperature must be positive, got " + std::to_string(t));
    return 1.0 / (std::exp(scale.energy_ratio / t) + 1.0);
}

}  // namespace cooltrace
