// SPDX-License-Identifier: MIT
#pragma once

#include "cooltrace/errors.hpp"

namespace cooltrace {

/// Per-qubit state-preparation and measurement flip probabilities.
///
/// Both entries live in [0, 1). Values >= 1/2 are representable (the
/// simulator can heat states past 1/2) but rejected by the analytic
/// operations whose derivations assume delta < 1/2; `protocol_valid()`
/// checks that stricter condition.
struct SpamParams {
    SpamParams(double delta_sp, double delta_m);

    double delta_sp;
    double delta_m;

    bool protocol_valid() const { return delta_sp < 0.5 && delta_m < 0.5; }
};

/// One-qubit state in Pauli parametrization, rho = (I + s.sigma)/2.
/// Positive semidefiniteness requires |s| <= 1 (tolerance 1e-12).
struct BlochState {
    BlochState(double sx, double sy, double sz);

    double sx;
    double sy;
    double sz;
};

/// Two-outcome POVM, stored as the Pauli coefficients of M0:
/// M0 = (mi*I + mx*X + my*Y + mz*Z)/2, M1 = I - M0.
/// Validity (M0 >= 0 and M1 >= 0): 0 <= mi <= 2 and
/// |m| <= min(mi, 2 - mi) (tolerance 1e-12).
struct Povm1Q {
    Povm1Q(double mi, double mx, double my, double mz);

    double mi;
    double mx;
    double my;
    double mz;
};

/// The single physical scale hbar*omega/k_B (in temperature units) of the
/// bare sigma_z qubit Hamiltonian. Constants never enter individually.
struct ThermalScale {
    explicit ThermalScale(double energy_ratio);

    double energy_ratio;
};

/// Total SPAM error of a diagonal pair: delta_sp + delta_m - 2*delta_sp*delta_m.
double compose_spam(double delta_sp, double delta_m);

/// Solves compose_spam(x, delta_m) = delta_spam for x.
/// Throws SingularityError at delta_m = 1/2 and InconsistencyError when the
/// solution falls outside [0, 1].
double invert_spam_for_sp(double delta_spam, double delta_m);

/// Probability of an incorrect outcome when measuring the freshly prepared
/// state: 1 - Tr[rho M0].
double spam_error(const BlochState& rho, const Povm1Q& m0);

/// Temperature whose thermal state has excited population delta:
/// T = energy_ratio / ln(1/delta - 1). delta = 0 maps to T = 0.
double effective_temperature(double delta, const ThermalScale& scale);

/// Excited population of the thermal state at temperature t:
/// delta = 1/(exp(energy_ratio/t) + 1). Inverse of effective_temperature.
double delta_from_temperature(double t, const ThermalScale& scale);

}  // namespace cooltrace
