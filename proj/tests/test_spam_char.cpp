// SPDX-License-Identifier: MIT
#include <cmath>
#include <cstdlib>
#include <random>
#include <utility>
#include <vector>

#include <doctest.h>

#include "cooltrace/errors.hpp"
#include "cooltrace/noise.hpp"
#include "cooltrace/spam_char.hpp"

using namespace cooltrace;

namespace {

// Uniform random valid Bloch vector (rejection sampling inside the ball).
BlochState random_bloch(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        const double x = u(rng), y = u(rng), z = u(rng);
        if (x * x + y * y + z * z <= 1.0) return BlochState(x, y, z);
    }
}

// Uniform random valid POVM: Pauli part scaled into the positivity cone.
Povm1Q random_povm(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> ui(0.0, 2.0);
    while (true) {
        const double mi = ui(rng);
        const double x = u(rng), y = u(rng), z = u(rng);
        if (std::sqrt(x * x + y * y + z * z) <= std::min(mi, 2.0 - mi))
            return Povm1Q(mi, x, y, z);
    }
}

// Pauli-frame conjugations, written out independently of the library.
Povm1Q conj_z(const Povm1Q& m) { return Povm1Q(m.mi, -m.mx, -m.my, m.mz); }
Povm1Q x_complement(const Povm1Q& m) {
    // X (I - M0) X: complement flips the sign of the Bloch part, conjugation
    // by X then restores the x component and flips y and z back.
    return Povm1Q(2.0 - m.mi, -m.mx, m.my, m.mz);
}

// Diagonal ground-truth device: every qubit a (z-diagonal state, z-diagonal
// readout) pair.
SimulatedDevice diagonal_device(double sp, double m, double ancilla_sp, double ancilla_m,
                                int pool) {
    std::vector<std::pair<BlochState, Povm1Q>> ancillas;
    for (int i = 0; i < pool; ++i)
        ancillas.emplace_back(BlochState(0.0, 0.0, 1.0 - 2.0 * ancilla_sp),
                              Povm1Q(1.0, 0.0, 0.0, 1.0 - 2.0 * ancilla_m));
    return SimulatedDevice({BlochState(0.0, 0.0, 1.0 - 2.0 * sp),
                            Povm1Q(1.0, 0.0, 0.0, 1.0 - 2.0 * m)},
                           std::move(ancillas));
}

}  // namespace

TEST_CASE("twirls zero the equatorial components and pin the identity part") {
    const BlochState rho(0.3, -0.4, 0.8);
    const auto rho_d = z_twirl_state(rho);
    CHECK(rho_d.sx == 0.0);
    CHECK(rho_d.sy == 0.0);
    CHECK(rho_d.sz == 0.8);

    const Povm1Q m0(0.9, 0.2, -0.1, 0.7);
    const auto m_z = z_twirl_measurement(m0);
    CHECK(m_z.mi == 0.9);
    CHECK(m_z.mx == 0.0);
    CHECK(m_z.my == 0.0);
    CHECK(m_z.mz == 0.7);

    const auto m_x = x_relabel_measurement(m0);
    CHECK(m_x.mi == 1.0);
    CHECK(m_x.mx == 0.0);
    CHECK(m_x.my == -0.1);  // y and z survive the relabelled average
    CHECK(m_x.mz == 0.7);

    // All three maps are idempotent.
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        const auto s = z_twirl_state(random_bloch(rng));
        const auto s2 = z_twirl_state(s);
        CHECK(s2.sx == s.sx);
        CHECK(s2.sy == s.sy);
        CHECK(s2.sz == s.sz);
        const auto m = random_povm(rng);
        const auto mz2 = z_twirl_measurement(z_twirl_measurement(m));
        CHECK(mz2.mx == 0.0);
        CHECK(mz2.mi == m.mi);
        CHECK(mz2.mz == m.mz);
        const auto mx2 = x_relabel_measurement(x_relabel_measurement(m));
        CHECK(mx2.mi == 1.0);
        CHECK(mx2.my == m.my);
        CHECK(mx2.mz == m.mz);
    }
}

TEST_CASE("reduce_to_diagonal extracts flip probabilities that reproduce the error") {
    const auto d = reduce_to_diagonal(BlochState(0.3, -0.4, 0.8), Povm1Q(0.9, 0.2, -0.1, 0.7));
    CHECK(d.delta_sp == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(d.delta_m == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(d.protocol_valid);

    // Fully mixed preparation reduces to a coin flip and is flagged unusable.
    const auto mixed = reduce_to_diagonal(BlochState(0.0, 0.0, 0.0), Povm1Q(1.0, 0.0, 0.0, 1.0));
    CHECK(mixed.delta_sp == 0.5);
    CHECK(mixed.delta_m == 0.0);
    CHECK_FALSE(mixed.protocol_valid);

    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        const auto rho = random_bloch(rng);
        const auto m0 = random_povm(rng);
        const auto diag = reduce_to_diagonal(rho, m0);

        // The diagonal pair's SPAM error is exactly the composition of the
        // extracted flip probabilities.
        const BlochState rho_d(0.0, 0.0, 1.0 - 2.0 * diag.delta_sp);
        const Povm1Q m_d(1.0, 0.0, 0.0, 1.0 - 2.0 * diag.delta_m);
        CHECK(std::abs(spam_error(rho_d, m_d) - compose_spam(diag.delta_sp, diag.delta_m)) <
              1e-12);

        // Twirl-ensemble oracle: averaging the error over {I, Z} on the
        // preparation and {M, ZMZ, X(I-M)X, X(I-ZMZ)X} on the readout equals
        // the reduced pair's error.
        const BlochState rho_z(-rho.sx, -rho.sy, rho.sz);
        double avg = 0.0;
        for (const BlochState* s : {&rho, &rho_z})
            for (const Povm1Q& m : {m0, conj_z(m0), x_complement(m0), x_complement(conj_z(m0))})
                avg += spam_error(*s, m);
        avg /= 8.0;
        CHECK(std::abs(avg - spam_error(rho_d, m_d)) < 1e-12);
    }
}

TEST_CASE("characterize on a noiseless device returns exact zeros") {
    auto device = diagonal_device(0.0, 0.0, 0.0, 0.0, 3);
    const auto est = characterize(device, {.shots_direct = 10'000, .shots_mbac = 10'000});
    CHECK(est.delta_spam_hat == 0.0);
    CHECK(est.delta_m_hat == 0.0);
    CHECK(est.delta_sp_hat == 0.0);
    CHECK(est.residual_bias_bound == 0.0);
    CHECK(est.k_used == 2);  // nothing to cool: auto-k stays minimal
    CHECK(est.mbac_accepted == 10'000);
    CHECK(est.se_spam == 3.0 / 10'000.0);  // rule-of-three at a zero count
    // Auto-k surveys the full pool: target + 3 ancillas + cooling run.
    CHECK(device.shots_used == 5 * 10'000);
}

TEST_CASE("characterize separates delta_sp and delta_m on a noisy device") {
    auto device = diagonal_device(0.08, 0.05, 0.08, 0.05, 4);
    const auto est = characterize(device, {.k = 5, .shots_direct = 1'000'000,
                                           .shots_mbac = 1'000'000, .seed = 3});
    CHECK(est.k_used == 5);

    // Ground truth recovered within statistics plus the cooling residual.
    CHECK(std::abs(est.delta_spam_hat - compose_spam(0.08, 0.05)) <= 4.0 * est.se_spam);
    CHECK(std::abs(est.delta_m_hat - 0.05) <= 4.0 * est.se_m + est.residual_bias_bound);
    CHECK(std::abs(est.delta_sp_hat - 0.08) <= 4.0 * est.se_sp + est.residual_bias_bound);

    // Residual bound: four ancillas at measured spam ~ 0.122 give
    // 0.08 * (0.244)^4 ~ 2.8e-4.
    CHECK(est.residual_bias_bound > 0.0);
    CHECK(est.residual_bias_bound < 5e-4);

    // Closure: the returned triple is exactly consistent by construction.
    CHECK(std::abs(compose_spam(est.delta_sp_hat, est.delta_m_hat) - est.delta_spam_hat) < 1e-12);

    // Explicit k calibrates only the k-1 ancillas it uses.
    CHECK(device.shots_used == (1 + 4) * 1'000'000ULL + 1'000'000ULL);
    CHECK(est.mbac_samples == 1'000'000);
    CHECK(est.mbac_accepted > 0);
    CHECK(est.mbac_accepted < est.mbac_samples);
}

TEST_CASE("characterize auto-selects k to push the residual below tolerance") {
    auto device = diagonal_device(0.08, 0.05, 0.08, 0.05, 24);
    const auto est = characterize(device, {.shots_direct = 200'000, .shots_mbac = 200'000,
                                           .seed = 7, .bias_tolerance = 1e-4});
    // spam ~ 0.122 needs ceil(ln(0.122/1e-4)/ln(1/0.244)) = 6 ancillas.
    CHECK(est.k_used == 7);
    CHECK(est.residual_bias_bound < 1e-4 * 1.2);  // tolerance up to estimate noise
    CHECK(std::abs(est.delta_m_hat - 0.05) <= 4.0 * est.se_m + est.residual_bias_bound);
    // The whole pool was surveyed before choosing k.
    CHECK(device.shots_used == (1 + 24) * 200'000ULL + 200'000ULL);
}

TEST_CASE("characterize with ideal readout attributes everything to preparation") {
    auto device = diagonal_device(0.1, 0.0, 0.1, 0.0, 6);
    const auto est = characterize(device, {.k = 7, .shots_direct = 500'000,
                                           .shots_mbac = 500'000, .seed = 11});
    // The post-cooling readout is clean, so delta_m_hat is only the residual.
    CHECK(est.delta_m_hat <= est.residual_bias_bound + 4.0 * est.se_m);
    CHECK(std::abs(est.delta_spam_hat - 0.1) <= 4.0 * est.se_spam);
    CHECK(std::abs(est.delta_sp_hat - 0.1) <= 4.0 * est.se_sp + est.residual_bias_bound);
}

TEST_CASE("characterize is deterministic for a fixed seed across thread counts") {
    const CharacterizeOptions opts{.k = 3, .shots_direct = 50'000, .shots_mbac = 50'000,
                                   .seed = 19};
    auto d1 = diagonal_device(0.1, 0.05, 0.1, 0.05, 2);
    auto d2 = diagonal_device(0.1, 0.05, 0.1, 0.05, 2);
    setenv("COOLTRACE_THREADS", "1", 1);
    const auto serial = characterize(d1, opts);
    setenv("COOLTRACE_THREADS", "4", 1);
    const auto threaded = characterize(d2, opts);
    unsetenv("COOLTRACE_THREADS");
    CHECK(serial.delta_spam_hat == threaded.delta_spam_hat);
    CHECK(serial.delta_m_hat == threaded.delta_m_hat);
    CHECK(serial.delta_sp_hat == threaded.delta_sp_hat);
    CHECK(serial.mbac_accepted == threaded.mbac_accepted);
}

TEST_CASE("characterize rejects invalid requests up front") {
    auto device = diagonal_device(0.1, 0.05, 0.1, 0.05, 3);

    CHECK_THROWS_AS(characterize(device, {.k = 1}), DomainError);
    CHECK_THROWS_AS(characterize(device, {.k = 0}), DomainError);
    CHECK_THROWS_AS(characterize(device, {.k = 5}), CapacityError);  // needs 4 ancillas, has 3
    CHECK_THROWS_AS(characterize(device, {.shots_direct = 0}), DomainError);
    CHECK_THROWS_AS(characterize(device, {.shots_mbac = 0}), DomainError);
    CHECK_THROWS_AS(characterize(device, {.bias_tolerance = 0.0}), DomainError);
    CHECK(device.shots_used == 0);  // nothing was sampled by the rejected calls

    auto empty = SimulatedDevice({BlochState(0.0, 0.0, 0.8), Povm1Q(1.0, 0.0, 0.0, 0.9)}, {});
    CHECK_THROWS_AS(characterize(empty, {}), CapacityError);

    // An ancilla whose reduced SPAM error reaches 1/2 cannot cool anything.
    auto useless = SimulatedDevice(
        {BlochState(0.0, 0.0, 0.8), Povm1Q(1.0, 0.0, 0.0, 0.9)},
        {{BlochState(1.0, 0.0, 0.0), Povm1Q(1.0, 0.0, 0.0, 1.0)}});
    CHECK_THROWS_AS(characterize(useless, {}), DomainError);
}

TEST_CASE("characterize reports total post-selection loss as an estimation error") {
    // 30 hot, badly read ancillas: the all-zero readout has ~1e-7
    // probability, so 10^4 shots accept nothing.
    auto device = diagonal_device(0.1, 0.05, 0.3, 0.3, 30);
    try {
        characterize(device, {.k = 31, .shots_direct = 10'000, .shots_mbac = 10'000, .seed = 2});
        FAIL("expected EstimationError");
    } catch (const EstimationError& e) {
        CHECK(e.n_samples == 10'000);
        CHECK(e.n_accepted == 0);
    }
}

TEST_CASE("characterize surfaces incompatible estimates as InconsistencyError") {
    // A target with zero preparation error but real readout error: the
    // direct experiment sees ~0.2, the cooled readout also sees ~0.2, and
    // sampling noise makes the inverted delta_sp slightly negative about
    // half the time. Across 50 seeds both outcomes must appear, and every
    // non-throwing run must return a tiny delta_sp_hat.
    int threw = 0, returned = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto device = diagonal_device(0.0, 0.2, 0.05, 0.02, 2);
        try {
            const auto est = characterize(
                device, {.k = 3, .shots_direct = 40'000, .shots_mbac = 40'000, .seed = seed});
            ++returned;
            CHECK(est.delta_sp_hat < 0.025);
        } catch (const InconsistencyError&) {
            ++threw;
        }
    }
    CHECK(threw > 0);
    CHECK(returned > 0);
}
