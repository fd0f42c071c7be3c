// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "cooltrace/result_table.hpp"

namespace cooltrace {

/// Inclusive arithmetic grid start, start+step, ... up to stop (half-step
/// slack against rounding).
std::vector<double> grid_values(double start, double stop, double step);

/// Cooling-method comparison: columns (delta_initial, k, delta_mbac,
/// delta_sv) for k = 1..k_max at each initial error.
struct CompareConfig {
    std::vector<double> deltas;
    int k_max = 8;
};
ResultTable cmd_compare(const CompareConfig& config);

/// Expected-runs bound grid: columns (delta_sp, delta_m_a, r, n_upper) with
/// the target and ancillas sharing delta_sp.
struct NupperConfig {
    std::vector<double> r_values;
    std::vector<double> delta_m_values;
    double sp_start = 0.01;
    double sp_stop = 0.45;
    double sp_step = 0.01;
};
ResultTable cmd_nupper(const NupperConfig& config);

/// Three-way validation (closed form vs exact simulator vs Monte Carlo) over
/// a seeded random parameter grid. Row passes when
/// |exact - analytic| < 1e-12 and |mc - exact| < 4*std_err.
struct McValidateConfig {
    std::uint64_t shots = 100'000;
    std::uint64_t seed = 1;
    int grid_points = 100;
};
ResultTable cmd_mc_validate(const McValidateConfig& config);

/// True iff every row of a cmd_mc_validate table passed.
bool mc_validate_all_pass(const ResultTable& table);

/// SPAM separation on one simulated ground-truth device (diagonal errors
/// identical across ancillas). k = 0 selects k automatically.
struct CharacterizeCliConfig {
    double sp = 0.1;
    double m = 0.05;
    double ancilla_sp = 0.1;
    double ancilla_m = 0.05;
    int k = 0;
    std::uint64_t shots = 1'000'000;
    std::uint64_t seed = 1;
};
ResultTable cmd_characterize(const CharacterizeCliConfig& config);

}  // namespace cooltrace
