// SPDX-License-Identifier: MIT
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "cooltrace/analytic.hpp"
#include "cooltrace/errors.hpp"
#include "cooltrace/noise.hpp"
#include "cooltrace/simulator.hpp"
#include "cooltrace/spam_char.hpp"

namespace py = pybind11;
using namespace cooltrace;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Measurement-based algorithmic cooling and SPAM separation";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InconsistencyError>(m, "InconsistencyError", PyExc_RuntimeError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<UnreachableBranchError>(m, "UnreachableBranchError", PyExc_RuntimeError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);
    py::register_exception<EstimationError>(m, "EstimationError", PyExc_RuntimeError);

    py::class_<SpamParams>(m, "SpamParams")
        .def(py::init<double, double>(), py::arg("delta_sp"), py::arg("delta_m"))
        .def_readonly("delta_sp", &SpamParams::delta_sp)
        .def_readonly("delta_m", &SpamParams::delta_m)
        .def("protocol_valid", &SpamParams::protocol_valid)
        .def("__repr__", [](const SpamParams& p) {
            return "SpamParams(delta_sp=" + std::to_string(p.delta_sp) +
                   ", delta_m=" + std::to_string(p.delta_m) + ")";
        });

    py::class_<BlochState>(m, "BlochState")
        .def(py::init<double, double, double>(), py::arg("sx"), py::arg("sy"), py::arg("sz"))
        .def_readonly("sx", &BlochState::sx)
        .def_readonly("sy", &BlochState::sy)
        .def_readonly("sz", &BlochState::sz);

    py::class_<Povm1Q>(m, "Povm1Q")
        .def(py::init<double, double, double, double>(), py::arg("mi"), py::arg("mx"),
             py::arg("my"), py::arg("mz"))
        .def_readonly("mi", &Povm1Q::mi)
        .def_readonly("mx", &Povm1Q::mx)
        .def_readonly("my", &Povm1Q::my)
        .def_readonly("mz", &Povm1Q::mz);

    py::class_<ThermalScale>(m, "ThermalScale")
        .def(py::init<double>(), py::arg("energy_ratio"))
        .def_readonly("energy_ratio", &ThermalScale::energy_ratio);

    m.def("compose_spam", &compose_spam, py::arg("delta_sp"), py::arg("delta_m"));
    m.def("invert_spam_for_sp", &invert_spam_for_sp, py::arg("delta_spam"), py::arg("delta_m"));
    m.def("spam_error", &spam_error, py::arg("rho"), py::arg("m0"));
    m.def("effective_temperature", &effective_temperature, py::arg("delta"), py::arg("scale"));
    m.def("delta_from_temperature", &delta_from_temperature, py::arg("temperature"),
          py::arg("scale"));

    py::class_<NoisyStepResult>(m, "NoisyStepResult")
        .def_readonly("delta_out", &NoisyStepResult::delta_out)
        .def_readonly("success_prob", &NoisyStepResult::success_prob);

    py::class_<TrialBound>(m, "TrialBound")
        .def_readonly("ancillas_needed", &TrialBound::ancillas_needed)
        .def_readonly("exponent", &TrialBound::exponent)
        .def_readonly("n_upper", &TrialBound::n_upper);

    m.def("bcs_step", &bcs_step, py::arg("delta_1"), py::arg("delta_t"), py::arg("delta_2"));
    m.def("bcs_iterate", &bcs_iterate, py::arg("delta_1"), py::arg("delta_2"),
          py::arg("delta_t0"), py::arg("rounds"));
    m.def("bcs_fixed_point", &bcs_fixed_point, py::arg("delta_1"), py::arg("delta_2"));
    m.def("mbac2_step", &mbac2_step, py::arg("delta_1"), py::arg("delta_t"));
    m.def("mbac2_failure", &mbac2_failure, py::arg("delta_1"), py::arg("delta_t"));
    m.def("mbac_k_closed", &mbac_k_closed, py::arg("delta"), py::arg("k"));
    m.def("mbac2_noisy_step", &mbac2_noisy_step, py::arg("delta_sp_t"), py::arg("delta_sp_1"),
          py::arg("delta_m_1"));
    m.def("improvement_ratio", &improvement_ratio, py::arg("delta_sp_t"), py::arg("delta_sp_1"),
          py::arg("delta_m_1"));
    m.def("improvement_lower_bound", &improvement_lower_bound, py::arg("delta_spam_1"));
    m.def(
        "mbac_k_noisy_bound",
        [](double delta_sp_t, const std::vector<double>& spams) {
            return mbac_k_noisy_bound(delta_sp_t, spams);
        },
        py::arg("delta_sp_t"), py::arg("delta_spam_ancillas"));
    m.def("ancillas_for_ratio", &ancillas_for_ratio, py::arg("r"), py::arg("delta_spam_a"));
    m.def("step_success_prob", &step_success_prob, py::arg("delta_sp_t_i"), py::arg("delta_sp_a"),
          py::arg("delta_m_a"));
    m.def("n_upper", &n_upper, py::arg("r"), py::arg("delta_sp_t1"), py::arg("delta_sp_a"),
          py::arg("delta_m_a"));

    py::class_<StepRecord>(m, "StepRecord")
        .def_readonly("step", &StepRecord::step)
        .def_readonly("accept_prob", &StepRecord::accept_prob)
        .def_readonly("delta_t", &StepRecord::delta_t);

    py::class_<ProtocolResult>(m, "ProtocolResult")
        .def_readonly("delta_out", &ProtocolResult::delta_out)
        .def_readonly("success_prob", &ProtocolResult::success_prob)
        .def_readonly("per_step", &ProtocolResult::per_step);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_err", &McEstimate::std_err)
        .def_readonly("n_samples", &McEstimate::n_samples)
        .def_readonly("n_accepted", &McEstimate::n_accepted)
        .def_readonly("seed", &McEstimate::seed);

    m.def("run_bcs_exact", &run_bcs_exact, py::arg("delta_1"), py::arg("delta_t"),
          py::arg("delta_2"));
    m.def(
        "run_mbac_k_exact",
        [](const SpamParams& target, const std::vector<SpamParams>& ancillas) {
            return run_mbac_k_exact(target, ancillas);
        },
        py::arg("target"), py::arg("ancillas"));
    m.def("run_sv_k", &run_sv_k, py::arg("delta"), py::arg("k"));
    m.def(
        "mc_run_mbac_k",
        [](const SpamParams& target, const std::vector<SpamParams>& ancillas,
           std::uint64_t shots, std::uint64_t seed) {
            return mc_run_mbac_k(target, ancillas, shots, seed);
        },
        py::arg("target"), py::arg("ancillas"), py::arg("shots"), py::arg("seed"));
    m.def("mc_mbac2_failure", &mc_mbac2_failure, py::arg("target"), py::arg("ancilla"),
          py::arg("shots"), py::arg("seed"));
    m.def(
        "mc_runs_to_success",
        [](const SpamParams& target, const std::vector<SpamParams>& ancillas,
           std::uint64_t trials, std::uint64_t seed) {
            return mc_runs_to_success(target, ancillas, trials, seed);
        },
        py::arg("target"), py::arg("ancillas"), py::arg("trials"), py::arg("seed"));
    m.def("mc_run_bcs", &mc_run_bcs, py::arg("delta_1"), py::arg("delta_t"), py::arg("delta_2"),
          py::arg("shots"), py::arg("seed"));

    py::class_<DiagonalSpam>(m, "DiagonalSpam")
        .def_readonly("delta_sp", &DiagonalSpam::delta_sp)
        .def_readonly("delta_m", &DiagonalSpam::delta_m)
        .def_readonly("protocol_valid", &DiagonalSpam::protocol_valid);

    m.def("z_twirl_state", &z_twirl_state, py::arg("rho"));
    m.def("z_twirl_measurement", &z_twirl_measurement, py::arg("m0"));
    m.def("x_relabel_measurement", &x_relabel_measurement, py::arg("m0"));
    m.def("reduce_to_diagonal", &reduce_to_diagonal, py::arg("rho"), py::arg("m0"));

    py::class_<SimulatedDevice>(m, "SimulatedDevice")
        .def(py::init<std::pair<BlochState, Povm1Q>,
                      std::vector<std::pair<BlochState, Povm1Q>>>(),
             py::arg("target"), py::arg("ancillas"))
        .def_readonly("shots_used", &SimulatedDevice::shots_used);

    py::class_<SpamEstimate>(m, "SpamEstimate")
        .def_readonly("delta_spam_hat", &SpamEstimate::delta_spam_hat)
        .def_readonly("delta_m_hat", &SpamEstimate::delta_m_hat)
        .def_readonly("delta_sp_hat", &SpamEstimate::delta_sp_hat)
        .def_readonly("se_spam", &SpamEstimate::se_spam)
        .def_readonly("se_m", &SpamEstimate::se_m)
        .def_readonly("se_sp", &SpamEstimate::se_sp)
        .def_readonly("residual_bias_bound", &SpamEstimate::residual_bias_bound)
        .def_readonly("k_used", &SpamEstimate::k_used)
        .def_readonly("mbac_samples", &SpamEstimate::mbac_samples)
        .def_readonly("mbac_accepted", &SpamEstimate::mbac_accepted);

    m.def(
        "characterize",
        [](SimulatedDevice& device, std::optional<int> k, std::uint64_t shots_direct,
           std::uint64_t shots_mbac, std::uint64_t seed, double bias_tolerance) {
            CharacterizeOptions options;
            options.k = k;
            options.shots_direct = shots_direct;
            options.shots_mbac = shots_mbac;
            options.seed = seed;
            options.bias_tolerance = bias_tolerance;
            return characterize(device, options);
        },
        py::arg("device"), py::arg("k") = std::nullopt, py::arg("shots_direct") = 1'000'000,
        py::arg("shots_mbac") = 1'000'000, py::arg("seed") = 0,
        py::arg("bias_tolerance") = 1e-4);
}
