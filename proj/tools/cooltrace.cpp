// SPDX-License-Identifier: MIT
//
// cooltrace: algorithmic-cooling experiment driver.
//
// Subcommands emit one result table each (CSV or JSON). Exit codes:
//   0  success
//   1  runtime or estimation failure (including mc-validate mismatches)
//   2  invalid configuration
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cooltrace/errors.hpp"
#include "cooltrace/experiments.hpp"
#include "cooltrace/result_table.hpp"

namespace {

struct OutputSpec {
    std::string path;
    std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, OutputSpec& out) {
    cmd->add_option("--out", out.path, "output file path ('-' for stdout)")->required();
    cmd->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

void emit(const cooltrace::ResultTable& table, const OutputSpec& out) {
    const cooltrace::TableFormat format =
        out.format == "json" ? cooltrace::TableFormat::kJson : cooltrace::TableFormat::kCsv;
    if (out.path == "-") {
        cooltrace::write_table(table, format, std::cout);
        return;
    }
    std::ofstream file(out.path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out.path);
    cooltrace::write_table(table, format, file);
    if (!file.flush()) throw std::runtime_error("write failed: " + out.path);
}

// "start:stop:step" -> three doubles.
void parse_grid(const std::string& text, double& start, double& stop, double& step) {
    std::istringstream in(text);
    char c1 = 0, c2 = 0;
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
        throw CLI::ValidationError("--delta-sp-grid", "expected start:stop:step");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"algorithmic cooling and SPAM-separation experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a TOML file");
    app.set_version_flag("--version", std::string(cooltrace::kToolVersion));

    cooltrace::CompareConfig compare_cfg;
    OutputSpec compare_out;
    CLI::App* compare = app.add_subcommand("compare", "cooling-method comparison grid");
    compare->add_option("--delta", compare_cfg.deltas, "initial error values")
        ->required()
        ->delimiter(',');
    compare->add_option("--k-max", compare_cfg.k_max, "largest register size")
        ->capture_default_str();
    add_output_flags(compare, compare_out);

    cooltrace::NupperConfig nupper_cfg;
    OutputSpec nupper_out;
    std::string sp_grid_text = "0.01:0.45:0.01";
    CLI::App* nupper = app.add_subcommand("nupper", "expected-runs bound grid");
    nupper->add_option("--r", nupper_cfg.r_values, "cooling ratios")->required()->delimiter(',');
    nupper->add_option("--delta-m", nupper_cfg.delta_m_values, "ancilla measurement errors")
        ->required()
        ->delimiter(',');
    nupper->add_option("--delta-sp-grid", sp_grid_text, "preparation-error grid start:stop:step")
        ->capture_default_str();
    add_output_flags(nupper, nupper_out);

    cooltrace::McValidateConfig mcv_cfg;
    OutputSpec mcv_out;
    CLI::App* mcv = app.add_subcommand("mc-validate",
                                       "closed form vs exact simulator vs Monte Carlo");
    mcv->add_option("--shots", mcv_cfg.shots, "Monte Carlo shots per row")->capture_default_str();
    mcv->add_option("--seed", mcv_cfg.seed, "base RNG seed")->capture_default_str();
    mcv->add_option("--grid-points", mcv_cfg.grid_points, "number of validation rows")
        ->capture_default_str();
    add_output_flags(mcv, mcv_out);

    cooltrace::CharacterizeCliConfig chr_cfg;
    OutputSpec chr_out;
    CLI::App* chr = app.add_subcommand("characterize", "SPAM separation on a simulated device");
    chr->add_option("--sp", chr_cfg.sp, "target preparation error")->capture_default_str();
    chr->add_option("--m", chr_cfg.m, "target measurement error")->capture_default_str();
    chr->add_option("--ancilla-sp", chr_cfg.ancilla_sp, "ancilla preparation error")
        ->capture_default_str();
    chr->add_option("--ancilla-m", chr_cfg.ancilla_m, "ancilla measurement error")
        ->capture_default_str();
    chr->add_option("--k", chr_cfg.k, "register size (0 = auto)")->capture_default_str();
    chr->add_option("--shots", chr_cfg.shots, "shots per experiment stage")->capture_default_str();
    chr->add_option("--seed", chr_cfg.seed, "base RNG seed")->capture_default_str();
    add_output_flags(chr, chr_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit cleanly, bad flags do not
    }

    try {
        if (*compare) {
            emit(cooltrace::cmd_compare(compare_cfg), compare_out);
        } else if (*nupper) {
            parse_grid(sp_grid_text, nupper_cfg.sp_start, nupper_cfg.sp_stop, nupper_cfg.sp_step);
            emit(cooltrace::cmd_nupper(nupper_cfg), nupper_out);
        } else if (*mcv) {
            const cooltrace::ResultTable table = cooltrace::cmd_mc_validate(mcv_cfg);
            emit(table, mcv_out);
            if (!cooltrace::mc_validate_all_pass(table)) {
                std::cerr << "mc-validate: at least one row failed\n";
                return 1;
            }
        } else if (*chr) {
            const cooltrace::ResultTable table = cooltrace::cmd_characterize(chr_cfg);
            emit(table, chr_out);
            if (!table.rows.empty() && table.rows.front().front() != 0.0) {
                std::cerr << "characterize: estimation did not converge (status "
                          << cooltrace::format_double(table.rows.front().front()) << ")\n";
                return 1;
            }
        }
    } catch (const cooltrace::DomainError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const cooltrace::CapacityError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "invalid configuration: " << e.get_name() << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
