#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "aggspec/config.hpp"
#include "aggspec/errors.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string preset;
    std::string methods;
    std::string out_path;
    std::vector<double> grid;
    std::vector<std::string> overrides;
    int threads = -1;
    bool print_config = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "config file (INI; applied on top of --preset)");
    cmd->add_option("--preset", opt.preset, "built-in scenario: dimer-pdi, lambda, fig3-sweep");
    cmd->add_option("--methods", opt.methods, "comma list of exact, cpa, order:<k>");
    cmd->add_option("--out", opt.out_path, "output file (default: stdout)");
    cmd->add_option("--grid", opt.grid, "frequency grid start,stop,count (eV)")
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--threads", opt.threads, "grid evaluation threads (0 = all cores)");
    cmd->add_option("--set", opt.overrides, "single key override, section.key=value")
        ->take_all();
    cmd->add_flag("--print-config", opt.print_config,
                  "print the fully expanded config and exit");
}

aggspec::RunConfig resolve(const CommonOptions& opt) {
    aggspec::RunConfig cfg;
    bool have_base = false;
    if (!opt.preset.empty()) {
        cfg = aggspec::preset_config(opt.preset);
        have_base = true;
    }
    if (!opt.config_path.empty()) {
        aggspec::apply_config_file(cfg, opt.config_path, /*require_complete=*/!have_base);
        have_base = true;
    }
    if (!have_base) throw std::invalid_argument("need --preset and/or --config");
    for (const auto& assignment : opt.overrides) aggspec::apply_override(cfg, assignment);
    if (!opt.methods.empty()) cfg.methods = aggspec::parse_methods(opt.methods);
    if (!opt.grid.empty())
        cfg.grid = aggspec::FrequencyGrid{opt.grid[0], opt.grid[1],
                                          static_cast<int>(opt.grid[2])};
    if (!opt.out_path.empty()) cfg.out_path = opt.out_path;
    if (opt.threads >= 0) cfg.threads = opt.threads;
    cfg.validate();
    return cfg;
}

// Content is fully materialized before the file is opened, so a failed run
// never leaves a partial file behind.
void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::invalid_argument("failed while writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "aggspec: linear absorption spectra of all-to-all coupled vibronic molecular\n"
        "aggregates (block-tridiagonal resolvent, zeroth-order closed form, and a\n"
        "brute-force site-basis cross-check)"};
    app.require_subcommand(1);

    CommonOptions spectrum_opt;
    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "intensity columns over a frequency grid");
    add_common(spectrum_cmd, spectrum_opt);

    CommonOptions sweep_opt;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "spectra across a range of collective couplings");
    add_common(sweep_cmd, sweep_opt);

    double tol_scale = 1.0;
    std::string validate_out;
    auto* validate_cmd = app.add_subcommand(
        "validate", "cross-check symmetric-basis spectra against the site-basis reference");
    validate_cmd->add_option("--tol-scale", tol_scale,
                             "multiply the pass tolerance (default 1)");
    validate_cmd->add_option("--out", validate_out, "also write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spectrum_cmd->parsed()) {
            const aggspec::RunConfig cfg = resolve(spectrum_opt);
            if (spectrum_opt.print_config) {
                std::fputs(aggspec::dump_config(cfg).c_str(), stdout);
                return 0;
            }
            emit(cfg.out_path, aggspec::spectrum_csv(aggspec::run_spectrum(cfg)));
        } else if (sweep_cmd->parsed()) {
            const aggspec::RunConfig cfg = resolve(sweep_opt);
            if (sweep_opt.print_config) {
                std::fputs(aggspec::dump_config(cfg).c_str(), stdout);
                return 0;
            }
            emit(cfg.out_path, aggspec::sweep_csv(aggspec::run_sweep(cfg)));
        } else if (validate_cmd->parsed()) {
            const aggspec::ValidateReport report = aggspec::run_validate(tol_scale);
            std::fputs(report.text.c_str(), stdout);
            if (!validate_out.empty()) emit(validate_out, report.text);
            if (!report.pass) return 4;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const aggspec::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
