#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aggspec/hamiltonian.hpp"
#include "aggspec/monomer.hpp"
#include "aggspec/response.hpp"

namespace aggspec {

struct Method {
    enum class Kind { Exact, OrderK, Cpa };
    Kind kind = Kind::Exact;
    int k = 0;  // only for OrderK

    std::string column_name() const;  // sigma_exact / sigma_k<k> / sigma_cpa
    std::string spec_string() const;  // exact / order:<k> / cpa
};

// Fully resolved run description: monomer spec plus overrides, aggregate,
// grid, methods, sweep axis, output. Built from a preset, a config file, or
// both (preset first, file keys on top).
struct RunConfig {
    // [monomer]
    DisplacedOscillatorSpec spec;
    std::optional<std::vector<double>> fc_override;        // row-major (M_g+1)x(M_e+1)
    std::optional<std::vector<double>> energies_override;  // M_g+1 ground then M_e+1 excited
    double dipole_mag = 1.0;

    // [aggregate]
    AggregateConfig aggregate;
    int k_max = -1;  // -1: full chain

    // [grid]; when absent, defaults to omega_00 +- 4*omega_v with 4001 points
    std::optional<FrequencyGrid> grid;

    // [output]
    std::vector<Method> methods = {Method{Method::Kind::Exact, 0}};
    std::string out_path;  // empty: stdout

    // [sweep], coupling axis in units NJ/omega_v
    double sweep_start = -3.0;
    double sweep_stop = 3.0;
    int sweep_count = 121;

    int threads = 0;  // 0: hardware concurrency

    MonomerModel build_model() const;  // applies overrides, validates
    FrequencyGrid effective_grid() const;
    void validate() const;
};

// Compiled-in scenario presets: "dimer-pdi" (two-monomer aggregate, unit
// overlaps, measured dye parameters), "lambda" (same monomer truncation with
// the aggregate size left for overriding), "fig3-sweep" (S = 1/2 vibronic
// progression swept across coupling regimes at zeroth order).
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Flat INI: [section] headers, key = value lines, # or ; comments. Unknown
// sections/keys and malformed values raise std::invalid_argument naming the
// key. When `require_complete`, every key without a default must be present.
void apply_config_text(RunConfig& cfg, const std::string& text, bool require_complete);
void apply_config_file(RunConfig& cfg, const std::string& path, bool require_complete);

// Single "section.key=value" override (the CLI --set flag).
void apply_override(RunConfig& cfg, const std::string& assignment);

// "exact,cpa,order:2" -> methods list.
std::vector<Method> parse_methods(const std::string& text);

// Round-trippable INI dump of every effective setting, fixed key order.
std::string dump_config(const RunConfig& cfg);

// Deterministic CSV bodies (15 significant digits, '\n' line ends).
// Spectrum: header omega_eV,<method columns>. Sweep long format:
// coupling_over_omegav,omega_eV,log10_intensity.
std::string spectrum_csv(const Spectrum& spectrum);
std::string sweep_csv(const SweepSurface& surface);

// Orchestration used by the CLI: compute everything the config asks for.
Spectrum run_spectrum(const RunConfig& cfg);
SweepSurface run_sweep(const RunConfig& cfg);

struct ValidateReport {
    std::string text;  // fixed-format table, one row per case
    bool pass = false;
};

// Symmetric-basis vs site-basis cross-validation suite on small aggregates
// (unit-overlap two-monomer case plus displaced-oscillator cases up to four
// monomers), tolerance 1e-8 scaled by tol_scale.
ValidateReport run_validate(double tol_scale = 1.0);

}  // namespace aggspec
