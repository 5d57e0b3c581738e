#include "aggspec/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aggspec/site_oracle.hpp"

namespace aggspec {

namespace {

std::string fmt15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw std::invalid_argument("key '" + key + "': cannot parse '" + value + "' as a number");
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw std::invalid_argument("key '" + key + "': cannot parse '" + value + "' as an integer");
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) parts.push_back(item);
    if (!s.empty() && s.back() == sep) parts.push_back("");
    return parts;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& part : split(value, ',')) out.push_back(parse_double(key, part));
    if (out.empty()) throw std::invalid_argument("key '" + key + "': empty list");
    return out;
}

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += fmt15(values[i]);
    }
    return out;
}

}  // namespace

std::string Method::column_name() const {
    switch (kind) {
        case Kind::Exact: return "sigma_exact";
        case Kind::OrderK: return "sigma_k" + std::to_string(k);
        case Kind::Cpa: return "sigma_cpa";
    }
    return "";
}

std::string Method::spec_string() const {
    switch (kind) {
        case Kind::Exact: return "exact";
        case Kind::OrderK: return "order:" + std::to_string(k);
        case Kind::Cpa: return "cpa";
    }
    return "";
}

std::vector<Method> parse_methods(const std::string& text) {
    std::vector<Method> methods;
    for (const auto& raw : split(text, ',')) {
        const std::string item = trim(raw);
        if (item == "exact") methods.push_back({Method::Kind::Exact, 0});
        else if (item == "cpa") methods.push_back({Method::Kind::Cpa, 0});
        else if (item.rfind("order:", 0) == 0) {
            const int k = parse_int("methods", item.substr(6));
            if (k < 0) throw std::invalid_argument("key 'methods': order must be >= 0");
            methods.push_back({Method::Kind::OrderK, k});
        } else
            throw std::invalid_argument("key 'methods': unknown method '" + item +
                                        "' (expected exact, cpa, or order:<k>)");
    }
    if (methods.empty()) throw std::invalid_argument("key 'methods': at least one method required");
    return methods;
}

MonomerModel RunConfig::build_model() const {
    spec.validate();
    MonomerModel model = aggspec::build_model(spec, dipole_mag);
    if (fc_override) {
        const int rows = spec.m_g + 1, cols = spec.m_e + 1;
        if (static_cast<int>(fc_override->size()) != rows * cols)
            throw std::invalid_argument("key 'fc_override': expected " +
                                        std::to_string(rows * cols) + " row-major values");
        Eigen::MatrixXd fc(rows, cols);
        for (int n = 0; n < rows; ++n)
            for (int m = 0; m < cols; ++m) fc(n, m) = (*fc_override)[n * cols + m];
        model.fc = fc;
    }
    if (energies_override) {
        const std::size_t need = static_cast<std::size_t>(spec.m_g + spec.m_e + 2);
        if (energies_override->size() != need)
            throw std::invalid_argument("key 'energies_override': expected " +
                                        std::to_string(need) +
                                        " values (ground levels then excited levels)");
        model.ground_energies.assign(energies_override->begin(),
                                     energies_override->begin() + spec.m_g + 1);
        model.excited_energies.assign(energies_override->begin() + spec.m_g + 1,
                                      energies_override->end());
    }
    model.validate();
    return model;
}

FrequencyGrid RunConfig::effective_grid() const {
    if (grid) return *grid;
    return FrequencyGrid{spec.zero_zero_energy - 4.0 * spec.vib_freq,
                         spec.zero_zero_energy + 4.0 * spec.vib_freq, 4001};
}

void RunConfig::validate() const {
    spec.validate();
    aggregate.validate();
    effective_grid().validate();
    if (methods.empty()) throw std::invalid_argument("at least one method required");
    if (k_max < -1) throw std::invalid_argument("k_max must be >= 0, or -1 for the full chain");
    if (sweep_count < 1) throw std::invalid_argument("sweep count must be >= 1");
    if (sweep_count > 1 && !(sweep_start < sweep_stop))
        throw std::invalid_argument("sweep start must be < stop");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    build_model();  // surfaces override shape errors early
}

std::vector<std::string> preset_names() { return {"dimer-pdi", "lambda", "fig3-sweep"}; }

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    if (name == "dimer-pdi") {
        // Two coupled dye monomers, one vibrational quantum on the shared
        // mode, unit overlaps.
        cfg.spec = {0.16, 0.0, 2.3, 1, 0};
        cfg.fc_override = std::vector<double>{1.0, 1.0};
        cfg.aggregate = {1, -0.06, 0.01, 1e-5};
        cfg.grid = FrequencyGrid{1.8, 2.9, 4001};
        cfg.methods = parse_methods("exact,cpa");
    } else if (name == "lambda") {
        // Same minimal truncation, aggregate size meant to be overridden.
        cfg.spec = {0.16, 0.0, 2.3, 1, 0};
        cfg.fc_override = std::vector<double>{1.0, 1.0};
        cfg.aggregate = {1, -0.06, 0.01, 1e-5};
        cfg.methods = parse_methods("exact,cpa");
    } else if (name == "fig3-sweep") {
        // S = 1/2 vibronic progression swept across coupling regimes at
        // zeroth order, collective coupling -3..3 vibrational quanta.
        cfg.spec = {0.16, 0.5, 2.3, 1, 3};
        cfg.aggregate = {1000, 0.0, 0.002, 1e-5};
        cfg.k_max = 0;
        cfg.sweep_start = -3.0;
        cfg.sweep_stop = 3.0;
        cfg.sweep_count = 121;
    } else {
        throw std::invalid_argument("unknown preset '" + name +
                                    "' (known: dimer-pdi, lambda, fig3-sweep)");
    }
    return cfg;
}

namespace {

struct KeyHandler {
    std::string section;
    std::string key;
    bool required;
    std::function<void(RunConfig&, const std::string&)> apply;
};

const std::vector<KeyHandler>& key_handlers() {
    static const std::vector<KeyHandler> handlers = {
        {"monomer", "omega_v", true,
         [](RunConfig& c, const std::string& v) { c.spec.vib_freq = parse_double("omega_v", v); }},
        {"monomer", "huang_rhys", true,
         [](RunConfig& c, const std::string& v) {
             c.spec.huang_rhys = parse_double("huang_rhys", v);
         }},
        {"monomer", "omega_00", true,
         [](RunConfig& c, const std::string& v) {
             c.spec.zero_zero_energy = parse_double("omega_00", v);
         }},
        {"monomer", "m_g", true,
         [](RunConfig& c, const std::string& v) { c.spec.m_g = parse_int("m_g", v); }},
        {"monomer", "m_e", true,
         [](RunConfig& c, const std::string& v) { c.spec.m_e = parse_int("m_e", v); }},
        {"monomer", "dipole_mag", false,
         [](RunConfig& c, const std::string& v) { c.dipole_mag = parse_double("dipole_mag", v); }},
        {"monomer", "fc_override", false,
         [](RunConfig& c, const std::string& v) {
             c.fc_override = parse_double_list("fc_override", v);
         }},
        {"monomer", "energies_override", false,
         [](RunConfig& c, const std::string& v) {
             c.energies_override = parse_double_list("energies_override", v);
         }},
        {"aggregate", "n_ground", true,
         [](RunConfig& c, const std::string& v) {
             c.aggregate.n_ground = parse_int("n_ground", v);
         }},
        {"aggregate", "coupling", true,
         [](RunConfig& c, const std::string& v) {
             c.aggregate.coupling = parse_double("coupling", v);
         }},
        {"aggregate", "gamma", true,
         [](RunConfig& c, const std::string& v) { c.aggregate.gamma = parse_double("gamma", v); }},
        {"aggregate", "gamma_v", false,
         [](RunConfig& c, const std::string& v) {
             c.aggregate.gamma_v = parse_double("gamma_v", v);
         }},
        {"aggregate", "k_max", false,
         [](RunConfig& c, const std::string& v) { c.k_max = parse_int("k_max", v); }},
        {"grid", "start", false,
         [](RunConfig& c, const std::string& v) {
             if (!c.grid) c.grid = FrequencyGrid{};
             c.grid->start = parse_double("start", v);
         }},
        {"grid", "stop", false,
         [](RunConfig& c, const std::string& v) {
             if (!c.grid) c.grid = FrequencyGrid{};
             c.grid->stop = parse_double("stop", v);
         }},
        {"grid", "count", false,
         [](RunConfig& c, const std::string& v) {
             if (!c.grid) c.grid = FrequencyGrid{};
             c.grid->count = parse_int("count", v);
         }},
        {"output", "methods", false,
         [](RunConfig& c, const std::string& v) { c.methods = parse_methods(v); }},
        {"output", "path", false,
         [](RunConfig& c, const std::string& v) { c.out_path = trim(v); }},
        {"sweep", "start", false,
         [](RunConfig& c, const std::string& v) { c.sweep_start = parse_double("start", v); }},
        {"sweep", "stop", false,
         [](RunConfig& c, const std::string& v) { c.sweep_stop = parse_double("stop", v); }},
        {"sweep", "count", false,
         [](RunConfig& c, const std::string& v) { c.sweep_count = parse_int("count", v); }},
    };
    return handlers;
}

}  // namespace

void apply_config_text(RunConfig& cfg, const std::string& text, bool require_complete) {
    std::set<std::string> seen;
    std::string section;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            bool known = false;
            for (const auto& h : key_handlers()) known = known || h.section == section;
            if (!known)
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = t.substr(eq + 1);
        const KeyHandler* handler = nullptr;
        for (const auto& h : key_handlers())
            if (h.section == section && h.key == key) handler = &h;
        if (!handler)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown key '" +
                                        key + "' in section [" + section + "]");
        handler->apply(cfg, value);
        seen.insert(section + "." + key);
    }

    if (require_complete)
        for (const auto& h : key_handlers())
            if (h.required && !seen.count(h.section + "." + h.key))
                throw std::invalid_argument("missing key '" + h.key + "' in section [" +
                                            h.section + "]");
    if (cfg.grid && cfg.grid->count == 0)
        throw std::invalid_argument("section [grid] needs start, stop, and count together");
}

void apply_config_file(RunConfig& cfg, const std::string& path, bool require_complete) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    apply_config_text(cfg, buffer.str(), require_complete);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override must look like section.key=value");
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = assignment.substr(eq + 1);
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        throw std::invalid_argument("override must look like section.key=value");
    const std::string section = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);
    for (const auto& h : key_handlers())
        if (h.section == section && h.key == key) {
            h.apply(cfg, value);
            return;
        }
    throw std::invalid_argument("unknown key '" + key + "' in section [" + section + "]");
}

std::string dump_config(const RunConfig& cfg) {
    std::string out;
    out += "[monomer]\n";
    out += "omega_v = " + fmt15(cfg.spec.vib_freq) + "\n";
    out += "huang_rhys = " + fmt15(cfg.spec.huang_rhys) + "\n";
    out += "omega_00 = " + fmt15(cfg.spec.zero_zero_energy) + "\n";
    out += "m_g = " + std::to_string(cfg.spec.m_g) + "\n";
    out += "m_e = " + std::to_string(cfg.spec.m_e) + "\n";
    out += "dipole_mag = " + fmt15(cfg.dipole_mag) + "\n";
    if (cfg.fc_override) out += "fc_override = " + join_doubles(*cfg.fc_override) + "\n";
    if (cfg.energies_override)
        out += "energies_override = " + join_doubles(*cfg.energies_override) + "\n";
    out += "\n[aggregate]\n";
    out += "n_ground = " + std::to_string(cfg.aggregate.n_ground) + "\n";
    out += "coupling = " + fmt15(cfg.aggregate.coupling) + "\n";
    out += "gamma = " + fmt15(cfg.aggregate.gamma) + "\n";
    out += "gamma_v = " + fmt15(cfg.aggregate.gamma_v) + "\n";
    out += "k_max = " + std::to_string(cfg.k_max) + "\n";
    const FrequencyGrid grid = cfg.effective_grid();
    out += "\n[grid]\n";
    out += "start = " + fmt15(grid.start) + "\n";
    out += "stop = " + fmt15(grid.stop) + "\n";
    out += "count = " + std::to_string(grid.count) + "\n";
    out += "\n[output]\n";
    std::string methods;
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
        if (i) methods += ',';
        methods += cfg.methods[i].spec_string();
    }
    out += "methods = " + methods + "\n";
    if (!cfg.out_path.empty()) out += "path = " + cfg.out_path + "\n";
    out += "\n[sweep]\n";
    out += "start = " + fmt15(cfg.sweep_start) + "\n";
    out += "stop = " + fmt15(cfg.sweep_stop) + "\n";
    out += "count = " + std::to_string(cfg.sweep_count) + "\n";
    return out;
}

namespace {

// Fixed column order regardless of how methods were listed: exact, then
// explicit truncations by ascending order, then cpa; duplicates dropped.
std::vector<Method> canonical_methods(const std::vector<Method>& methods) {
    std::vector<Method> out;
    const auto push = [&out](const Method& m) {
        for (const auto& o : out)
            if (o.kind == m.kind && o.k == m.k) return;
        out.push_back(m);
    };
    for (const auto& m : methods)
        if (m.kind == Method::Kind::Exact) push(m);
    std::vector<Method> orders;
    for (const auto& m : methods)
        if (m.kind == Method::Kind::OrderK) orders.push_back(m);
    std::sort(orders.begin(), orders.end(), [](const Method& a, const Method& b) { return a.k < b.k; });
    for (const auto& m : orders) push(m);
    for (const auto& m : methods)
        if (m.kind == Method::Kind::Cpa) push(m);
    return out;
}

}  // namespace

Spectrum run_spectrum(const RunConfig& cfg) {
    cfg.validate();
    const MonomerModel model = cfg.build_model();
    const FrequencyGrid grid = cfg.effective_grid();
    Spectrum spectrum;
    spectrum.grid = grid;
    for (const auto& method : canonical_methods(cfg.methods)) {
        Eigen::VectorXd column;
        switch (method.kind) {
            case Method::Kind::Exact:
                column = spectrum_column(model, cfg.aggregate, grid, cfg.k_max, cfg.threads);
                break;
            case Method::Kind::OrderK:
                column = spectrum_column(model, cfg.aggregate, grid, method.k, cfg.threads);
                break;
            case Method::Kind::Cpa:
                column = cpa_spectrum(model, cfg.aggregate, grid);
                break;
        }
        spectrum.columns.emplace_back(method.column_name(), std::move(column));
    }
    return spectrum;
}

SweepSurface run_sweep(const RunConfig& cfg) {
    cfg.validate();
    const MonomerModel model = cfg.build_model();
    const FrequencyGrid grid = cfg.effective_grid();
    std::vector<double> axis(cfg.sweep_count);
    for (int i = 0; i < cfg.sweep_count; ++i)
        axis[i] = cfg.sweep_count == 1
                      ? cfg.sweep_start
                      : cfg.sweep_start +
                            i * (cfg.sweep_stop - cfg.sweep_start) / (cfg.sweep_count - 1);
    return sweep(model, cfg.aggregate, axis, cfg.spec.vib_freq, grid, cfg.k_max, cfg.threads);
}

std::string spectrum_csv(const Spectrum& spectrum) {
    std::string out = "omega_eV";
    for (const auto& [name, column] : spectrum.columns) out += "," + name;
    out += '\n';
    for (int i = 0; i < spectrum.grid.count; ++i) {
        out += fmt15(spectrum.grid.at(i));
        for (const auto& [name, column] : spectrum.columns) out += "," + fmt15(column(i));
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const SweepSurface& surface) {
    std::string out = "coupling_over_omegav,omega_eV,log10_intensity\n";
    for (std::size_t c = 0; c < surface.coupling_axis.size(); ++c) {
        const std::string prefix = fmt15(surface.coupling_axis[c]) + ",";
        for (int i = 0; i < surface.grid.count; ++i) {
            out += prefix + fmt15(surface.grid.at(i)) + "," +
                   fmt15(std::log10(surface.intensity(static_cast<Eigen::Index>(c), i))) + '\n';
        }
    }
    return out;
}

ValidateReport run_validate(double tol_scale) {
    if (!(tol_scale > 0.0)) throw std::invalid_argument("tol-scale must be > 0");
    const double tol = 1e-8 * tol_scale;
    const FrequencyGrid grid{1.8, 3.2, 1001};

    struct Case {
        std::string name;
        MonomerModel model;
        AggregateConfig config;
    };
    std::vector<Case> cases;
    {
        RunConfig dimer = preset_config("dimer-pdi");
        cases.push_back({"two-monomer-unit-overlap", dimer.build_model(),
                         {1, -0.06, 0.01, 0.0}});
    }
    const auto displaced = [](int m_g, int m_e) {
        return build_model(DisplacedOscillatorSpec{0.16, 0.5, 2.3, m_g, m_e});
    };
    cases.push_back({"three-monomer-2g2e", displaced(1, 1), {2, -0.06, 0.01, 0.0}});
    cases.push_back({"three-monomer-3g2e", displaced(2, 1), {2, -0.06, 0.01, 0.0}});
    cases.push_back({"four-monomer-2g2e", displaced(1, 1), {3, -0.06, 0.01, 0.0}});

    std::string text;
    char line[160];
    std::snprintf(line, sizeof line, "%-28s %9s %8s %12s %12s  %s\n", "case", "dim_site",
                  "dim_sym", "max_abs", "max_rel", "result");
    text += line;
    bool pass = true;
    for (const auto& c : cases) {
        const Eigen::VectorXd sym =
            spectrum_column(c.model, c.config, grid, /*k_max=*/-1);
        const Eigen::VectorXd site = oracle_spectrum(c.model, c.config, grid);
        const Deviation dev = compare_columns(sym, site);
        const BlockChain chain = build_chain(c.model, c.config, c.config.n_ground);
        const bool ok = dev.max_abs <= tol;
        pass = pass && ok;
        std::snprintf(line, sizeof line, "%-28s %9lld %8lld %12.3e %12.3e  %s\n", c.name.c_str(),
                      static_cast<long long>(site_dimension(c.config.n_ground, c.model.m_g(),
                                                            c.model.m_e())),
                      static_cast<long long>(chain.total_dim()), dev.max_abs, dev.max_rel,
                      ok ? "pass" : "FAIL");
        text += line;
    }
    std::snprintf(line, sizeof line, "overall: %s (max_abs tolerance %.3e)\n",
                  pass ? "pass" : "FAIL", tol);
    text += line;
    return ValidateReport{text, pass};
}

}  // namespace aggspec
