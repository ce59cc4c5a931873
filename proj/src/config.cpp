#include "ptqed/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ptqed/errors.hpp"
#include "ptqed/table.hpp"

namespace ptqed {

namespace {

using DoubleRef = double& (*)(RunConfig&);
using IntRef = int& (*)(RunConfig&);

struct DoubleKey {
    const char* name;
    DoubleRef ref;
};

struct IntKey {
    const char* name;
    IntRef ref;
};

// Declaration order below is the canonical dump order (after `experiment`
// and `mode`, and before the text/bool output keys).
const DoubleKey kDoubleKeys[] = {
    {"system.omega1", [](RunConfig& c) -> double& { return c.system.omega1; }},
    {"system.omega2", [](RunConfig& c) -> double& { return c.system.omega2; }},
    {"system.g1", [](RunConfig& c) -> double& { return c.system.g1; }},
    {"system.g2", [](RunConfig& c) -> double& { return c.system.g2; }},
    {"system.j", [](RunConfig& c) -> double& { return c.system.J; }},
    {"system.delta", [](RunConfig& c) -> double& { return c.system.delta; }},
    {"system.gamma1", [](RunConfig& c) -> double& { return c.system.gamma1; }},
    {"system.gamma2", [](RunConfig& c) -> double& { return c.system.gamma2; }},
    {"system.kappa1", [](RunConfig& c) -> double& { return c.system.kappa1; }},
    {"system.kappa2", [](RunConfig& c) -> double& { return c.system.kappa2; }},
    {"drive1.eps0", [](RunConfig& c) -> double& { return c.system.drives[0].eps0; }},
    {"drive1.lambda_plus", [](RunConfig& c) -> double& { return c.system.drives[0].lambda_plus; }},
    {"drive1.lambda_minus", [](RunConfig& c) -> double& { return c.system.drives[0].lambda_minus; }},
    {"drive1.omega_plus", [](RunConfig& c) -> double& { return c.system.drives[0].omega_plus; }},
    {"drive1.omega_minus", [](RunConfig& c) -> double& { return c.system.drives[0].omega_minus; }},
    {"drive2.eps0", [](RunConfig& c) -> double& { return c.system.drives[1].eps0; }},
    {"drive2.lambda_plus", [](RunConfig& c) -> double& { return c.system.drives[1].lambda_plus; }},
    {"drive2.lambda_minus", [](RunConfig& c) -> double& { return c.system.drives[1].lambda_minus; }},
    {"drive2.omega_plus", [](RunConfig& c) -> double& { return c.system.drives[1].omega_plus; }},
    {"drive2.omega_minus", [](RunConfig& c) -> double& { return c.system.drives[1].omega_minus; }},
    {"rates.gamma_tilde_1", [](RunConfig& c) -> double& { return c.rates.gamma_tilde_1; }},
    {"rates.gamma_tilde_2", [](RunConfig& c) -> double& { return c.rates.gamma_tilde_2; }},
    {"numerics.dt", [](RunConfig& c) -> double& { return c.dt; }},
    {"numerics.t_end", [](RunConfig& c) -> double& { return c.t_end; }},
    {"grid.j_start", [](RunConfig& c) -> double& { return c.j_grid.start; }},
    {"grid.j_stop", [](RunConfig& c) -> double& { return c.j_grid.stop; }},
    {"grid.omega_start", [](RunConfig& c) -> double& { return c.omega_grid.start; }},
    {"grid.omega_stop", [](RunConfig& c) -> double& { return c.omega_grid.stop; }},
    {"grid.ratio_start", [](RunConfig& c) -> double& { return c.ratio_grid.start; }},
    {"grid.ratio_stop", [](RunConfig& c) -> double& { return c.ratio_grid.stop; }},
    {"adiabatic.g", [](RunConfig& c) -> double& { return c.adiabatic_g; }},
    {"adiabatic.g_plus", [](RunConfig& c) -> double& { return c.adiabatic_g_plus; }},
    {"adiabatic.gamma_low", [](RunConfig& c) -> double& { return c.adiabatic_gamma_low; }},
    {"adiabatic.gamma_high", [](RunConfig& c) -> double& { return c.adiabatic_gamma_high; }},
    {"adiabatic.tail_tol", [](RunConfig& c) -> double& { return c.adiabatic_tail_tol; }},
    {"transmission.kappa", [](RunConfig& c) -> double& { return c.kappa; }},
};

const IntKey kIntKeys[] = {
    {"numerics.n_fock", [](RunConfig& c) -> int& { return c.n_fock; }},
    {"grid.j_count", [](RunConfig& c) -> int& { return c.j_grid.count; }},
    {"grid.omega_count", [](RunConfig& c) -> int& { return c.omega_grid.count; }},
    {"grid.ratio_count", [](RunConfig& c) -> int& { return c.ratio_grid.count; }},
};

std::string trim(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    std::size_t last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

[[noreturn]] void fail_at(const std::string& origin, int line_no, const std::string& what) {
    throw ValidationError(origin + ":" + std::to_string(line_no) + ": " + what);
}

double parse_double_value(const std::string& origin, int line_no, const std::string& key,
                          const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    double parsed = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        fail_at(origin, line_no, "value for '" + key + "' is not a number: '" + value + "'");
    return parsed;
}

int parse_int_value(const std::string& origin, int line_no, const std::string& key,
                    const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    long long parsed = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0' || parsed < -1000000000LL || parsed > 1000000000LL)
        fail_at(origin, line_no, "value for '" + key + "' is not an integer: '" + value + "'");
    return static_cast<int>(parsed);
}

bool parse_bool_value(const std::string& origin, int line_no, const std::string& key,
                      const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail_at(origin, line_no, "value for '" + key + "' must be true or false: '" + value + "'");
}

std::string require_choice(const std::string& origin, int line_no, const std::string& key,
                           const std::string& value, const std::vector<std::string>& choices) {
    if (std::find(choices.begin(), choices.end(), value) != choices.end()) return value;
    std::string joined;
    for (const std::string& choice : choices) {
        if (!joined.empty()) joined += " | ";
        joined += choice;
    }
    fail_at(origin, line_no, "value for '" + key + "' must be one of " + joined + ": '" + value + "'");
}

void apply_key(RunConfig& config, const std::string& origin, int line_no, const std::string& key,
               const std::string& value) {
    for (const DoubleKey& entry : kDoubleKeys) {
        if (key == entry.name) {
            entry.ref(config) = parse_double_value(origin, line_no, key, value);
            return;
        }
    }
    for (const IntKey& entry : kIntKeys) {
        if (key == entry.name) {
            entry.ref(config) = parse_int_value(origin, line_no, key, value);
            return;
        }
    }
    if (key == "experiment") {
        config.experiment = require_choice(origin, line_no, key, value, known_experiments());
    } else if (key == "mode") {
        require_choice(origin, line_no, key, value, {"rwa", "nonrwa"});
        config.mode = value == "rwa" ? MMode::Rwa : MMode::NonRwa;
    } else if (key == "dynamics.initial") {
        config.initial_state = require_choice(origin, line_no, key, value, {"up_one", "plus_one"});
    } else if (key == "output.dir") {
        if (value.empty()) fail_at(origin, line_no, "output.dir must not be empty");
        config.out_dir = value;
    } else if (key == "output.format") {
        config.format = require_choice(origin, line_no, key, value, {"csv", "json", "both"});
    } else if (key == "output.emit_plot_script") {
        config.emit_plot_script = parse_bool_value(origin, line_no, key, value);
    } else {
        fail_at(origin, line_no, "unknown key '" + key + "'");
    }
}

void require_grid(const std::string& label, const GridSpec& grid) {
    if (grid.count < 1)
        throw ValidationError(label + " grid needs at least one point, got count " +
                              std::to_string(grid.count));
    if (!std::isfinite(grid.start) || !std::isfinite(grid.stop))
        throw ValidationError(label + " grid bounds must be finite");
    if (grid.count > 1 && !(grid.stop > grid.start))
        throw ValidationError(label + " grid needs stop > start when count > 1");
}

void require_positive(const std::string& label, double value) {
    if (!(value > 0) || !std::isfinite(value))
        throw ValidationError(label + " must be positive and finite, got " + format_double(value));
}

void require_nonnegative(const std::string& label, double value) {
    if (!(value >= 0) || !std::isfinite(value))
        throw ValidationError(label + " must be >= 0 and finite, got " + format_double(value));
}

}  // namespace

const std::vector<std::string>& known_experiments() {
    static const std::vector<std::string> names = {
        "gcoeffs", "dynamics", "adiabatic", "spectrum", "phase-diagram", "transmission",
    };
    return names;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    RunConfig config;
    std::set<std::string> seen;
    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::size_t split = line.find('=');
        if (split == std::string::npos)
            fail_at(origin, line_no, "expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, split));
        std::string value = trim(line.substr(split + 1));
        if (key.empty()) fail_at(origin, line_no, "missing key before '='");
        if (value.empty()) fail_at(origin, line_no, "missing value for '" + key + "'");
        if (!seen.insert(key).second) fail_at(origin, line_no, "duplicate key '" + key + "'");
        apply_key(config, origin, line_no, key, value);
    }
    if (config.experiment.empty())
        throw ValidationError(origin + ": missing required key 'experiment'");
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

namespace {

std::string dump_keys(const RunConfig& config, bool with_output) {
    RunConfig& mutable_ref = const_cast<RunConfig&>(config);
    std::ostringstream out;
    out << "experiment = " << config.experiment << "\n";
    out << "mode = " << (config.mode == MMode::Rwa ? "rwa" : "nonrwa") << "\n";
    for (const DoubleKey& entry : kDoubleKeys)
        out << entry.name << " = " << format_double(entry.ref(mutable_ref)) << "\n";
    for (const IntKey& entry : kIntKeys)
        out << entry.name << " = " << entry.ref(mutable_ref) << "\n";
    out << "dynamics.initial = " << config.initial_state << "\n";
    if (with_output) {
        out << "output.dir = " << config.out_dir << "\n";
        out << "output.format = " << config.format << "\n";
        out << "output.emit_plot_script = " << (config.emit_plot_script ? "true" : "false")
            << "\n";
    }
    return out.str();
}

}  // namespace

std::string dump_config(const RunConfig& config) { return dump_keys(config, true); }

std::string config_hash(const RunConfig& config) { return fnv1a_hex(dump_keys(config, false)); }

void validate_config(const RunConfig& config) {
    const std::string& name = config.experiment;
    if (std::find(known_experiments().begin(), known_experiments().end(), name) ==
        known_experiments().end())
        throw ValidationError("unknown experiment '" + name + "'");

    RunConfig& mutable_ref = const_cast<RunConfig&>(config);
    for (const DoubleKey& entry : kDoubleKeys) {
        if (!std::isfinite(entry.ref(mutable_ref)))
            throw ValidationError(std::string(entry.name) + " must be finite");
    }

    require_nonnegative("rates.gamma_tilde_1", config.rates.gamma_tilde_1);
    require_nonnegative("rates.gamma_tilde_2", config.rates.gamma_tilde_2);

    if (name == "gcoeffs" || name == "dynamics") {
        validate_drive(config.system.drives[0]);
        if (name == "dynamics") {
            require_positive("numerics.dt", config.dt);
            require_positive("numerics.t_end", config.t_end);
            if (config.n_fock < 4)
                throw ValidationError("numerics.n_fock must be at least 4 for dynamics, got " +
                                      std::to_string(config.n_fock));
            require_nonnegative("system.gamma1", config.system.gamma1);
            require_nonnegative("system.kappa1", config.system.kappa1);
        }
    } else if (name == "adiabatic") {
        require_grid("grid.ratio", config.ratio_grid);
        if (!(config.ratio_grid.start > 0) || !(config.ratio_grid.stop < 1))
            throw ValidationError(
                "adiabatic ratio grid must stay inside (0, 1): the reduced model is only "
                "stable for G_- < G_+");
        require_positive("adiabatic.g", config.adiabatic_g);
        require_positive("adiabatic.g_plus", config.adiabatic_g_plus);
        require_positive("adiabatic.gamma_low", config.adiabatic_gamma_low);
        require_positive("adiabatic.gamma_high", config.adiabatic_gamma_high);
        require_positive("adiabatic.tail_tol", config.adiabatic_tail_tol);
        if (config.n_fock < 4)
            throw ValidationError("numerics.n_fock must be at least 4 for adiabatic, got " +
                                  std::to_string(config.n_fock));
    } else if (name == "spectrum") {
        require_grid("grid.j", config.j_grid);
    } else if (name == "phase-diagram") {
        require_grid("grid.j", config.j_grid);
        require_positive("system.delta", config.system.delta);
    } else if (name == "transmission") {
        require_grid("grid.j", config.j_grid);
        require_grid("grid.omega", config.omega_grid);
        require_nonnegative("transmission.kappa", config.kappa);
    }
}

std::vector<double> make_grid(const GridSpec& grid) {
    if (grid.count < 1)
        throw ValidationError("grid needs at least one point, got count " +
                              std::to_string(grid.count));
    std::vector<double> points(static_cast<std::size_t>(grid.count));
    if (grid.count == 1) {
        points[0] = grid.start;
        return points;
    }
    double step = (grid.stop - grid.start) / (grid.count - 1);
    for (int i = 0; i < grid.count; ++i) points[static_cast<std::size_t>(i)] = grid.start + step * i;
    points.back() = grid.stop;
    return points;
}

}  // namespace ptqed
