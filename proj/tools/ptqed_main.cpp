// ptqed: command-line front end. One subcommand per experiment; results land
// in the output directory as <experiment>.csv / .json plus an optional
// matplotlib script. Exit codes: 0 success, 1 invalid request (nothing
// written), 2 numerical failure mid-run (message mirrored to
// <experiment>.err).
#include <unistd.h>

#include <chrono>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "ptqed/config.hpp"
#include "ptqed/errors.hpp"
#include "ptqed/experiments.hpp"
#include "ptqed/table.hpp"
#include "ptqed/version.hpp"

namespace {

struct CliArgs {
    std::string config_path;
    std::string out_dir;
    std::string format;
    int jobs = 0;
    bool deterministic = false;
    bool emit_plot_script = false;
};

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"gcoeffs", "Sideband coefficients G+/G- of a two-tone drive"},
    {"dynamics", "Full driven evolution vs the static effective model for one circuit site"},
    {"adiabatic", "Steady-state accuracy of the resonator-only reduction vs qubit decay rate"},
    {"spectrum", "First-moment eigenvalue branches over the coupling grid"},
    {"phase-diagram", "Symmetry phases, exceptional points, and critical couplings over J"},
    {"transmission", "Driven transmission map over (omega_d, J) with ridge extraction"},
};

int run(const std::string& experiment, const CLI::App* sub, CliArgs& args) {
    namespace fs = std::filesystem;

    // Stage 1: everything that can make the request invalid. Failures exit
    // with status 1 and leave no output files behind.
    ptqed::RunConfig config;
    try {
        config = ptqed::load_config(args.config_path);
        if (config.experiment != experiment)
            throw ptqed::ValidationError("config file '" + args.config_path +
                                         "' requests experiment '" + config.experiment +
                                         "' but the '" + experiment + "' subcommand was invoked");
        if (sub->count("--out") > 0) config.out_dir = args.out_dir;
        if (sub->count("--format") > 0) config.format = args.format;
        if (args.emit_plot_script) config.emit_plot_script = true;
        if (args.jobs < 0)
            throw ptqed::ValidationError("--jobs must be >= 0, got " + std::to_string(args.jobs));
        ptqed::validate_config(config);

        fs::create_directories(config.out_dir);
        if (::access(config.out_dir.c_str(), W_OK) != 0)
            throw ptqed::ValidationError("output directory '" + config.out_dir +
                                         "' is not writable");
    } catch (const std::exception& e) {
        std::cerr << "ptqed: error: " << e.what() << "\n";
        return 1;
    }

    // Stage 2: compute and write. Failures exit with status 2 and mirror the
    // message into <out>/<experiment>.err.
    try {
        const int jobs = args.jobs > 0
                             ? args.jobs
                             : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        const auto t0 = std::chrono::steady_clock::now();
        ptqed::ResultTable table = ptqed::run_experiment(config, jobs);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::vector<std::pair<std::string, std::string>> metadata = {
            {"tool", "ptqed"},
            {"version", ptqed::kVersion},
            {"experiment", config.experiment},
            {"config_hash", ptqed::config_hash(config)},
        };
        metadata.insert(metadata.end(), table.metadata.begin(), table.metadata.end());
        if (!args.deterministic)
            metadata.emplace_back("wall_clock_seconds", ptqed::format_double(elapsed));
        table.metadata = std::move(metadata);

        const fs::path out_dir(config.out_dir);
        std::vector<std::string> written;
        if (config.format == "csv" || config.format == "both") {
            const fs::path path = out_dir / (config.experiment + ".csv");
            ptqed::write_file(path.string(), ptqed::to_csv(table));
            written.push_back(path.string());
        }
        if (config.format == "json" || config.format == "both") {
            const fs::path path = out_dir / (config.experiment + ".json");
            ptqed::write_file(path.string(), ptqed::to_json(table));
            written.push_back(path.string());
        }
        for (const std::string& path : written)
            std::cout << "ptqed " << config.experiment << ": wrote " << path << " ("
                      << table.rows.size() << " rows)\n";
        if (config.emit_plot_script) {
            const fs::path path = out_dir / ("plot_" + config.experiment + ".py");
            ptqed::write_file(path.string(), ptqed::plot_script(config));
            std::cout << "ptqed " << config.experiment << ": wrote " << path.string() << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        try {
            const fs::path sidecar = fs::path(config.out_dir) / (config.experiment + ".err");
            ptqed::write_file(sidecar.string(), std::string(e.what()) + "\n");
        } catch (...) {
            // The sidecar is best-effort; the exit status carries the failure.
        }
        std::cerr << "ptqed: error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ptqed — driven circuit-QED sideband engineering: effective coupled-resonator models,\n"
        "their symmetry phases, steady states, and transmission spectra."};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("ptqed ") + ptqed::kVersion);

    CliArgs args;
    for (const auto& [name, description] : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", args.config_path, "Config file (key = value lines)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", args.out_dir, "Output directory (default: output.dir from config)");
        sub->add_option("--format", args.format, "Data format override")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--jobs", args.jobs,
                        "Sweep parallelism degree; 0 = all available cores (default)");
        sub->add_flag("--deterministic", args.deterministic,
                      "Byte-stable output: omit wall-clock metadata (data bytes are always\n"
                      "independent of --jobs)");
        sub->add_flag("--emit-plot-script", args.emit_plot_script,
                      "Also write plot_<experiment>.py next to the data");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    for (const auto& [name, description] : kSubcommands) {
        CLI::App* sub = app.get_subcommand(name);
        if (sub->parsed()) return run(name, sub, args);
    }
    std::cerr << "ptqed: error: no experiment selected\n";
    return 1;
}
