// entroflux: parameter sweeps of stationary entropy production and correlations.
//
//   entroflux run <config|preset> [--csv PATH] [--svg PATH] [--columns LIST]
//                 [--strict] [--oracle] [--threads N]
//   entroflux presets
//   entroflux show <preset>
//
// Exit codes: 0 ok, 1 config error, 2 instability under --strict, 3 numerical failure.

#include "entroflux/errors.hpp"
#include "entroflux/scenario.hpp"
#include "entroflux/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kUnstable = 2;
constexpr int kNumerical = 3;

constexpr double kOracleTolerance = 1e-6;

struct RunArgs {
    std::string source;
    std::string csv_path;
    std::string svg_path;
    std::vector<std::string> columns;
    bool strict = false;
    bool oracle = false;
    unsigned threads = 0;
};

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw entroflux::IoError("cannot open '" + path + "' for writing");
    f << bytes;
    if (!f) throw entroflux::IoError("write to '" + path + "' failed");
}

int run(const RunArgs& args) {
    using namespace entroflux;
    sweep::Scenario scenario;
    std::vector<sweep::Output> columns;
    try {
        scenario = sweep::load_scenario(args.source);
        for (const auto& c : args.columns) {
            auto o = sweep::parse_output(c);
            if (!o || sweep::is_flag(*o)) throw ConfigError(0, "--columns", "not a numeric output: " + c);
            columns.push_back(*o);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    if (columns.empty()) columns = sweep::numeric_outputs(scenario);

    const auto rows = sweep::run_sweep(scenario, {args.threads, args.oracle});

    int status = kOk;
    std::size_t unstable = 0;
    for (const auto& row : rows) {
        if (!row.stable) ++unstable;
        if (!row.failure.empty()) {
            std::cerr << "numerical failure at " << scenario.sweep.variable << " = "
                      << sweep::format_number(row.value) << ": " << row.failure << '\n';
            status = kNumerical;
        }
        if (row.oracle_defect && !(*row.oracle_defect <= kOracleTolerance)) {
            std::cerr << "oracle mismatch at " << scenario.sweep.variable << " = "
                      << sweep::format_number(row.value) << ": ||V - V_ode|| = " << *row.oracle_defect << '\n';
            status = kNumerical;
        }
    }

    try {
        std::ostringstream csv;
        sweep::emit_csv(scenario, rows, csv);
        if (args.csv_path.empty())
            std::cout << csv.str();
        else
            write_file(args.csv_path, csv.str());
        if (!args.svg_path.empty()) {
            std::ostringstream svg;
            sweep::emit_svg(scenario, rows, columns, svg);
            write_file(args.svg_path, svg.str());
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }

    if (status != kOk) return status;
    if (args.strict && unstable > 0) {
        std::cerr << unstable << " unstable point(s)\n";
        return kUnstable;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stationary entropy production, mutual information and entanglement of two coupled "
                 "oscillators under coherent feedback"};
    app.require_subcommand(1);

    RunArgs args;
    auto* run_cmd = app.add_subcommand("run", "Run a sweep from a config file or a preset name");
    run_cmd->add_option("source", args.source, "Config file path or preset (fig1 .. fig7)")->required();
    run_cmd->add_option("--csv", args.csv_path, "Write CSV here instead of stdout");
    run_cmd->add_option("--svg", args.svg_path, "Write an SVG line plot");
    run_cmd->add_option("--columns", args.columns, "Outputs to plot (default: every numeric output)")
        ->delimiter(',');
    run_cmd->add_flag("--strict", args.strict, "Exit with status 2 if any point is unstable");
    run_cmd->add_flag("--oracle", args.oracle, "Re-verify every point against the ODE integrator");
    run_cmd->add_option("--threads", args.threads, "Worker threads (default: ENTROFLUX_THREADS or all cores)");

    auto* presets_cmd = app.add_subcommand("presets", "List built-in presets");

    std::string show_name;
    auto* show_cmd = app.add_subcommand("show", "Print the config text of a preset");
    show_cmd->add_option("preset", show_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfigError;
    }

    if (*run_cmd) return run(args);
    if (*presets_cmd) {
        for (const auto& name : entroflux::sweep::preset_names()) std::cout << name << '\n';
        return kOk;
    }
    if (*show_cmd) {
        auto text = entroflux::sweep::preset_config(show_name);
        if (!text) {
            std::cerr << "unknown preset '" << show_name << "'\n";
            return kConfigError;
        }
        std::cout << *text;
        return kOk;
    }
    return kOk;
}
