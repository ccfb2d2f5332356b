#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zalm/results.hpp"
#include "zalm/sim_engine.hpp"
#include "zalm/spectral_filtering.hpp"

namespace {

std::vector<std::pair<std::string, std::string>>
parse_sets(const std::vector<std::string>& sets) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const std::string& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw zalm::ConfigError(s, "expected key=value");
        out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

struct CommonOpts {
    std::optional<std::string> config_file;
    std::vector<std::string> sets;
    std::optional<long> trials;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string format = "csv";
};

void add_common(CLI::App* app, CommonOpts& o) {
    app->add_option("--config", o.config_file, "Config file (key = value lines)");
    app->add_option("--set", o.sets, "Override, key=value (repeatable)")
        ->take_all();
    app->add_option("--trials", o.trials, "Number of Monte Carlo trials");
    app->add_option("--seed", o.seed, "Campaign seed");
    app->add_option("--out", o.out_path, "Output file (default: stdout)");
    app->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

zalm::SimConfig build_config(const CommonOpts& o) {
    zalm::SimConfig cfg = zalm::load_config(o.config_file, parse_sets(o.sets));
    if (o.trials) cfg.n_trials = *o.trials;
    if (o.seed) cfg.seed = *o.seed;
    zalm::validate_config(cfg);
    return cfg;
}

void emit_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << payload;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ZALM entangled-photon source link simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts, sweep_opts, grid_opts;
    std::string sweep_param, sweep_values;

    CLI::App* run_cmd = app.add_subcommand("run", "Run a single campaign");
    add_common(run_cmd, run_opts);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Run one campaign per parameter value");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--param", sweep_param, "Dotted config key to sweep")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")
        ->required();

    CLI::App* grid_cmd = app.add_subcommand("grid-dump", "Dump the DWDM grid as CSV");
    add_common(grid_cmd, grid_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            zalm::SimConfig cfg = build_config(run_opts);
            zalm::Metrics m = zalm::run_campaign(cfg, cfg.n_trials, cfg.seed);
            std::ostringstream os;
            zalm::write_results(os,
                                run_opts.format == "json"
                                    ? zalm::ResultsFormat::JSON
                                    : zalm::ResultsFormat::CSV,
                                cfg, "", {{"", m}});
            emit_output(run_opts.out_path, os.str());
        } else if (sweep_cmd->parsed()) {
            zalm::SimConfig cfg = build_config(sweep_opts);
            auto points = zalm::sweep(cfg, sweep_param, split_csv(sweep_values));
            std::ostringstream os;
            zalm::write_results(os,
                                sweep_opts.format == "json"
                                    ? zalm::ResultsFormat::JSON
                                    : zalm::ResultsFormat::CSV,
                                cfg, sweep_param, points);
            emit_output(sweep_opts.out_path, os.str());
        } else if (grid_cmd->parsed()) {
            zalm::SimConfig cfg = build_config(grid_opts);
            std::ostringstream os;
            zalm::write_grid_csv(zalm::build_grid(cfg.dwdm), os);
            emit_output(grid_opts.out_path, os.str());
        }
    } catch (const zalm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
