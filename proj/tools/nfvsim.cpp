// Command line front end.
//
// Subcommands: analyze, sweep, simulate, compare.
// Exit codes: 0 success, 2 config error, 3 size-guard error, 4 I/O error.
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "nfvsim/errors.hpp"
#include "nfvsim/pipeline.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string format;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t trials = 0;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", opts.out_dir, "output directory (overrides config)");
    cmd->add_option("--format", opts.format, "csv | json (overrides config)");
    cmd->add_option("--seed", opts.seed, "Monte Carlo seed (overrides config)");
    cmd->add_option("--trials", opts.trials, "Monte Carlo trials (overrides config)");
    cmd->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber);
}

nfvsim::ExperimentConfig load(const CommonOpts& opts, const CLI::App* cmd) {
    nfvsim::ExperimentConfig config = nfvsim::load_config_file(opts.config_path);
    if (!opts.out_dir.empty()) config.output.path = opts.out_dir;
    if (!opts.format.empty()) {
        if (opts.format == "csv") config.output.format = nfvsim::OutputSpec::Format::csv;
        else if (opts.format == "json") config.output.format = nfvsim::OutputSpec::Format::json;
        else throw nfvsim::ConfigError("--format: expected csv | json");
    }
    if (cmd->count("--seed") && config.mc) config.mc->seed = opts.seed;
    if (cmd->count("--trials") && config.mc) config.mc->trials = opts.trials;
    config.validate();
    return config;
}

int run(const std::string& command, const CommonOpts& opts, const CLI::App* cmd) {
    namespace fs = std::filesystem;
    nfvsim::ExperimentConfig config = load(opts, cmd);

    if (command == "analyze") {
        nfvsim::AnalyzeReport report = nfvsim::run_analyze(config);
        std::cout << nfvsim::render_analyze_table(report);
        std::error_code ec;
        fs::create_directories(config.output.path, ec);
        if (ec) throw nfvsim::IoError("cannot create output directory: " + config.output.path);
        const std::string path = (fs::path(config.output.path) / "analyze.json").string();
        nfvsim::write_text_file(path, nfvsim::analyze_to_json(config, report).dump(2) + "\n");
        std::cout << "wrote " << path << "\n";
        return 0;
    }

    const bool with_mc = command == "simulate";
    std::vector<nfvsim::FERCurve> curves = nfvsim::run_curves(config, with_mc, opts.threads);

    if (command == "compare") {
        nfvsim::CompareReport report = nfvsim::run_compare(config, curves);
        std::cout << nfvsim::render_compare_table(report);
        std::error_code ec;
        fs::create_directories(config.output.path, ec);
        if (ec) throw nfvsim::IoError("cannot create output directory: " + config.output.path);
        const bool csv = config.output.format == nfvsim::OutputSpec::Format::csv;
        const std::string path =
            (fs::path(config.output.path) / (csv ? "compare.csv" : "compare.json")).string();
        nfvsim::write_text_file(path, csv ? nfvsim::compare_to_csv(config, report)
                                          : nfvsim::compare_to_json(config, report).dump(2) + "\n");
        std::cout << "wrote " << path << "\n";
        return 0;
    }

    for (const auto& path : nfvsim::write_curves(config, curves))
        std::cout << "wrote " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coded distributed decoding: FER-vs-latency bounds and simulation"};
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* analyze = app.add_subcommand("analyze", "static per-scheme code and rate report");
    CLI::App* sweepc = app.add_subcommand("sweep", "LDB/UB curves over the time grid");
    CLI::App* simulate = app.add_subcommand("simulate", "sweep plus Monte Carlo columns");
    CLI::App* compare = app.add_subcommand("compare", "cross-scheme summary of UB curves");
    for (CLI::App* cmd : {analyze, sweepc, simulate, compare}) add_common(cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    const CLI::App* cmd = app.get_subcommands().front();
    try {
        return run(cmd->get_name(), opts, cmd);
    } catch (const nfvsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nfvsim::SizeError& e) {
        std::cerr << "size-guard error: " << e.what() << "\n";
        return 3;
    } catch (const nfvsim::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    }
}
