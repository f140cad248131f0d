// topolab - command-line front end: experiment configs in, machine-readable
// results and plot scripts out.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tasks.hpp"
#include "topolab/errors.hpp"

namespace fs = std::filesystem;
using topolab::cli::Config;
using topolab::cli::ConfigError;
using topolab::cli::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string error_module(const std::exception& e) {
    using namespace topolab;
    if (dynamic_cast<const ResolventSingular*>(&e) || dynamic_cast<const UnsupportedLayout*>(&e) ||
        dynamic_cast<const CertificateFailed*>(&e))
        return "mediator";
    if (dynamic_cast<const NotChiral*>(&e) || dynamic_cast<const GapClosed*>(&e) ||
        dynamic_cast<const PointGapClosed*>(&e) || dynamic_cast<const UnitarizationFailed*>(&e))
        return "invariants";
    if (dynamic_cast<const NearZeroEigenvalue*>(&e) || dynamic_cast<const SingularMatrix*>(&e) ||
        dynamic_cast<const NonHermitianInput*>(&e))
        return "bloch";
    if (dynamic_cast<const InfiniteRange*>(&e) || dynamic_cast<const LayoutMismatch*>(&e) ||
        dynamic_cast<const EmptySector*>(&e))
        return "realspace";
    if (dynamic_cast<const AmbiguousClass*>(&e)) return "symmetry";
    return "cli";
}

void report_error(const std::string& module, const std::string& kind, const std::string& what) {
    json report;
    report["error"] = json{{"module", module}, {"kind", kind}, {"what", what}};
    std::cerr << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"photonic-bath topology laboratory"};
    app.require_subcommand(0, 1);

    std::string config_path, task_override, out_override;
    int grid_override = 0;
    long seed_override = 0;
    app.add_option("--config", config_path, "experiment config (JSON)");
    app.add_option("--task", task_override, "override the config's task");
    app.add_option("--out", out_override, "override the output directory");
    app.add_option("--grid", grid_override, "override the grid nodes per axis");
    app.add_option("--seed", seed_override, "reserved; echoed into the metadata");

    CLI::App* list_cmd = app.add_subcommand("list-models", "print the model catalog");

    CLI11_PARSE(app, argc, argv);

    if (list_cmd->parsed()) {
        std::cout << topolab::cli::list_models().dump(2) << "\n";
        return 0;
    }

    if (config_path.empty()) {
        report_error("cli", "ConfigError", "no --config given (or use: topolab list-models)");
        return 2;
    }

    Config cfg;
    try {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
        json raw = json::parse(in);
        cfg = topolab::cli::parse_config(raw);
    } catch (const json::parse_error& e) {
        report_error("cli", "ConfigError", std::string("config is not valid JSON: ") + e.what());
        return 2;
    } catch (const ConfigError& e) {
        report_error("cli", "ConfigError", e.what());
        return 2;
    }

    if (!task_override.empty()) cfg.task = task_override;
    if (!out_override.empty()) cfg.output = out_override;
    if (grid_override > 0) cfg.grid_m = grid_override;
    if (seed_override != 0) cfg.seed = seed_override;

    try {
        const fs::path outdir = cfg.output;
        fs::create_directories(outdir);

        json results;
        if (cfg.task == "invariant")
            results = topolab::cli::run_invariant(cfg);
        else if (cfg.task == "classify")
            results = topolab::cli::run_classify(cfg);
        else if (cfg.task == "mediate")
            results = topolab::cli::run_mediate(cfg, outdir);
        else if (cfg.task == "table1")
            results = topolab::cli::run_table1(cfg, outdir);
        else if (cfg.task == "figure")
            results = topolab::cli::run_figure(cfg, outdir);
        else
            throw ConfigError("config: unknown task '" + cfg.task + "'");

        json doc;
        doc["metadata"] = json{{"tool", "topolab"},
                               {"version", kVersion},
                               {"config", topolab::cli::effective_config(cfg)}};
        doc["results"] = results;
        std::ofstream out(outdir / "results.json");
        out << doc.dump(2) << "\n";
        std::printf("wrote %s\n", (outdir / "results.json").c_str());
        return 0;
    } catch (const ConfigError& e) {
        report_error("cli", "ConfigError", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        report_error("cli", "ConfigError", e.what());
        return 2;
    } catch (const topolab::Error& e) {
        report_error(error_module(e), "DomainError", e.what());
        return 1;
    } catch (const std::exception& e) {
        report_error("cli", "InternalError", e.what());
        return 1;
    }
}
