#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nds/acceptance.hpp"
#include "nds/experiment.hpp"
#include "nds/serialize.hpp"

namespace {

enum Exit { kOk = 0, kAcceptanceFailure = 1, kConfigError = 2, kUnknownSystem = 3 };

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    try {
        nds::ExperimentConfig cfg = nds::load_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        nds::ExperimentResult result = nds::run_experiment(cfg);
        nds::write_outputs(result, cfg.output_dir);
        std::cout << "wrote " << result.files.size() << " files to " << cfg.output_dir.string() << '\n';
        for (const auto& rep : result.report["reports"])
            std::cout << "  " << rep["mode"].get<std::string>() << "  " << rep["family_name"].get<std::string>()
                      << "  delta=" << rep["delta"].get<double>() << "  " << rep["verdict"].get<std::string>() << '\n';
        return kOk;
    } catch (const nds::UnknownSystem& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnknownSystem;
    } catch (const nds::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
}

int cmd_verify(const std::vector<std::string>& only, const std::string& pieces_path) {
    nds::AcceptanceOptions options;
    if (!pieces_path.empty()) {
        try {
            std::ifstream in(pieces_path);
            if (!in) throw nds::ConfigError("cannot read " + pieces_path);
            nds::Json j;
            try {
                j = nds::Json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                throw nds::ConfigError(std::string("malformed JSON: ") + e.what());
            }
            options.pieces = nds::pieces_from_json(j);
        } catch (const nds::ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return kConfigError;
        }
    }
    for (const auto& n : only) {
        const auto& all = nds::criterion_names();
        if (std::find(all.begin(), all.end(), n) == all.end()) {
            std::cerr << "unknown criterion: " << n << '\n';
            return kConfigError;
        }
    }
    return nds::run_verify(only, options, std::cout) == 0 ? kOk : kAcceptanceFailure;
}

int cmd_list() {
    for (const auto& [name, description] : nds::registry()) std::cout << name << "\t" << description << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Furstenberg-family sensitivity probes for non-autonomous systems"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory (overrides the config)");

    std::vector<std::string> only;
    std::string pieces_path;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--only", only, "criterion name (repeatable)");
    verify->add_option("--pieces", pieces_path, "JSON piece tables replacing the built-in f1, f2, f2 o f1");

    auto* list = app.add_subcommand("list", "list built-in systems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*run) return cmd_run(config_path, out_dir);
        if (*verify) return cmd_verify(only, pieces_path);
        if (*list) return cmd_list();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kOk;
}
