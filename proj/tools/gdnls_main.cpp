#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gdnls/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gdnls: pseudospectral experiments for the gauged derivative NLS equation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir_flag;
    std::vector<std::string> overrides;
    auto* run = app.add_subcommand("run", "run one experiment from a config file");
    run->add_option("config", config_path, "path to the INI config")->required();
    run->add_option("--output-dir", output_dir_flag, "output directory (beats config and env)");
    run->add_option("--override", overrides, "section.key=value, applied after the file parse")
        ->take_all();

    std::string report_dir;
    auto* report = app.add_subcommand("report", "summarize a run directory");
    report->add_option("dir", report_dir, "directory produced by run")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            gdnls::ExperimentConfig cfg = gdnls::parse_config_file(config_path);
            for (const auto& o : overrides) gdnls::apply_override(cfg, o);
            if (cfg.output_dir.empty()) {
                if (const char* env = std::getenv("GDNLS_OUTPUT_DIR")) cfg.output_dir = env;
            }
            if (!output_dir_flag.empty()) cfg.output_dir = output_dir_flag;
            return gdnls::run_and_write(cfg);
        }
        return gdnls::write_report(report_dir, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
