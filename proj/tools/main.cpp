#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "plume/experiment.hpp"
#include "plume/mission.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw plume::ConfigError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

plume::ExperimentSpec load_spec(const std::string& config_path, std::optional<long long> seed,
                                const std::string& out_override) {
    plume::ExperimentSpec spec = plume::parse_config(read_file(config_path));
    if (seed) spec.base.rng_seed = static_cast<std::uint64_t>(*seed);
    if (!out_override.empty()) spec.out_path = out_override;
    return spec;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

int cmd_run(const plume::ExperimentSpec& spec) {
    plume::MissionConfig config = spec.base;
    config.rng_seed = plume::mission_seed(spec.base.rng_seed, 0, 0);
    const plume::PlumeSource source = plume::draw_source(spec, spec.base.rng_seed, 0, 0);
    const plume::ConcentrationField field(source, source.effective_height);

    const plume::MissionResult result = plume::run_mission(config, field);
    plume::write_mission_summary(std::cout, config, result);

    if (!spec.out_path.empty()) {
        std::ostringstream p1, p2, summary;
        plume::write_samples_csv(p1, result.phase1_samples);
        plume::write_samples_csv(p2, result.phase2_samples);
        plume::write_mission_summary(summary, config, result);
        write_text(spec.out_path + ".phase1_samples.csv", p1.str());
        write_text(spec.out_path + ".phase2_samples.csv", p2.str());
        write_text(spec.out_path + ".summary.csv", summary.str());
        std::cout << "wrote " << spec.out_path << ".{phase1_samples,phase2_samples,summary}.csv\n";
    }
    return 0;
}

int cmd_sweep(const plume::ExperimentSpec& spec) {
    const plume::ExperimentResult result = plume::run_experiment(spec);
    std::ostringstream os;
    plume::write_result_csv(os, result);
    if (spec.out_path.empty()) {
        std::cout << os.str();
    } else {
        write_text(spec.out_path, os.str());
        std::cout << "wrote " << spec.out_path << "\n";
    }
    return 0;
}

int cmd_dump_field(const plume::ExperimentSpec& spec) {
    const plume::PlumeSource source = plume::draw_source(spec, spec.base.rng_seed, 0, 0);
    const plume::ConcentrationField field(source, source.effective_height);
    std::ostringstream os;
    plume::dump_concentration_grid(os, field, spec.base.region);
    if (spec.out_path.empty()) {
        std::cout << os.str();
    } else {
        write_text(spec.out_path, os.str());
        std::cout << "wrote " << spec.out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-drone toxic plume survey simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::optional<long long> seed;

    auto add_common = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--config", config_path, "experiment configuration file")->required();
        cmd->add_option("--seed", seed, "override the master seed from the config");
        if (needs_out) cmd->add_option("--out", out_override, "override the output path");
    };

    auto* run = app.add_subcommand("run", "run a single mission and print its summary row");
    add_common(run, true);
    auto* sweep = app.add_subcommand("sweep", "run the configured experiment sweep");
    add_common(sweep, true);
    auto* validate = app.add_subcommand("validate", "check the configuration and exit");
    add_common(validate, false);
    auto* dump = app.add_subcommand("dump-field", "export the ground-truth concentration grid");
    add_common(dump, true);

    CLI11_PARSE(app, argc, argv);

    try {
        const plume::ExperimentSpec spec = load_spec(config_path, seed, out_override);
        if (validate->parsed()) {
            std::cout << "configuration ok\n";
            return 0;
        }
        if (run->parsed()) return cmd_run(spec);
        if (sweep->parsed()) return cmd_sweep(spec);
        if (dump->parsed()) return cmd_dump_field(spec);
    } catch (const plume::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
