// blockade: steady states, photon statistics, and parameter sweeps for a
// driven two-mode chi(2) cavity with an embedded two-level atom.

#include "blockade/blockade.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out;
    int workers = -1;
    int trunc_a = -1;
    int trunc_b = -1;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "key=value config file");
    cmd->add_option("--set", args.sets, "override a config key (repeatable, key=value)");
    cmd->add_option("--out", args.out, "output file (sweep) or directory (figure)");
    cmd->add_option("--workers", args.workers, "sweep worker count");
    cmd->add_option("--trunc-a", args.trunc_a, "Fock levels kept for mode a");
    cmd->add_option("--trunc-b", args.trunc_b, "Fock levels kept for mode b");
}

blockade::RunConfig resolve_config(const CommonArgs& args) {
    blockade::RunConfig cfg = blockade::default_config();
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) {
            throw blockade::config_error("cannot read config file '" + args.config_path + "'");
        }
        std::ostringstream text;
        text << in.rdbuf();
        blockade::parse_config_text(cfg, text.str());
    }
    for (const auto& s : args.sets) blockade::apply_override(cfg, s);
    if (!args.out.empty()) cfg.out = args.out;
    if (args.workers >= 0) cfg.workers = args.workers;
    if (args.trunc_a >= 0) cfg.na_dim = args.trunc_a;
    if (args.trunc_b >= 0) cfg.nb_dim = args.trunc_b;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"photon-blockade steady-state simulator"};
    app.require_subcommand(1);

    CommonArgs point_args, sweep_args, figure_args, validate_args, evolve_args;
    std::string preset;

    CLI::App* point = app.add_subcommand("point", "solve one steady state and report observables");
    add_common_options(point, point_args);

    CLI::App* sweep = app.add_subcommand("sweep", "run the configured parameter sweep to CSV");
    add_common_options(sweep, sweep_args);

    CLI::App* figure = app.add_subcommand("figure", "run a figure preset (fig2a..fig4b) to CSV");
    figure->add_option("preset", preset, "preset name")->required();
    add_common_options(figure, figure_args);

    CLI::App* validate = app.add_subcommand("validate", "run the structural invariant suite");
    add_common_options(validate, validate_args);

    CLI::App* evolve = app.add_subcommand("evolve", "run the time-evolution solver directly");
    add_common_options(evolve, evolve_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad invocation is a config error
    }

    try {
        if (point->parsed()) return blockade::cmd_point(resolve_config(point_args), std::cout);
        if (sweep->parsed()) return blockade::cmd_sweep(resolve_config(sweep_args), std::cout);
        if (figure->parsed()) {
            return blockade::cmd_figure(preset, resolve_config(figure_args), figure_args.sets,
                                        std::cout);
        }
        if (validate->parsed()) {
            return blockade::cmd_validate(resolve_config(validate_args), std::cout);
        }
        if (evolve->parsed()) return blockade::cmd_evolve(resolve_config(evolve_args), std::cout);
    } catch (const blockade::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
