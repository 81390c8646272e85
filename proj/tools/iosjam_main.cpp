// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iosjam/config.hpp"
#include "iosjam/sweep.hpp"
#include "iosjam/verify.hpp"

namespace {

struct Options {
    std::string config_path;
    std::uint64_t seed = 0;
    std::size_t blocks = 0;
    unsigned threads = 0;
    std::string out_path;
    std::string axis = "power_dbm";
    std::string preset;
    std::string suite = "all";
    bool seed_set = false, blocks_set = false, threads_set = false, out_set = false;
};

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config_path, "structured key=value config file");
    cmd->add_option("--seed", opt.seed, "master seed override")
        ->each([&opt](const std::string&) { opt.seed_set = true; });
    cmd->add_option("--blocks", opt.blocks, "Monte Carlo blocks per point override")
        ->each([&opt](const std::string&) { opt.blocks_set = true; });
    cmd->add_option("--threads", opt.threads, "worker threads (identical output at any count)")
        ->each([&opt](const std::string&) { opt.threads_set = true; });
    cmd->add_option("--out", opt.out_path, "output CSV path")
        ->each([&opt](const std::string&) { opt.out_set = true; });
}

iosjam::SimConfig load_with_overrides(const Options& opt) {
    iosjam::SimConfig cfg =
        opt.config_path.empty() ? iosjam::default_config() : iosjam::load_config_file(opt.config_path);
    if (opt.seed_set) cfg.seed = opt.seed;
    if (opt.blocks_set) cfg.n_blocks = opt.blocks;
    if (opt.threads_set) cfg.threads = opt.threads;
    if (opt.out_set) cfg.out_path = opt.out_path;
    return cfg;
}

iosjam::SweepAxis parse_axis(const std::string& name) {
    static const std::map<std::string, iosjam::SweepAxis> axes{
        {"power_dbm", iosjam::SweepAxis::PowerDbm},
        {"n_elements", iosjam::SweepAxis::Elements},
        {"n_antennas", iosjam::SweepAxis::Antennas},
        {"n_antennas_nd16x", iosjam::SweepAxis::AntennasElements16x},
        {"n_users", iosjam::SweepAxis::Users},
    };
    const auto it = axes.find(name);
    if (it == axes.end())
        throw iosjam::ConfigError("unknown axis '" + name +
                                      "' (power_dbm|n_elements|n_antennas|n_antennas_nd16x|n_users)",
                                  0);
    return it->second;
}

int run_sweep_cmd(const Options& opt, iosjam::SweepAxis axis) {
    const iosjam::SimConfig cfg = load_with_overrides(opt);
    const auto rows = iosjam::run_sweep(cfg, axis, iosjam::all_scheme_variants());
    iosjam::write_csv_file(rows, cfg.out_path);
    std::cout << "wrote " << rows.size() << " rows to " << cfg.out_path << "\n";
    return 0;
}

int run_bounds_cmd(const Options& opt) {
    const iosjam::SimConfig cfg = load_with_overrides(opt);
    const auto rows = iosjam::bound_rows(cfg, parse_axis(opt.axis));
    if (opt.out_set) {
        iosjam::write_csv_file(rows, cfg.out_path);
        std::cout << "wrote " << rows.size() << " rows to " << cfg.out_path << "\n";
    } else {
        iosjam::emit_csv(rows, std::cout);
    }
    return 0;
}

int run_verify_cmd(const Options& opt) {
    const iosjam::SimConfig cfg = load_with_overrides(opt);
    iosjam::VerifyReport rep;
    if (opt.suite == "propositions") rep = iosjam::verify_propositions(cfg);
    else if (opt.suite == "wishart") rep = iosjam::verify_wishart(cfg);
    else if (opt.suite == "zf") rep = iosjam::verify_zf(cfg);
    else if (opt.suite == "bounds") rep = iosjam::verify_bounds(cfg);
    else if (opt.suite == "all") rep = iosjam::verify_all(cfg);
    else
        throw iosjam::ConfigError(
            "unknown verify suite '" + opt.suite + "' (propositions|wishart|zf|bounds|all)", 0);
    iosjam::print_report(rep, std::cout);
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"passive omni-surface jamming simulator"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over one axis, CSV out");
    sweep->add_option("--axis", opt.axis,
                      "power_dbm|n_elements|n_antennas|n_antennas_nd16x|n_users");
    add_common_flags(sweep, opt);

    CLI::App* repro = app.add_subcommand("reproduce", "run a named preset sweep (fig2..fig6)");
    repro->add_option("preset", opt.preset, "fig2|fig3|fig4|fig5|fig6")->required();
    add_common_flags(repro, opt);

    CLI::App* verify = app.add_subcommand("verify", "statistical verification suites");
    verify->add_option("suite", opt.suite, "propositions|wishart|zf|bounds|all");
    add_common_flags(verify, opt);

    CLI::App* bounds = app.add_subcommand("bounds", "closed-form rate bounds only, CSV");
    bounds->add_option("--axis", opt.axis,
                       "power_dbm|n_elements|n_antennas|n_antennas_nd16x|n_users");
    add_common_flags(bounds, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sweep->parsed()) return run_sweep_cmd(opt, parse_axis(opt.axis));
        if (repro->parsed()) return run_sweep_cmd(opt, iosjam::preset_axis(opt.preset));
        if (verify->parsed()) return run_verify_cmd(opt);
        if (bounds->parsed()) return run_bounds_cmd(opt);
    } catch (const iosjam::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
