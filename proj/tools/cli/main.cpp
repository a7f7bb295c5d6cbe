#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char **argv) {
    using namespace cstm;
    cli::RunConfig cfg;
    std::string spec_path;
    std::string life_table_path;
    std::string variant = "simtime";

    CLI::App app{"Time-dependent cohort state-transition models"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App *sub) {
        sub->add_option("--spec", spec_path, "Model spec (JSON); defaults to the built-in model");
        sub->add_option("--life-table", life_table_path, "CSV with header age,mortality_rate");
        sub->add_option("--variant", variant, "Model variant")
            ->check(CLI::IsMember({"simtime", "tunnels"}));
        sub->add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
    };

    auto *validate = app.add_subcommand("validate", "Check a spec and the arrays it builds");
    auto *run = app.add_subcommand("run", "Trace, epidemiological and economic outputs");
    auto *cea = app.add_subcommand("cea", "Cost-effectiveness table and frontier");
    auto *psa = app.add_subcommand("psa", "Probabilistic sensitivity analysis");
    for (auto *sub : {validate, run, cea, psa}) {
        add_common(sub);
    }
    run->add_flag("--write-arrays", cfg.write_arrays,
                  "Also write transition and dynamics arrays");
    psa->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    psa->add_option("--samples", cfg.n_samples, "Number of parameter sets")
        ->capture_default_str();
    psa->add_option("--wtp-min", cfg.wtp_min, "Smallest WTP")->capture_default_str();
    psa->add_option("--wtp-max", cfg.wtp_max, "Largest WTP")->capture_default_str();
    psa->add_option("--wtp-step", cfg.wtp_step, "WTP grid step")->capture_default_str();
    psa->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return cli::kUsage;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (!spec_path.empty()) {
        cfg.spec = spec_path;
    }
    if (!life_table_path.empty()) {
        cfg.life_table = life_table_path;
    }
    cfg.variant = variant_from_string(variant);
    return cli::dispatch(cfg, std::cout, std::cerr);
}
