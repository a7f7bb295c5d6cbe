#include "cli.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "cstm/cea.hpp"
#include "cstm/csv.hpp"
#include "cstm/epi.hpp"
#include "cstm/life_table.hpp"
#include "cstm/psa.hpp"
#include "cstm/spec_io.hpp"
#include "cstm/transition_builder.hpp"

namespace cstm::cli {

namespace fs = std::filesystem;

std::string format_currency(double v) {
    const bool negative = v < 0;
    auto digits = fmt::format("{:.0f}", std::abs(v));
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0 && (digits.size() - i) % 3 == 0) {
            out += ',';
        }
        out += digits[i];
    }
    return (negative ? "-$" : "$") + out;
}

ModelSpec load_model(const RunConfig &cfg) {
    ModelSpec spec = cfg.spec ? load_spec(*cfg.spec) : builtin_sick_sicker();
    if (cfg.life_table) {
        spec.life_table = read_life_table_csv(*cfg.life_table);
        spec.life_table_source = cfg.life_table->string();
        spec.life_table_error.clear();
    }
    return spec;
}

namespace {

std::string file_stem(const std::string &strategy) {
    std::string s;
    for (char c : strategy) {
        s += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_';
    }
    return s;
}

ModelSpec load_valid_model(const RunConfig &cfg) {
    auto spec = load_model(cfg);
    auto report = validate_spec(spec);
    if (!report.ok()) {
        throw ValidationError(std::move(report));
    }
    return spec;
}

template <typename Body> int guarded(std::ostream &err, Body &&body) {
    try {
        return body();
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError &e) {
        err << "validation failed:\n" << e.report().to_string();
        return kValidationFailed;
    } catch (const IoError &e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

void write_strategy_outputs(const RunConfig &cfg, const ModelSpec &spec, const Strategy &strategy,
                            const StrategyResult &r) {
    const auto stem = file_stem(r.name);
    const auto &death = spec.states.death_states();
    if (r.expanded_trace) {
        write_file(cfg.out_dir / ("trace_" + stem + ".csv"),
                   [&](std::ostream &o) { write_trace_csv(o, *r.expanded_trace); });
        write_file(cfg.out_dir / ("trace_aggregated_" + stem + ".csv"),
                   [&](std::ostream &o) { write_trace_csv(o, r.trace); });
    } else {
        write_file(cfg.out_dir / ("trace_" + stem + ".csv"),
                   [&](std::ostream &o) { write_trace_csv(o, r.trace); });
    }
    write_file(cfg.out_dir / ("survival_" + stem + ".csv"),
               [&](std::ostream &o) { write_survival_csv(o, survival(r.trace, death)); });
    write_file(cfg.out_dir / ("prevalence_" + stem + ".csv"), [&](std::ostream &o) {
        write_prevalence_csv(o, {"S1", "S2", "S1+S2"},
                             {prevalence(r.trace, {"S1"}, death), prevalence(r.trace, {"S2"}, death),
                              prevalence(r.trace, {"S1", "S2"}, death)});
    });
    write_file(cfg.out_dir / ("outcomes_" + stem + ".csv"),
               [&](std::ostream &o) { write_outcomes_csv(o, r); });

    if (cfg.write_arrays) {
        TransitionArray arr;
        Eigen::RowVectorXd init;
        if (cfg.variant == ModelVariant::simtime) {
            arr = build_simtime_array(spec, strategy);
            init = to_row(spec.initial);
        } else {
            const auto plan =
                TunnelPlan::make(spec.states.names(), spec.tunnels.state, spec.tunnels.size);
            arr = build_tunnel_array(spec, strategy, plan);
            init = expand_initial(spec.initial, plan);
        }
        write_file(cfg.out_dir / ("transitions_" + stem + ".csv"),
                   [&](std::ostream &o) { write_transition_array_csv(o, arr); });
        write_file(cfg.out_dir / ("dynamics_" + stem + ".csv"), [&](std::ostream &o) {
            write_dynamics_csv(o, run_transition_dynamics(init, arr));
        });
    }
}

void print_cea(std::ostream &out, const std::vector<CeaRow> &rows) {
    out << fmt::format("{:<10} {:>12} {:>9} {:>12} {:>9} {:>12} {:>6}\n", "strategy", "cost",
                       "QALYs", "inc. cost", "inc. QALY", "ICER", "status");
    const auto num = [](double v, auto &&fmt_fn) {
        return std::isnan(v) ? std::string("-") : fmt_fn(v);
    };
    for (const auto &r : rows) {
        out << fmt::format(
            "{:<10} {:>12} {:>9.3f} {:>12} {:>9} {:>12} {:>6}\n", r.name, format_currency(r.cost),
            r.effect, num(r.inc_cost, format_currency),
            num(r.inc_effect, [](double v) { return fmt::format("{:.3f}", v); }),
            num(r.icer, format_currency), to_string(r.status));
    }
}

std::vector<CeaRow> cea_rows(const std::vector<StrategyResult> &results) {
    std::vector<double> costs, effects;
    std::vector<std::string> names;
    for (const auto &r : results) {
        costs.push_back(r.total_cost);
        effects.push_back(r.total_qaly);
        names.push_back(r.name);
    }
    return calculate_icers(costs, effects, names);
}

} // namespace

int cmd_validate(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const auto spec = load_model(cfg);
        auto report = validate_spec(spec);
        if (report.ok()) {
            for (const auto &s : spec.strategies) {
                try {
                    if (cfg.variant == ModelVariant::simtime) {
                        (void)build_simtime_array(spec, s);
                    } else {
                        const auto plan = TunnelPlan::make(spec.states.names(),
                                                           spec.tunnels.state, spec.tunnels.size);
                        (void)build_tunnel_array(spec, s, plan);
                    }
                } catch (const ValidationError &e) {
                    report.merge(e.report());
                }
            }
        }
        if (!report.ok()) {
            out << "INVALID\n" << report.to_string();
            return kValidationFailed;
        }
        out << fmt::format("OK: '{}' is valid; {} strategies build as {} arrays\n", spec.name,
                           spec.strategies.size(), to_string(cfg.variant));
        return kOk;
    });
}

int cmd_run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const auto spec = load_valid_model(cfg);
        const auto results = evaluate_all(spec, cfg.variant);
        for (std::size_t i = 0; i < results.size(); ++i) {
            write_strategy_outputs(cfg, spec, spec.strategies[i], results[i]);
        }
        write_file(cfg.out_dir / "totals.csv",
                   [&](std::ostream &o) { write_totals_csv(o, results); });

        std::string summary = fmt::format("{} ({} model, {} cycles)\n", spec.name,
                                          to_string(cfg.variant), spec.grid.n_cycles);
        summary += fmt::format("{:<12} {:>14} {:>10} {:>10}\n", "strategy", "cost", "QALYs",
                               "LE");
        for (const auto &r : results) {
            const double le = life_expectancy(survival(r.trace, spec.states.death_states()),
                                              spec.grid.cycle_length);
            summary += fmt::format("{:<12} {:>14} {:>10.3f} {:>10.2f}\n", r.name,
                                   format_currency(r.total_cost), r.total_qaly, le);
        }
        write_text_file(cfg.out_dir / "summary.txt", summary);
        out << summary << "outputs written to " << cfg.out_dir.string() << '\n';
        return kOk;
    });
}

int cmd_cea(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const auto spec = load_valid_model(cfg);
        const auto rows = cea_rows(evaluate_all(spec, cfg.variant));
        write_file(cfg.out_dir / "cea.csv", [&](std::ostream &o) { write_cea_csv(o, rows); });
        write_file(cfg.out_dir / "frontier.csv",
                   [&](std::ostream &o) { write_frontier_csv(o, rows); });
        print_cea(out, rows);
        return kOk;
    });
}

int cmd_psa(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        if (cfg.n_samples < 1) {
            throw UsageError("--samples must be at least 1");
        }
        std::vector<double> grid;
        try {
            grid = wtp_grid(cfg.wtp_min, cfg.wtp_max, cfg.wtp_step);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        const auto spec = load_valid_model(cfg);
        const auto dists = spec.psa ? *spec.psa : default_sick_sicker_distributions();
        const auto res = run_psa(spec, dists, cfg.n_samples, cfg.seed, cfg.variant, cfg.threads);
        const auto curves = decision_curves(res, grid);

        write_file(cfg.out_dir / "psa_samples.csv",
                   [&](std::ostream &o) { write_psa_samples_csv(o, res); });
        write_file(cfg.out_dir / "psa_parameters.csv",
                   [&](std::ostream &o) { write_psa_parameters_csv(o, res); });
        write_file(cfg.out_dir / "ceac.csv", [&](std::ostream &o) { write_ceac_csv(o, curves); });
        write_file(cfg.out_dir / "elc.csv", [&](std::ostream &o) { write_elc_csv(o, curves); });
        write_file(cfg.out_dir / "evpi.csv", [&](std::ostream &o) { write_evpi_csv(o, curves); });

        out << fmt::format("PSA: {} samples, seed {}, {} model\n", res.n_samples(), res.seed,
                           to_string(cfg.variant));
        out << "CEAF: " << res.strategies[static_cast<std::size_t>(curves.ceaf.front())] << " from "
            << format_currency(grid.front());
        for (std::size_t w = 1; w < grid.size(); ++w) {
            if (curves.ceaf[w] != curves.ceaf[w - 1]) {
                out << ", " << res.strategies[static_cast<std::size_t>(curves.ceaf[w])]
                    << " from " << format_currency(grid[w]);
            }
        }
        Eigen::Index peak = 0;
        curves.evpi.maxCoeff(&peak);
        out << fmt::format("\nEVPI peaks at {} (WTP {})\n", format_currency(curves.evpi(peak)),
                           format_currency(grid[static_cast<std::size_t>(peak)]));
        out << "outputs written to " << cfg.out_dir.string() << '\n';
        return kOk;
    });
}

int dispatch(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (cfg.subcommand == "validate") {
        return cmd_validate(cfg, out, err);
    }
    if (cfg.subcommand == "run") {
        return cmd_run(cfg, out, err);
    }
    if (cfg.subcommand == "cea") {
        return cmd_cea(cfg, out, err);
    }
    if (cfg.subcommand == "psa") {
        return cmd_psa(cfg, out, err);
    }
    err << "usage error: unknown command '" << cfg.subcommand << "'\n";
    return kUsage;
}

} // namespace cstm::cli
