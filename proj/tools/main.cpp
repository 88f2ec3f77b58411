// econet command line: simulate / analyze / ingest / renorm / var.

#include "econet/commands.hpp"
#include "econet/config.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"evolving trade-network simulator and heavy-tail risk toolkit"};
    app.set_version_flag("--version", econet::kVersionString);
    app.require_subcommand(1);

    econet::SimulateOptions sim;
    std::string sim_out;
    std::uint64_t sim_seed = 0, sim_steps = 0;
    CLI::App* simulate = app.add_subcommand("simulate", "run the trade-network simulation");
    simulate->add_option("--config", sim.config_path, "run configuration file (key-value or JSON)")
        ->required();
    CLI::Option* sim_out_opt = simulate->add_option("--out", sim_out, "output directory override");
    CLI::Option* sim_seed_opt = simulate->add_option("--seed", sim_seed, "master seed override");
    CLI::Option* sim_steps_opt = simulate->add_option("--steps", sim_steps, "step count override");
    CLI::Option* sim_seeds_opt =
        simulate->add_option("--seeds", sim.seeds, "batch mode: one run per seed")->delimiter(',');
    simulate->add_option("--jobs", sim.jobs, "parallel workers for batch mode");
    sim_seeds_opt->excludes(sim_seed_opt);

    econet::AnalyzeOptions ana;
    std::string ana_out, ana_mode;
    double ana_s_min = 0.0, ana_tail = 0.0;
    std::uint32_t ana_paths = 0;
    std::uint64_t ana_seed = 0;
    CLI::App* analyze = app.add_subcommand("analyze", "tail fits and topology tables");
    CLI::Option* ana_dir_opt =
        analyze->add_option("--run-dir", ana.run_dir, "simulation output directory");
    CLI::Option* ana_returns_opt =
        analyze->add_option("--returns", ana.returns_csv, "returns CSV (step,log_return)");
    ana_dir_opt->excludes(ana_returns_opt);
    CLI::Option* ana_out_opt = analyze->add_option("--out", ana_out, "output directory");
    CLI::Option* ana_mode_opt =
        analyze->add_option("--mode", ana_mode, "degree mode: in|out|total");
    CLI::Option* ana_smin_opt =
        analyze->add_option("--s-min", ana_s_min, "loss-tail fit cutoff (0 = automatic)");
    CLI::Option* ana_tail_opt =
        analyze->add_option("--tail-fraction", ana_tail, "Hill tail share in (0,1)");
    CLI::Option* ana_paths_opt =
        analyze->add_option("--path-samples", ana_paths, "BFS sources for l(k)");
    CLI::Option* ana_seed_opt = analyze->add_option("--seed", ana_seed, "sampling seed");

    econet::IngestOptions ing;
    CLI::App* ingest = app.add_subcommand("ingest", "validate an external (date,value) series");
    ingest->add_option("--input", ing.input_path, "CSV with date,value columns")->required();
    ingest->add_option("--out", ing.out_dir, "output directory");
    ingest->add_option("--date-col", ing.date_column, "date column name");
    ingest->add_option("--value-col", ing.value_column, "value column name");
    ingest->add_option("--label", ing.label, "series label");

    econet::RenormOptions ren;
    CLI::App* renorm = app.add_subcommand("renorm", "box-covering fractal dimensions");
    renorm->add_option("--edges", ren.edges_path, "edge-list snapshot")->required();
    renorm->add_option("--scales", ren.scales, "box diameters (>= 3 values)")->delimiter(',');
    renorm->add_option("--covers", ren.covers, "random covers per scale");
    renorm->add_option("--seed", ren.seed, "covering seed");
    renorm->add_option("--out", ren.out_dir, "output directory");

    econet::VarOptions var;
    double var_m_hat = 0.0;
    CLI::App* var_cmd = app.add_subcommand("var", "empirical VaR and the Pareto envelope");
    var_cmd->add_option("--losses", var.losses_path, "losses CSV (step,loss)")->required();
    var_cmd->add_option("--alpha", var.alphas, "confidence levels")->delimiter(',');
    var_cmd->add_option("--x-min", var.x_min, "Pareto tail cutoff (0 = automatic)");
    CLI::Option* var_m_opt =
        var_cmd->add_option("--m-hat", var_m_hat, "fitted tail exponent for the point estimate");
    var_cmd->add_option("--horizon", var.horizon, "time horizon in steps (metadata)");
    var_cmd->add_option("--out", var.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (simulate->parsed()) {
        if (*sim_out_opt)
            sim.out_dir = sim_out;
        if (*sim_seed_opt)
            sim.seed = sim_seed;
        if (*sim_steps_opt)
            sim.steps = sim_steps;
        return econet::cmd_simulate(sim, std::cerr);
    }
    if (analyze->parsed()) {
        if (*ana_out_opt)
            ana.out_dir = ana_out;
        if (*ana_mode_opt)
            ana.degree_mode = ana_mode;
        if (*ana_smin_opt)
            ana.s_min = ana_s_min;
        if (*ana_tail_opt)
            ana.tail_fraction = ana_tail;
        if (*ana_paths_opt)
            ana.path_samples = ana_paths;
        if (*ana_seed_opt)
            ana.seed = ana_seed;
        return econet::cmd_analyze(ana, std::cerr);
    }
    if (ingest->parsed())
        return econet::cmd_ingest(ing, std::cerr);
    if (renorm->parsed())
        return econet::cmd_renorm(ren, std::cerr);
    if (var_cmd->parsed()) {
        if (*var_m_opt)
            var.m_hat = var_m_hat;
        return econet::cmd_var(var, std::cerr);
    }
    return 2;
}
