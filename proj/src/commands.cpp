#include "econet/commands.hpp"

#include "econet/config.hpp"
#include "econet/csv.hpp"
#include "econet/errors.hpp"
#include "econet/renorm.hpp"
#include "econet/risk.hpp"
#include "econet/tails.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <mutex>
#include <thread>

namespace econet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_guarded(std::ostream& err, const std::function<void()>& fn) {
    try {
        fn();
        return 0;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const InsufficientTailError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const InsufficientDataError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) { // IoError, ParseError, EmptyInputError, ...
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

const char* band_name(Band band) {
    switch (band) {
    case Band::Below: return "below";
    case Band::Within: return "within";
    case Band::Above: return "above";
    }
    return "?";
}

json tail_fit_json(const TailFit& fit) {
    const BandCheck band = classify_bounds(fit.m_hat, fit.std_error);
    return json{{"method", fit.method == TailMethod::Hill ? "hill" : "regression"},
                {"m_hat", fit.m_hat},
                {"stderr", fit.std_error},
                {"s_min", fit.s_min},
                {"n_tail", fit.n_tail},
                {"gamma_implied", gamma_from_m(fit.m_hat)},
                {"classification", band_name(band.band)},
                {"classification_note", band.note},
                {"note", fit.note}};
}

// Loss extraction shared by analyze: negative log-returns sign-flipped; a
// file with no negative entries is taken as loss magnitudes directly.
std::pair<std::vector<double>, std::string> losses_from_returns(const std::vector<double>& r) {
    std::vector<double> losses;
    for (double v : r)
        if (v < 0.0)
            losses.push_back(-v);
    if (!losses.empty())
        return {losses, "losses are sign-flipped negative returns"};
    losses.clear();
    for (double v : r)
        if (v > 0.0)
            losses.push_back(v);
    return {losses, "input has no negative entries; values taken as loss magnitudes"};
}

} // namespace

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

namespace {

void simulate_to_dir(const RunConfig& cfg) {
    const std::uint64_t growth_seed = substream_seed(cfg.seed, "growth");
    const SimulationOutput out = run_simulation(cfg.dynamics, growth_seed);

    ensure_dir(cfg.out_dir);
    write_ut_csv(join(cfg.out_dir, "ut.csv"), out.u_t);
    write_returns_csv(join(cfg.out_dir, "returns.csv"), out.returns);
    write_avalanches_csv(join(cfg.out_dir, "avalanches.csv"), out.avalanches);
    write_edge_list(join(cfg.out_dir, "snapshot.edges"), out.final_network, cfg.dynamics.steps);

    std::uint64_t destroyed = 0;
    for (const AvalancheRecord& a : out.avalanches)
        destroyed += a.k_t;
    std::size_t clamps = 0;
    for (const StepReport& r : out.step_reports)
        clamps += r.growth_clamped ? 1 : 0;
    std::size_t negative_returns = 0, gaps = 0;
    for (double r : out.returns) {
        if (std::isnan(r))
            ++gaps;
        else if (r < 0.0)
            ++negative_returns;
    }

    json run{{"version", kVersionString},
             {"seed", cfg.seed},
             {"growth_seed", growth_seed},
             {"config", config_to_json(cfg)},
             {"totals",
              {{"steps", cfg.dynamics.steps},
               {"agents", out.final_network.agent_count()},
               {"links", out.final_network.link_count()},
               {"avalanches", out.avalanches.size()},
               {"destroyed_links", destroyed},
               {"growth_clamps", clamps},
               {"negative_returns", negative_returns},
               {"return_gaps", gaps},
               {"u_t_final", out.u_t.back()}}}};
    if (cfg.dynamics.check_conservation)
        run["totals"]["conservation_max_drift_per_link"] = out.conservation_max_drift;
    write_json_file(join(cfg.out_dir, "run.json"), run);
}

} // namespace

int cmd_simulate(const SimulateOptions& opts, std::ostream& err) {
    return run_guarded(err, [&] {
        RunConfig cfg = parse_config_file(opts.config_path);
        if (opts.out_dir)
            cfg.out_dir = *opts.out_dir;
        if (opts.seed)
            cfg.seed = *opts.seed;
        if (opts.steps)
            cfg.dynamics.steps = *opts.steps;
        cfg.validate();

        if (opts.seeds.size() <= 1) {
            if (opts.seeds.size() == 1)
                cfg.seed = opts.seeds.front();
            simulate_to_dir(cfg);
            return;
        }

        // Batch fan-out: one independent run per seed, no shared mutable
        // state between workers.
        if (opts.jobs < 1)
            throw ConfigError("--jobs must be >= 1");
        const std::string base_dir = cfg.out_dir;
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr first_error;

        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= opts.seeds.size())
                    return;
                try {
                    RunConfig run_cfg = cfg;
                    run_cfg.seed = opts.seeds[i];
                    run_cfg.out_dir =
                        join(base_dir, "seed-" + std::to_string(opts.seeds[i]));
                    simulate_to_dir(run_cfg);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                }
            }
        };

        std::vector<std::thread> pool;
        const std::size_t workers =
            std::min<std::size_t>(opts.jobs, opts.seeds.size());
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
        if (first_error)
            std::rethrow_exception(first_error);
    });
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& err) {
    return run_guarded(err, [&] {
        if (opts.run_dir.empty() == opts.returns_csv.empty())
            throw ConfigError("analyze needs exactly one of --run-dir or --returns");

        // Defaults follow the run's own config echo when analyzing a run dir.
        AnalysisConfig defaults;
        std::uint64_t master_seed = 1;
        std::string returns_path = opts.returns_csv;
        std::string snapshot_path;
        std::string out_dir = opts.out_dir.value_or(".");
        if (!opts.run_dir.empty()) {
            returns_path = join(opts.run_dir, "returns.csv");
            snapshot_path = join(opts.run_dir, "snapshot.edges");
            out_dir = opts.out_dir.value_or(opts.run_dir);
            const std::string run_json_path = join(opts.run_dir, "run.json");
            if (fs::exists(run_json_path)) {
                json run;
                try {
                    run = json::parse(read_text_file(run_json_path));
                } catch (const json::exception& e) {
                    throw ParseError(run_json_path + ": invalid JSON: " + e.what());
                }
                if (run.contains("config")) {
                    const RunConfig echoed =
                        config_from_json(run["config"], run_json_path);
                    defaults = echoed.analysis;
                    master_seed = echoed.seed;
                }
            }
        }

        const std::string mode_name = opts.degree_mode.value_or(defaults.degree_mode);
        DegreeMode mode = DegreeMode::Total;
        if (mode_name == "in")
            mode = DegreeMode::In;
        else if (mode_name == "out")
            mode = DegreeMode::Out;
        else if (mode_name != "total")
            throw ConfigError("degree mode must be one of in|out|total");
        const double s_min_opt = opts.s_min.value_or(defaults.s_min);
        const double tail_fraction = opts.tail_fraction.value_or(defaults.tail_fraction);
        const std::uint32_t path_samples = opts.path_samples.value_or(defaults.path_samples);
        const std::uint64_t seed = opts.seed.value_or(master_seed);

        // Loss tail of the returns series.
        const std::vector<double> returns = read_column_csv(returns_path, "log_return");
        auto [losses, loss_note] = losses_from_returns(returns);
        if (losses.empty())
            throw EmptyInputError(returns_path + ": no usable return entries");
        const double s_min = s_min_opt > 0.0 ? s_min_opt : default_s_min(losses);

        const TailFit hill_fit = hill(losses, tail_fraction);
        json tailfit = tail_fit_json(hill_fit);
        tailfit["loss_source"] = loss_note;
        tailfit["n_losses"] = losses.size();
        try {
            const TailFit reg = fit_ccdf_regression(ccdf(losses), s_min);
            tailfit["regression"] = {{"m_hat", reg.m_hat},
                                     {"stderr", reg.std_error},
                                     {"s_min", reg.s_min},
                                     {"n_tail", reg.n_tail},
                                     {"note", reg.note}};
        } catch (const InsufficientTailError& e) {
            tailfit["regression"] = {{"error", e.what()}};
        }

        ensure_dir(out_dir);

        // Topology tables when a snapshot is available.
        if (!snapshot_path.empty() && fs::exists(snapshot_path)) {
            const TradeNetwork net = load_edge_list(snapshot_path);
            const UndirectedGraph g = undirected_projection(net);

            write_histogram_csv(join(out_dir, "pk.csv"), degree_distribution(net, mode));
            write_degree_table_csv(join(out_dir, "dk.csv"), degree_correlation(g), "D", false);
            write_degree_table_csv(join(out_dir, "ck.csv"), clustering_by_degree(g), "C", false);
            write_degree_table_csv(
                join(out_dir, "lk.csv"),
                path_length_by_degree(g, path_samples, substream_seed(seed, "sampling")), "l",
                true);

            const std::vector<double> degrees = positive_degree_samples(net, mode);
            try {
                const TailFit deg_fit =
                    fit_ccdf_regression(ccdf(degrees), default_s_min(degrees));
                const double gamma_hat = deg_fit.m_hat + 1.0; // CCDF exponent -> density
                tailfit["degree_fit"] = {{"mode", mode_name},
                                         {"gamma_hat", gamma_hat},
                                         {"ccdf_exponent", deg_fit.m_hat},
                                         {"stderr", deg_fit.std_error},
                                         {"s_min", deg_fit.s_min},
                                         {"n_tail", deg_fit.n_tail}};
                const double bridge_m = m_from_gamma(gamma_hat);
                tailfit["bridge"] = {{"m_from_gamma_hat", bridge_m},
                                     {"gap", std::fabs(hill_fit.m_hat - bridge_m)}};
            } catch (const InsufficientTailError& e) {
                tailfit["degree_fit"] = {{"error", e.what()}};
            }
        }

        write_json_file(join(out_dir, "tailfit.json"), tailfit);
    });
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

int cmd_ingest(const IngestOptions& opts, std::ostream& err) {
    return run_guarded(err, [&] {
        std::string label = opts.label;
        if (label.empty())
            label = fs::path(opts.input_path).stem().string();

        const ExternalSeries series =
            read_series_csv(opts.input_path, opts.date_column, opts.value_column, label);

        std::vector<double> values;
        values.reserve(series.observations.size());
        for (const auto& [date, value] : series.observations)
            values.push_back(value);

        const std::vector<double> returns = log_returns(values);
        std::vector<std::pair<std::size_t, double>> losses;
        for (std::size_t t = 0; t < returns.size(); ++t)
            if (returns[t] < 0.0)
                losses.emplace_back(t, -returns[t]);

        ensure_dir(opts.out_dir);
        write_returns_csv(join(opts.out_dir, "returns.csv"), returns);
        write_losses_csv(join(opts.out_dir, "losses.csv"), losses);
        write_json_file(join(opts.out_dir, "ingest.json"),
                        json{{"version", kVersionString},
                             {"label", series.label},
                             {"observations", series.observations.size()},
                             {"returns", returns.size()},
                             {"losses", losses.size()},
                             {"first_date", series.observations.front().first},
                             {"last_date", series.observations.back().first}});
    });
}

// ---------------------------------------------------------------------------
// renorm
// ---------------------------------------------------------------------------

int cmd_renorm(const RenormOptions& opts, std::ostream& err) {
    return run_guarded(err, [&] {
        if (opts.scales.size() < 3)
            throw ConfigError("renorm needs at least 3 scales");

        const TradeNetwork net = load_edge_list(opts.edges_path);
        const UndirectedGraph g = undirected_projection(net);

        FractalOptions fopts;
        fopts.covers = opts.covers;
        const FractalFit fit =
            fractal_dimensions(g, opts.scales, substream_seed(opts.seed, "cover"), fopts);

        ensure_dir(opts.out_dir);

        std::string csv = "l_b,n_p_mean,n_p_std,k_p_mean\n";
        for (std::size_t i = 0; i < fit.scales.size(); ++i) {
            csv += std::to_string(fit.scales[i]) + ',' + format_double(fit.n_p[i]) + ',' +
                   format_double(fit.n_p_std[i]) + ',' + format_double(fit.k_p[i]) + '\n';
        }
        write_text_file(join(opts.out_dir, "renorm.csv"), csv);

        json out{{"version", kVersionString},
                 {"scales", fit.scales},
                 {"covers_per_scale", opts.covers},
                 {"d_b", fit.degenerate_b ? json() : json(fit.d_b)},
                 {"d_k", fit.degenerate_k ? json() : json(fit.d_k)},
                 {"r2_b", fit.degenerate_b ? json() : json(fit.r2_b)},
                 {"r2_k", fit.degenerate_k ? json() : json(fit.r2_k)}};
        if (fit.degenerate_b || fit.degenerate_k) {
            out["gamma_predicted"] = nullptr;
            out["note"] = "degenerate scaling; dimensions undefined at these scales";
        } else {
            try {
                const double gamma = gamma_prediction(fit.d_b, fit.d_k);
                out["gamma_predicted"] = gamma;
                out["gamma_band_check"] =
                    gamma < 2.0 ? "below" : (gamma > 3.0 ? "above" : "within");
            } catch (const DomainError& e) {
                out["gamma_predicted"] = nullptr;
                out["note"] = e.what();
            }
        }

        // Directly fitted degree exponent, when the degree tail supports it.
        const std::vector<double> degrees = positive_degree_samples(net, DegreeMode::Total);
        try {
            const TailFit deg_fit = fit_ccdf_regression(ccdf(degrees), default_s_min(degrees));
            out["gamma_hat"] = deg_fit.m_hat + 1.0;
        } catch (const InsufficientTailError& e) {
            out["gamma_hat"] = nullptr;
            out["gamma_hat_note"] = e.what();
        }

        write_json_file(join(opts.out_dir, "renorm.json"), out);
    });
}

// ---------------------------------------------------------------------------
// var
// ---------------------------------------------------------------------------

int cmd_var(const VarOptions& opts, std::ostream& err) {
    return run_guarded(err, [&] {
        for (double alpha : opts.alphas)
            if (alpha <= 0.0 || alpha >= 1.0)
                throw ConfigError("alpha must be in (0,1)");
        if (opts.alphas.empty())
            throw ConfigError("at least one alpha required");

        const std::vector<double> losses = read_column_csv(opts.losses_path, "loss");
        if (losses.empty())
            throw EmptyInputError(opts.losses_path + ": no loss entries");
        const double x_min = opts.x_min > 0.0 ? opts.x_min : default_s_min(losses);

        json entries = json::array();
        for (double alpha : opts.alphas) {
            VaRQuery query;
            query.alpha = alpha;
            query.horizon = opts.horizon;
            query.x_min = x_min;
            const VaREnvelope env = var_envelope(query, opts.m_hat);
            json entry{{"alpha", alpha},
                       {"empirical_var", empirical_var(losses, alpha)},
                       {"var_lower", env.var_lower},
                       {"var_upper", env.var_upper}};
            entry["var_point"] = env.var_point ? json(*env.var_point) : json();
            if (!env.note.empty())
                entry["note"] = env.note;
            entries.push_back(entry);
        }

        ensure_dir(opts.out_dir);
        write_json_file(join(opts.out_dir, "var.json"),
                        json{{"version", kVersionString},
                             {"x_min", x_min},
                             {"horizon", opts.horizon},
                             {"m_source", opts.m_hat ? "fitted" : "bounds-only"},
                             {"m_hat", opts.m_hat ? json(*opts.m_hat) : json()},
                             {"n_losses", losses.size()},
                             {"results", entries}});
    });
}

} // namespace econet
