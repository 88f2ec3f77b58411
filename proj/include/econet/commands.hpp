#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace econet {

// Exit codes shared by every subcommand:
//   0 success, 2 config/usage, 3 io/parse, 4 data validation.

struct SimulateOptions {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> steps;
    std::vector<std::uint64_t> seeds; ///< batch mode: one run per seed in out_dir/seed-<s>/
    std::uint32_t jobs = 1;           ///< parallel workers for batch mode
};

struct AnalyzeOptions {
    std::string run_dir;     ///< directory produced by `simulate`
    std::string returns_csv; ///< alternatively: a bare returns file
    std::optional<std::string> out_dir;
    std::optional<std::string> degree_mode;
    std::optional<double> s_min;
    std::optional<double> tail_fraction;
    std::optional<std::uint32_t> path_samples;
    std::optional<std::uint64_t> seed;
};

struct IngestOptions {
    std::string input_path;
    std::string out_dir = ".";
    std::string date_column = "date";
    std::string value_column = "value";
    std::string label; ///< defaults to the input file stem
};

struct RenormOptions {
    std::string edges_path;
    std::vector<std::uint32_t> scales{2, 3, 4};
    std::uint32_t covers = 8;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

struct VarOptions {
    std::string losses_path;
    std::vector<double> alphas{0.95, 0.99};
    double x_min = 0.0; ///< 0 = automatic (90th percentile of losses)
    std::optional<double> m_hat;
    std::uint64_t horizon = 1;
    std::string out_dir = ".";
};

int cmd_simulate(const SimulateOptions& opts, std::ostream& err);
int cmd_analyze(const AnalyzeOptions& opts, std::ostream& err);
int cmd_ingest(const IngestOptions& opts, std::ostream& err);
int cmd_renorm(const RenormOptions& opts, std::ostream& err);
int cmd_var(const VarOptions& opts, std::ostream& err);

} // namespace econet
