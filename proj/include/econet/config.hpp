#pragma once

#include "econet/dynamics.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace econet {

inline constexpr const char* kVersionString = "econet 0.1.0";

/// Analysis knobs shared by the analyze/renorm/var commands.
struct AnalysisConfig {
    std::string degree_mode = "total"; ///< in | out | total
    double s_min = 0.0;                ///< 0 = automatic (90th percentile)
    double tail_fraction = 0.05;       ///< Hill tail share
    std::vector<std::uint32_t> renorm_scales{2, 3, 4};
    std::uint32_t cover_seeds = 8;     ///< covers averaged per scale
    std::uint64_t cover_seed = 0;      ///< 0 = derive from the master seed
    std::vector<double> var_alphas{0.95, 0.99};
    double var_x_min = 0.0;            ///< 0 = automatic (90th percentile of losses)
    std::uint32_t path_samples = 1000; ///< BFS sources for l(k)

    bool operator==(const AnalysisConfig&) const = default;
    void validate() const;
};

struct RunConfig {
    DynamicsConfig dynamics;
    AnalysisConfig analysis;
    std::string out_dir = "out";
    std::uint64_t seed = 1;

    bool operator==(const RunConfig&) const = default;
    void validate() const;
};

/// Parses either the flat key-value format (dotted section prefixes) or JSON;
/// files starting with '{' are treated as JSON. Unknown keys are rejected
/// with the offending key named.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& source_name);

std::string to_kv_text(const RunConfig& cfg);
nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j, const std::string& source_name);

} // namespace econet
