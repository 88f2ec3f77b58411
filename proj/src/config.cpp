#include "econet/config.hpp"

#include "econet/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace econet {

void AnalysisConfig::validate() const {
    if (degree_mode != "in" && degree_mode != "out" && degree_mode != "total")
        throw ConfigError("analysis.degree_mode must be one of in|out|total");
    if (s_min < 0.0)
        throw ConfigError("analysis.s_min must be >= 0 (0 = automatic)");
    if (tail_fraction <= 0.0 || tail_fraction >= 1.0)
        throw ConfigError("analysis.tail_fraction must be in (0,1)");
    if (renorm_scales.size() < 3)
        throw ConfigError("analysis.renorm_scales needs at least 3 scales");
    for (std::uint32_t s : renorm_scales)
        if (s < 1)
            throw ConfigError("analysis.renorm_scales entries must be >= 1");
    if (cover_seeds < 1)
        throw ConfigError("analysis.cover_seeds must be >= 1");
    for (double a : var_alphas)
        if (a <= 0.0 || a >= 1.0)
            throw ConfigError("analysis.var_alphas entries must be in (0,1)");
    if (var_x_min < 0.0)
        throw ConfigError("analysis.var_x_min must be >= 0 (0 = automatic)");
    if (path_samples < 1)
        throw ConfigError("analysis.path_samples must be >= 1");
}

void RunConfig::validate() const {
    dynamics.validate();
    analysis.validate();
    if (out_dir.empty())
        throw ConfigError("out_dir must not be empty");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& value, const std::string& key) {
    const std::string v = trim(value);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("config key '" + key + "': cannot parse number '" + value + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    const std::string v = trim(value);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("config key '" + key + "': cannot parse integer '" + value + "'");
    return out;
}

std::uint32_t parse_u32(const std::string& value, const std::string& key) {
    const std::uint64_t v = parse_u64(value, key);
    if (v > 0xffffffffULL)
        throw ConfigError("config key '" + key + "': value out of range");
    return static_cast<std::uint32_t>(v);
}

bool parse_bool(const std::string& value, const std::string& key) {
    const std::string v = trim(value);
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    throw ConfigError("config key '" + key + "': cannot parse boolean '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(value);
    while (std::getline(ss, item, ','))
        out.push_back(trim(item));
    return out;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    GrowthConfig& g = cfg.dynamics.growth;
    DynamicsConfig& d = cfg.dynamics;
    AnalysisConfig& a = cfg.analysis;
    if (key == "growth.n0")
        g.n0 = parse_u32(value, key);
    else if (key == "growth.m_new")
        g.m_new = parse_u32(value, key);
    else if (key == "growth.pa_offset")
        g.pa_offset = parse_double(value, key);
    else if (key == "growth.default_weight")
        g.default_weight = parse_double(value, key);
    else if (key == "growth.direction_mix")
        g.direction_mix = parse_double(value, key);
    else if (key == "dynamics.theta")
        d.theta = parse_double(value, key);
    else if (key == "dynamics.steps")
        d.steps = parse_u64(value, key);
    else if (key == "dynamics.new_agent_probability")
        d.new_agent_probability = parse_double(value, key);
    else if (key == "dynamics.check_conservation")
        d.check_conservation = parse_bool(value, key);
    else if (key == "analysis.degree_mode")
        a.degree_mode = trim(value);
    else if (key == "analysis.s_min")
        a.s_min = parse_double(value, key);
    else if (key == "analysis.tail_fraction")
        a.tail_fraction = parse_double(value, key);
    else if (key == "analysis.renorm_scales") {
        a.renorm_scales.clear();
        for (const std::string& item : split_list(value))
            a.renorm_scales.push_back(parse_u32(item, key));
    } else if (key == "analysis.cover_seeds")
        a.cover_seeds = parse_u32(value, key);
    else if (key == "analysis.cover_seed")
        a.cover_seed = parse_u64(value, key);
    else if (key == "analysis.var_alphas") {
        a.var_alphas.clear();
        for (const std::string& item : split_list(value))
            a.var_alphas.push_back(parse_double(item, key));
    } else if (key == "analysis.var_x_min")
        a.var_x_min = parse_double(value, key);
    else if (key == "analysis.path_samples")
        a.path_samples = parse_u32(value, key);
    else if (key == "out_dir")
        cfg.out_dir = trim(value);
    else if (key == "seed")
        cfg.seed = parse_u64(value, key);
    else
        throw ConfigError("unknown config key '" + key + "'");
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v); // lossless round trip
    return buf;
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& source_name) {
    // JSON and key-value are accepted interchangeably.
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        if (c == '{') {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(text);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(source_name + ": invalid JSON: " + e.what());
            }
            return config_from_json(j, source_name);
        }
        break;
    }

    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(source_name + ":" + std::to_string(line_no) +
                             ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_key(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

std::string to_kv_text(const RunConfig& cfg) {
    const GrowthConfig& g = cfg.dynamics.growth;
    const DynamicsConfig& d = cfg.dynamics;
    const AnalysisConfig& a = cfg.analysis;
    std::ostringstream out;
    out << "growth.n0 = " << g.n0 << "\n";
    out << "growth.m_new = " << g.m_new << "\n";
    out << "growth.pa_offset = " << format_full(g.pa_offset) << "\n";
    out << "growth.default_weight = " << format_full(g.default_weight) << "\n";
    out << "growth.direction_mix = " << format_full(g.direction_mix) << "\n";
    out << "dynamics.theta = " << format_full(d.theta) << "\n";
    out << "dynamics.steps = " << d.steps << "\n";
    out << "dynamics.new_agent_probability = " << format_full(d.new_agent_probability) << "\n";
    out << "dynamics.check_conservation = " << (d.check_conservation ? "true" : "false") << "\n";
    out << "analysis.degree_mode = " << a.degree_mode << "\n";
    out << "analysis.s_min = " << format_full(a.s_min) << "\n";
    out << "analysis.tail_fraction = " << format_full(a.tail_fraction) << "\n";
    out << "analysis.renorm_scales = ";
    for (std::size_t i = 0; i < a.renorm_scales.size(); ++i)
        out << (i ? "," : "") << a.renorm_scales[i];
    out << "\n";
    out << "analysis.cover_seeds = " << a.cover_seeds << "\n";
    out << "analysis.cover_seed = " << a.cover_seed << "\n";
    out << "analysis.var_alphas = ";
    for (std::size_t i = 0; i < a.var_alphas.size(); ++i)
        out << (i ? "," : "") << format_full(a.var_alphas[i]);
    out << "\n";
    out << "analysis.var_x_min = " << format_full(a.var_x_min) << "\n";
    out << "analysis.path_samples = " << a.path_samples << "\n";
    out << "out_dir = " << cfg.out_dir << "\n";
    out << "seed = " << cfg.seed << "\n";
    return out.str();
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    const GrowthConfig& g = cfg.dynamics.growth;
    const DynamicsConfig& d = cfg.dynamics;
    const AnalysisConfig& a = cfg.analysis;
    return nlohmann::json{
        {"growth",
         {{"n0", g.n0},
          {"m_new", g.m_new},
          {"pa_offset", g.pa_offset},
          {"default_weight", g.default_weight},
          {"direction_mix", g.direction_mix}}},
        {"dynamics",
         {{"theta", d.theta},
          {"steps", d.steps},
          {"new_agent_probability", d.new_agent_probability},
          {"check_conservation", d.check_conservation}}},
        {"analysis",
         {{"degree_mode", a.degree_mode},
          {"s_min", a.s_min},
          {"tail_fraction", a.tail_fraction},
          {"renorm_scales", a.renorm_scales},
          {"cover_seeds", a.cover_seeds},
          {"cover_seed", a.cover_seed},
          {"var_alphas", a.var_alphas},
          {"var_x_min", a.var_x_min},
          {"path_samples", a.path_samples}}},
        {"out_dir", cfg.out_dir},
        {"seed", cfg.seed}};
}

RunConfig config_from_json(const nlohmann::json& j, const std::string& source_name) {
    RunConfig cfg;
    try {
        for (const auto& [section, body] : j.items()) {
            if (section == "out_dir") {
                cfg.out_dir = body.get<std::string>();
            } else if (section == "seed") {
                cfg.seed = body.get<std::uint64_t>();
            } else if (section == "growth" || section == "dynamics" || section == "analysis") {
                if (!body.is_object())
                    throw ConfigError("config section '" + section + "' must be an object");
                for (const auto& [key, value] : body.items()) {
                    const std::string full = section + "." + key;
                    if (full == "analysis.degree_mode")
                        cfg.analysis.degree_mode = value.get<std::string>();
                    else if (full == "analysis.renorm_scales")
                        cfg.analysis.renorm_scales = value.get<std::vector<std::uint32_t>>();
                    else if (full == "analysis.var_alphas")
                        cfg.analysis.var_alphas = value.get<std::vector<double>>();
                    else if (full == "dynamics.check_conservation")
                        cfg.dynamics.check_conservation = value.get<bool>();
                    else
                        apply_key(cfg, full, value.dump());
                }
            } else {
                throw ConfigError("unknown config key '" + section + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source_name + ": invalid config JSON: " + e.what());
    }
    cfg.validate();
    return cfg;
}

} // namespace econet
