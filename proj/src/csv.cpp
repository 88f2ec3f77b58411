#include "econet/csv.hpp"

#include "econet/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace econet {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    out << content;
    if (!out)
        throw IoError("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

void write_ut_csv(const std::string& path, const std::vector<double>& u_t) {
    std::ostringstream out;
    out << "step,u_t\n";
    for (std::size_t t = 0; t < u_t.size(); ++t)
        out << t << ',' << format_double(u_t[t]) << '\n';
    write_text_file(path, out.str());
}

void write_returns_csv(const std::string& path, const std::vector<double>& returns) {
    std::ostringstream out;
    out << "step,log_return\n";
    for (std::size_t t = 0; t < returns.size(); ++t) {
        if (!std::isnan(returns[t]))
            out << t << ',' << format_double(returns[t]) << '\n';
    }
    write_text_file(path, out.str());
}

void write_avalanches_csv(const std::string& path, const std::vector<AvalancheRecord>& records) {
    std::ostringstream out;
    out << "step,r,k_t,seed_agent\n";
    for (const AvalancheRecord& a : records)
        out << a.step << ',' << a.r << ',' << a.k_t << ',' << a.seed_agent << '\n';
    write_text_file(path, out.str());
}

void write_losses_csv(const std::string& path,
                      const std::vector<std::pair<std::size_t, double>>& losses) {
    std::ostringstream out;
    out << "step,loss\n";
    for (const auto& [step, loss] : losses)
        out << step << ',' << format_double(loss) << '\n';
    write_text_file(path, out.str());
}

void write_edge_list(const std::string& path, const TradeNetwork& net, std::uint64_t step) {
    std::ostringstream out;
    out << "# agents=" << net.agent_count() << " links=" << net.link_count()
        << " step=" << step << "\n";
    for (AgentId i = 0; i < net.agent_count(); ++i)
        for (const Link& l : net.agent(i).out)
            out << i << '\t' << l.peer << '\t' << format_double(l.weight) << '\n';
    write_text_file(path, out.str());
}

void write_degree_table_csv(const std::string& path, const DegreeTable& table,
                            const std::string& value_column, bool with_samples) {
    std::ostringstream out;
    out << "k," << value_column;
    if (with_samples)
        out << ",samples";
    out << '\n';
    for (const auto& row : table.rows) {
        out << row.k << ',' << format_double(row.value);
        if (with_samples)
            out << ',' << row.samples;
        out << '\n';
    }
    write_text_file(path, out.str());
}

void write_histogram_csv(const std::string& path, const DegreeHistogram& hist) {
    std::ostringstream out;
    out << "k,count,p\n";
    for (const auto& bin : hist.bins)
        out << bin.k << ',' << bin.count << ',' << format_double(bin.p) << '\n';
    write_text_file(path, out.str());
}

// ---------------------------------------------------------------------------
// Readers
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(line);
    while (std::getline(ss, item, ','))
        out.push_back(trim(item));
    return out;
}

double parse_number(const std::string& text, const std::string& path, std::size_t line_no) {
    const std::string v = trim(text);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ParseError(path + ":" + std::to_string(line_no) + ": cannot parse number '" +
                         text + "'");
    return out;
}

// Basic ISO-8601 date shape: YYYY-MM-DD.
bool iso_date_shape(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

} // namespace

std::vector<double> read_column_csv(const std::string& path, const std::string& column) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(path + ": empty file");
    const std::vector<std::string> header = split_csv_line(line);
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end())
        throw ParseError(path + ": missing column '" + column + "'");
    const std::size_t index = static_cast<std::size_t>(it - header.begin());

    std::vector<double> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() <= index)
            throw ParseError(path + ":" + std::to_string(line_no) + ": too few columns");
        out.push_back(parse_number(fields[index], path, line_no));
    }
    return out;
}

TradeNetwork load_edge_list(const std::string& path) {
    std::istringstream in(read_text_file(path));

    struct Edge {
        AgentId src, dst;
        double weight;
    };
    std::vector<Edge> edges;
    std::size_t declared_agents = 0;
    AgentId max_id = 0;
    bool any = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty())
            continue;
        if (t[0] == '#') {
            const std::size_t pos = t.find("agents=");
            if (pos != std::string::npos)
                declared_agents = static_cast<std::size_t>(
                    std::strtoull(t.c_str() + pos + 7, nullptr, 10));
            continue;
        }
        std::istringstream fields(t);
        std::uint64_t src = 0, dst = 0;
        double weight = 0.0;
        if (!(fields >> src >> dst >> weight))
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected 'source target weight'");
        edges.push_back({static_cast<AgentId>(src), static_cast<AgentId>(dst), weight});
        max_id = std::max({max_id, static_cast<AgentId>(src), static_cast<AgentId>(dst)});
        any = true;
    }
    if (!any && declared_agents == 0)
        throw ParseError(path + ": no links found");

    GrowthConfig cfg;
    cfg.n0 = 1;
    TradeNetwork net(cfg, 0);
    const std::size_t agents = std::max<std::size_t>(declared_agents, max_id + 1);
    while (net.agent_count() < agents)
        net.add_agent();

    std::size_t edge_line = 0;
    for (const Edge& e : edges) {
        ++edge_line;
        try {
            if (!net.add_link(e.src, e.dst, e.weight))
                throw ParseError(path + ": duplicate link " + std::to_string(e.src) + "->" +
                                 std::to_string(e.dst));
        } catch (const DomainError& err) {
            throw ParseError(path + ": bad link " + std::to_string(e.src) + "->" +
                             std::to_string(e.dst) + ": " + err.what());
        }
    }
    return net;
}

ExternalSeries read_series_csv(const std::string& path, const std::string& date_column,
                               const std::string& value_column, const std::string& label) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(path + ": empty file");
    const std::vector<std::string> header = split_csv_line(line);
    const auto date_it = std::find(header.begin(), header.end(), date_column);
    const auto value_it = std::find(header.begin(), header.end(), value_column);
    if (date_it == header.end())
        throw ParseError(path + ": missing column '" + date_column + "'");
    if (value_it == header.end())
        throw ParseError(path + ": missing column '" + value_column + "'");
    const std::size_t date_idx = static_cast<std::size_t>(date_it - header.begin());
    const std::size_t value_idx = static_cast<std::size_t>(value_it - header.begin());

    ExternalSeries series;
    series.label = label;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() <= std::max(date_idx, value_idx))
            throw ParseError(path + ":" + std::to_string(line_no) + ": too few columns");
        const std::string& date = fields[date_idx];
        if (!iso_date_shape(date))
            throw DataValidationError(path + ": row " + std::to_string(line_no) +
                                      ": date '" + date + "' is not ISO-8601 (YYYY-MM-DD)");
        if (!series.observations.empty() && date <= series.observations.back().first)
            throw DataValidationError(path + ": row " + std::to_string(line_no) +
                                      ": dates must be strictly increasing ('" + date +
                                      "' after '" + series.observations.back().first + "')");
        const double value = parse_number(fields[value_idx], path, line_no);
        if (!(value > 0.0))
            throw DataValidationError(path + ": row " + std::to_string(line_no) +
                                      ": value must be positive, got " + fields[value_idx]);
        series.observations.emplace_back(date, value);
    }
    if (series.observations.size() < 2)
        throw DataValidationError(path + ": need at least 2 observations");
    return series;
}

} // namespace econet
