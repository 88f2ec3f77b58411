#pragma once

#include "econet/dynamics.hpp"
#include "econet/metrics.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace econet {

/// Floats in emitted data files carry 12 significant digits.
std::string format_double(double v);

std::string read_text_file(const std::string& path); // IoError
void write_text_file(const std::string& path, const std::string& content);

// ---------------------------------------------------------------------------
// Simulation output files (single header line each)
// ---------------------------------------------------------------------------

void write_ut_csv(const std::string& path, const std::vector<double>& u_t);

/// returns.csv rows are (step, log_return); gap positions are omitted.
void write_returns_csv(const std::string& path, const std::vector<double>& returns);

void write_avalanches_csv(const std::string& path, const std::vector<AvalancheRecord>& records);

/// losses.csv rows are (step, loss), loss = -log_return of the negative steps.
void write_losses_csv(const std::string& path,
                      const std::vector<std::pair<std::size_t, double>>& losses);

/// Edge-list snapshot: `# agents=<N> links=<L> step=<t>` then
/// `source<TAB>target<TAB>weight` lines.
void write_edge_list(const std::string& path, const TradeNetwork& net, std::uint64_t step);

void write_degree_table_csv(const std::string& path, const DegreeTable& table,
                            const std::string& value_column, bool with_samples);

void write_histogram_csv(const std::string& path, const DegreeHistogram& hist);

// ---------------------------------------------------------------------------
// Readers
// ---------------------------------------------------------------------------

/// Reads a single named numeric column from a headered CSV.
std::vector<double> read_column_csv(const std::string& path, const std::string& column);

/// Rebuilds a network from an edge-list snapshot. The `# agents=...` header
/// is honored when present; otherwise the agent count is inferred.
TradeNetwork load_edge_list(const std::string& path);

/// Externally supplied (date, value) series, e.g. a stock index.
struct ExternalSeries {
    std::string label;
    std::vector<std::pair<std::string, double>> observations; // ISO date, positive value
};

/// Parses and validates an external series: dates ISO-8601 and strictly
/// increasing, values positive. Violations name the offending row.
ExternalSeries read_series_csv(const std::string& path, const std::string& date_column,
                               const std::string& value_column, const std::string& label);

} // namespace econet
