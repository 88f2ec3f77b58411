#pragma once

#include "econet/network.hpp"

#include <cstddef>
#include <vector>

namespace econet {

enum class DegreeMode { In, Out, Total };

struct DegreeHistogram {
    struct Bin {
        std::size_t k;
        std::size_t count;
        double p;
    };
    std::vector<Bin> bins; // sorted by k
    std::size_t agents = 0;
};

/// Undirected projection of the trade graph: a single edge wherever at least
/// one directed link exists in either direction. Adjacency lists are sorted.
struct UndirectedGraph {
    std::vector<std::vector<AgentId>> adj;

    std::size_t node_count() const { return adj.size(); }
    std::size_t degree(AgentId v) const { return adj[v].size(); }
    std::size_t edge_count() const;
    bool has_edge(AgentId u, AgentId v) const;

    /// Nodes of the largest connected component (ties broken by the smallest
    /// contained id), in ascending order.
    std::vector<AgentId> giant_component() const;
};

UndirectedGraph undirected_projection(const TradeNetwork& net);

/// Per-degree table for D(k), C(k), l(k).
struct DegreeTable {
    struct Row {
        std::size_t k;
        double value;
        std::size_t samples;
        bool degenerate = false; ///< value set by convention (e.g. C of degree < 2)
    };
    std::vector<Row> rows; // sorted by k
};

DegreeHistogram degree_distribution(const TradeNetwork& net, DegreeMode mode);

/// Degrees of all agents in the chosen mode, keeping only positive values
/// (ready for tail fitting).
std::vector<double> positive_degree_samples(const TradeNetwork& net, DegreeMode mode);

/// D(k): mean degree of the neighbors of agents with k neighbors.
DegreeTable degree_correlation(const UndirectedGraph& g);
DegreeTable degree_correlation(const TradeNetwork& net);

/// C(k): mean local clustering of agents with k neighbors. Agents of degree
/// below 2 contribute 0 and are flagged as degenerate.
DegreeTable clustering_by_degree(const UndirectedGraph& g);
DegreeTable clustering_by_degree(const TradeNetwork& net);

/// l(k): mean shortest-path length from agents of degree k to the rest of the
/// giant component, estimated from BFS over sources sampled stratified by
/// degree. sample_sources >= giant size runs the exact all-sources version.
DegreeTable path_length_by_degree(const UndirectedGraph& g, std::size_t sample_sources,
                                  std::uint64_t seed);
DegreeTable path_length_by_degree(const TradeNetwork& net, std::size_t sample_sources,
                                  std::uint64_t seed);

/// Log-returns x_t = ln(v_{t+1}/v_t). Nonpositive values produce NaN gap
/// markers at the affected positions instead of failing.
std::vector<double> log_returns(const std::vector<double>& series);

} // namespace econet
