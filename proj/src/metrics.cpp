#include "econet/metrics.hpp"

#include "econet/errors.hpp"
#include "econet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace econet {

std::size_t UndirectedGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& nbrs : adj)
        total += nbrs.size();
    return total / 2;
}

bool UndirectedGraph::has_edge(AgentId u, AgentId v) const {
    const auto& nbrs = adj[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<AgentId> UndirectedGraph::giant_component() const {
    const std::size_t n = adj.size();
    std::vector<int> comp(n, -1);
    int n_comps = 0;
    std::vector<std::size_t> comp_size;
    std::deque<AgentId> queue;
    for (AgentId start = 0; start < n; ++start) {
        if (comp[start] >= 0)
            continue;
        const int c = n_comps++;
        comp_size.push_back(0);
        comp[start] = c;
        queue.push_back(start);
        while (!queue.empty()) {
            const AgentId v = queue.front();
            queue.pop_front();
            ++comp_size[c];
            for (AgentId w : adj[v]) {
                if (comp[w] < 0) {
                    comp[w] = c;
                    queue.push_back(w);
                }
            }
        }
    }
    if (n_comps == 0)
        return {};
    const int best = static_cast<int>(
        std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());
    std::vector<AgentId> nodes;
    nodes.reserve(comp_size[best]);
    for (AgentId v = 0; v < n; ++v)
        if (comp[v] == best)
            nodes.push_back(v);
    return nodes;
}

UndirectedGraph undirected_projection(const TradeNetwork& net) {
    UndirectedGraph g;
    g.adj.resize(net.agent_count());
    for (AgentId v = 0; v < net.agent_count(); ++v) {
        const Agent& a = net.agents()[v];
        auto& nbrs = g.adj[v];
        nbrs.reserve(a.in.size() + a.out.size());
        for (const Link& l : a.in)
            nbrs.push_back(l.peer);
        for (const Link& l : a.out)
            nbrs.push_back(l.peer);
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return g;
}

DegreeHistogram degree_distribution(const TradeNetwork& net, DegreeMode mode) {
    if (net.agent_count() == 0)
        throw EmptyInputError("degree_distribution: empty network");
    std::map<std::size_t, std::size_t> counts;
    for (const Agent& a : net.agents()) {
        std::size_t k = 0;
        switch (mode) {
        case DegreeMode::In: k = a.in.size(); break;
        case DegreeMode::Out: k = a.out.size(); break;
        case DegreeMode::Total: k = a.in.size() + a.out.size(); break;
        }
        ++counts[k];
    }
    DegreeHistogram h;
    h.agents = net.agent_count();
    h.bins.reserve(counts.size());
    for (const auto& [k, count] : counts)
        h.bins.push_back({k, count, static_cast<double>(count) / static_cast<double>(h.agents)});
    return h;
}

std::vector<double> positive_degree_samples(const TradeNetwork& net, DegreeMode mode) {
    std::vector<double> out;
    out.reserve(net.agent_count());
    for (const Agent& a : net.agents()) {
        std::size_t k = 0;
        switch (mode) {
        case DegreeMode::In: k = a.in.size(); break;
        case DegreeMode::Out: k = a.out.size(); break;
        case DegreeMode::Total: k = a.in.size() + a.out.size(); break;
        }
        if (k > 0)
            out.push_back(static_cast<double>(k));
    }
    return out;
}

namespace {

// Shared accumulation: per-degree mean of a per-node statistic.
DegreeTable table_from_values(const std::vector<std::size_t>& degree,
                              const std::vector<double>& value,
                              const std::vector<char>& include,
                              const std::vector<char>& degenerate) {
    std::map<std::size_t, std::tuple<double, std::size_t, bool>> acc;
    for (std::size_t v = 0; v < degree.size(); ++v) {
        if (!include[v])
            continue;
        auto& [sum, count, flag] = acc[degree[v]];
        sum += value[v];
        count += 1;
        flag = flag || degenerate[v];
    }
    DegreeTable t;
    t.rows.reserve(acc.size());
    for (const auto& [k, entry] : acc) {
        const auto& [sum, count, flag] = entry;
        t.rows.push_back({k, sum / static_cast<double>(count), count, flag});
    }
    return t;
}

} // namespace

DegreeTable degree_correlation(const UndirectedGraph& g) {
    const std::size_t n = g.node_count();
    if (g.edge_count() == 0)
        throw EmptyInputError("degree_correlation: no links");
    std::vector<std::size_t> degree(n);
    std::vector<double> value(n, 0.0);
    std::vector<char> include(n, 0), degenerate(n, 0);
    for (AgentId v = 0; v < n; ++v) {
        degree[v] = g.degree(v);
        if (degree[v] == 0)
            continue;
        double sum = 0.0;
        for (AgentId w : g.adj[v])
            sum += static_cast<double>(g.degree(w));
        value[v] = sum / static_cast<double>(degree[v]);
        include[v] = 1;
    }
    return table_from_values(degree, value, include, degenerate);
}

DegreeTable degree_correlation(const TradeNetwork& net) {
    return degree_correlation(undirected_projection(net));
}

DegreeTable clustering_by_degree(const UndirectedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::size_t> degree(n);
    std::vector<double> value(n, 0.0);
    std::vector<char> include(n, 0), degenerate(n, 0);
    for (AgentId v = 0; v < n; ++v) {
        degree[v] = g.degree(v);
        if (degree[v] == 0)
            continue;
        include[v] = 1;
        if (degree[v] < 2) {
            degenerate[v] = 1; // C = 0 by convention, flagged
            continue;
        }
        const auto& nbrs = g.adj[v];
        std::size_t triangles = 0;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                // probe the shorter adjacency list
                const AgentId a = nbrs[i], b = nbrs[j];
                if (g.adj[a].size() <= g.adj[b].size() ? g.has_edge(a, b) : g.has_edge(b, a))
                    ++triangles;
            }
        }
        const double wedges =
            static_cast<double>(degree[v]) * static_cast<double>(degree[v] - 1) / 2.0;
        value[v] = static_cast<double>(triangles) / wedges;
    }
    return table_from_values(degree, value, include, degenerate);
}

DegreeTable clustering_by_degree(const TradeNetwork& net) {
    return clustering_by_degree(undirected_projection(net));
}

namespace {

void bfs_distances(const UndirectedGraph& g, AgentId source, std::vector<int>& dist) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[source] = 0;
    std::deque<AgentId> queue{source};
    while (!queue.empty()) {
        const AgentId v = queue.front();
        queue.pop_front();
        for (AgentId w : g.adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
}

} // namespace

DegreeTable path_length_by_degree(const UndirectedGraph& g, std::size_t sample_sources,
                                  std::uint64_t seed) {
    const std::vector<AgentId> giant = g.giant_component();
    if (giant.size() < 2)
        throw EmptyInputError("path_length_by_degree: giant component below 2 nodes");

    // Stratify sources by degree so sparse high-degree classes are always
    // represented; within a class the picks are a seeded shuffle.
    std::map<std::size_t, std::vector<AgentId>> by_degree;
    for (AgentId v : giant)
        by_degree[g.degree(v)].push_back(v);

    std::vector<AgentId> sources;
    if (sample_sources >= giant.size()) {
        sources = giant; // exact mode
    } else {
        Rng rng(mix_seed(seed, 0x6c6b /* "lk" */));
        const double frac =
            static_cast<double>(sample_sources) / static_cast<double>(giant.size());
        for (auto& [k, nodes] : by_degree) {
            std::size_t quota = static_cast<std::size_t>(
                std::ceil(frac * static_cast<double>(nodes.size())));
            quota = std::max<std::size_t>(1, std::min(quota, nodes.size()));
            // partial Fisher-Yates, deterministic
            for (std::size_t i = 0; i < quota; ++i) {
                const std::size_t j = i + rng.below(nodes.size() - i);
                std::swap(nodes[i], nodes[j]);
                sources.push_back(nodes[i]);
            }
        }
        std::sort(sources.begin(), sources.end());
    }

    std::map<std::size_t, std::pair<double, std::size_t>> acc;
    std::vector<int> dist(g.node_count());
    for (AgentId s : sources) {
        bfs_distances(g, s, dist);
        double sum = 0.0;
        std::size_t reached = 0;
        for (AgentId v : giant) {
            if (v == s)
                continue;
            sum += static_cast<double>(dist[v]);
            ++reached;
        }
        auto& [total, count] = acc[g.degree(s)];
        total += sum / static_cast<double>(reached);
        count += 1;
    }

    DegreeTable t;
    t.rows.reserve(acc.size());
    for (const auto& [k, entry] : acc)
        t.rows.push_back({k, entry.first / static_cast<double>(entry.second), entry.second, false});
    return t;
}

DegreeTable path_length_by_degree(const TradeNetwork& net, std::size_t sample_sources,
                                  std::uint64_t seed) {
    return path_length_by_degree(undirected_projection(net), sample_sources, seed);
}

std::vector<double> log_returns(const std::vector<double>& series) {
    if (series.size() < 2)
        return {};
    std::vector<double> out(series.size() - 1, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t t = 0; t + 1 < series.size(); ++t) {
        if (series[t] > 0.0 && series[t + 1] > 0.0)
            out[t] = std::log(series[t + 1] / series[t]);
    }
    return out;
}

} // namespace econet
