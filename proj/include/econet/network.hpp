#pragma once

#include "econet/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace econet {

using AgentId = std::uint32_t;

/// One directed trade link. Stored twice: in the producer's `out` list and in
/// the consumer's `in` list, always with the same weight (labor units).
struct Link {
    AgentId peer;
    double weight;
};

/// An economic agent. `out` links point at consumers of this agent's product,
/// `in` links at the suppliers it consumes from. `energy` is the accumulated
/// balance of labor delivered versus reward received.
struct Agent {
    double energy = 0.0;
    bool alive = true;
    std::vector<Link> in;  // sorted by peer id
    std::vector<Link> out; // sorted by peer id
};

/// Parameters of network growth. Defaults follow the calibrated preset of
/// the production simulation.
struct GrowthConfig {
    std::uint32_t n0 = 200;       ///< seed agents, arranged in a directed ring
    std::uint32_t m_new = 2;      ///< links added with each new agent
    double pa_offset = 2.0;       ///< additive degree offset of the attachment kernel
    double default_weight = 1.0;  ///< labor units per new link
    double direction_mix = 0.5;   ///< probability a new link points newcomer -> target

    bool operator==(const GrowthConfig&) const = default;
    void validate() const; // throws ConfigError
};

struct AttachResult {
    AgentId id;                  ///< the newcomer
    std::uint32_t links_created; ///< m_new unless clamped
    bool clamped;                ///< m_new exceeded the number of available targets
};

/// Directed trade network with preferential-attachment growth.
///
/// Invariants maintained by every public operation: no self-loops, no
/// duplicate (source,target) pairs, every out link mirrored by an in link of
/// identical weight, and link_count() equal to both the total in-degree and
/// the total out-degree. Mutation is single-writer; const snapshots may be
/// read concurrently.
class TradeNetwork {
public:
    TradeNetwork(const GrowthConfig& cfg, std::uint64_t seed);

    std::size_t agent_count() const { return agents_.size(); }
    std::size_t link_count() const { return link_count_; }

    const Agent& agent(AgentId id) const {
        check_id(id);
        return agents_[id];
    }
    const std::vector<Agent>& agents() const { return agents_; }

    /// (k_in, k_out) of an agent.
    std::pair<std::size_t, std::size_t> degrees(AgentId id) const {
        check_id(id);
        return {agents_[id].in.size(), agents_[id].out.size()};
    }
    std::size_t total_degree(AgentId id) const {
        check_id(id);
        return agents_[id].in.size() + agents_[id].out.size();
    }

    double energy(AgentId id) const {
        check_id(id);
        return agents_[id].energy;
    }
    void set_energy(AgentId id, double value) {
        check_id(id);
        agents_[id].energy = value;
    }
    void add_energy(AgentId id, double delta) {
        check_id(id);
        agents_[id].energy += delta;
    }

    /// Adds an isolated agent (no links) and returns its id.
    AgentId add_agent();

    /// Adds a directed link src -> dst of weight w. Returns false if the pair
    /// already exists (network unchanged). Throws on self-loops, w <= 0, or
    /// unknown ids.
    bool add_link(AgentId src, AgentId dst, double weight);

    bool has_link(AgentId src, AgentId dst) const;

    /// Removes one directed link; returns false if it did not exist.
    bool remove_link(AgentId src, AgentId dst);

    /// Deletes every in link of agent `id` together with the mirrored out
    /// links at each supplier. Returns the number of links removed.
    std::size_t remove_in_links(AgentId id);

    /// Grows the network by one agent connected to `m_new` distinct existing
    /// agents drawn without replacement with probability proportional to
    /// (total degree + pa_offset). Each link points newcomer -> target with
    /// probability `direction_mix`. m_new is clamped to the number of
    /// available targets; the clamp is reported in the result.
    AttachResult attach_preferential(std::uint32_t m_new, double direction_mix);

    /// Draws one existing agent preferentially (degree + pa_offset). Falls
    /// back to a uniform draw when all weights are zero.
    AgentId sample_preferential();

    /// Running total of link weights; with unit weights this is link_count().
    double total_link_weight() const { return total_weight_; }

    const GrowthConfig& config() const { return cfg_; }
    Rng& rng() { return rng_; }

private:
    friend void settle_trades(TradeNetwork& net); // hot loop, direct agent access

    // Fenwick tree over per-agent attachment weights (degree + pa_offset).
    class PrefixWeights {
    public:
        void push_back(double w);
        void add(std::size_t i, double delta);
        double total() const { return prefix(tree_.size()); }
        std::size_t size() const { return tree_.size(); }
        std::size_t sample(double u) const; // smallest i with prefix(i+1) > u
    private:
        double prefix(std::size_t count) const;
        std::vector<double> tree_; // 1-based internally
    };

    void check_id(AgentId id) const {
        if (id >= agents_.size())
            fail_lookup(id);
    }
    [[noreturn]] void fail_lookup(AgentId id) const;
    void insert_sorted(std::vector<Link>& links, AgentId peer, double weight);
    static bool erase_sorted(std::vector<Link>& links, AgentId peer);

    GrowthConfig cfg_;
    std::vector<Agent> agents_;
    std::size_t link_count_ = 0;
    double total_weight_ = 0.0;
    PrefixWeights pa_weights_;
    Rng rng_;
};

/// Free-function aliases over the member API.
inline TradeNetwork create_network(const GrowthConfig& cfg, std::uint64_t seed) {
    return TradeNetwork(cfg, seed);
}
inline std::pair<std::size_t, std::size_t> degrees(const TradeNetwork& net, AgentId id) {
    return net.degrees(id);
}
inline std::size_t remove_in_links(TradeNetwork& net, AgentId id) {
    return net.remove_in_links(id);
}

} // namespace econet
