#pragma once

#include "econet/network.hpp"

#include <cstdint>
#include <vector>

namespace econet {

struct DynamicsConfig {
    double theta = 12000.0;              ///< insolvency threshold per unit of trade
    std::uint64_t steps = 100000;        ///< simulation length
    GrowthConfig growth;                 ///< network growth parameters
    double new_agent_probability = 0.12; ///< per step: add an agent vs. a single link
    bool check_conservation = false;     ///< assert the settlement zero-sum each step

    bool operator==(const DynamicsConfig&) const = default;
    void validate() const; // throws ConfigError
};

/// One cascade event: r collapsed agents, k_t destroyed links.
struct AvalancheRecord {
    std::uint64_t step = 0;
    std::uint32_t r = 0;
    std::uint64_t k_t = 0;
    AgentId seed_agent = 0;
};

/// Per-step bookkeeping of the simulation loop.
struct StepReport {
    std::uint64_t step = 0;
    std::uint32_t links_added = 0;
    bool agent_added = false;
    bool growth_clamped = false; ///< attach clamp or link-add giving up on duplicates
    std::vector<AvalancheRecord> avalanches;
    double u_t_after = 0.0;
    double conservation_drift = 0.0; ///< |sum U_i change across settlement|, when checked
};

struct SimulationOutput {
    std::vector<double> u_t;     ///< steps+1 values, includes the initial product
    std::vector<double> returns; ///< log returns; NaN marks a gap (nonpositive U_T)
    std::vector<AvalancheRecord> avalanches;
    std::vector<StepReport> step_reports;
    TradeNetwork final_network;
    DynamicsConfig config_echo;
    std::uint64_t seed = 0;
    /// Max over steps of |settlement energy drift| / link_count; filled when
    /// check_conservation is set.
    double conservation_max_drift = 0.0;
};

/// Exchange rate of labor earned by `producer`: demand for its product
/// relative to its supply, regularized to stay positive and finite.
double exchange_rate_from_degrees(std::size_t k_in, std::size_t k_out);
double exchange_rate(const TradeNetwork& net, AgentId producer, AgentId consumer);

/// Settles every trade once: for each link i -> j of weight W, the producer
/// nets (alpha_i - 1) * W and the consumer the negative of that, so the total
/// energy change is zero by construction.
void settle_trades(TradeNetwork& net);

/// True iff the agent's deficit exceeds theta per unit of current trade
/// capacity (strict inequality; the boundary is solvent).
bool is_insolvent(const TradeNetwork& net, AgentId id, double theta);

/// Breadth-first collapse starting from an insolvent seed agent. Collapsing
/// an agent removes all its in links and resets its energy to zero; every
/// supplier whose solvency fails under its reduced degree is enqueued once.
/// The caller must guarantee the seed is insolvent.
AvalancheRecord trigger_cascade(TradeNetwork& net, AgentId seed_agent, double theta);

/// U_T: the sum of all outgoing link weights (recomputed, not cached).
double overall_product(const TradeNetwork& net);

/// One simulation step: growth, settlement, insolvency sweep, record U_T.
StepReport step(TradeNetwork& net, const DynamicsConfig& cfg, std::uint64_t step_index);

/// Full run: create_network + cfg.steps step() calls.
SimulationOutput run_simulation(const DynamicsConfig& cfg, std::uint64_t seed);

} // namespace econet
