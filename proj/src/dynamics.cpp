#include "econet/dynamics.hpp"

#include "econet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace econet {

void DynamicsConfig::validate() const {
    if (theta <= 0.0)
        throw ConfigError("dynamics.theta must be > 0");
    if (new_agent_probability < 0.0 || new_agent_probability > 1.0)
        throw ConfigError("dynamics.new_agent_probability must be in [0,1]");
    growth.validate();
}

double exchange_rate_from_degrees(std::size_t k_in, std::size_t k_out) {
    return (static_cast<double>(k_in) + 1.0) / (static_cast<double>(k_out) + 1.0);
}

double exchange_rate(const TradeNetwork& net, AgentId producer, AgentId consumer) {
    const auto [k_in, k_out] = net.degrees(producer);
    net.agent(consumer); // checked for existence only
    return exchange_rate_from_degrees(k_in, k_out);
}

void settle_trades(TradeNetwork& net) {
    std::vector<Agent>& agents = net.agents_;
    const std::size_t n = agents.size();
    for (std::size_t i = 0; i < n; ++i) {
        Agent& a = agents[i];
        if (a.out.empty())
            continue;
        const double alpha = exchange_rate_from_degrees(a.in.size(), a.out.size());
        const double gain = alpha - 1.0;
        double producer_delta = 0.0;
        for (const Link& l : a.out) {
            const double d = gain * l.weight;
            producer_delta += d;
            agents[l.peer].energy -= d;
        }
        a.energy += producer_delta;
    }
}

bool is_insolvent(const TradeNetwork& net, AgentId id, double theta) {
    if (theta <= 0.0)
        throw ConfigError("theta must be > 0");
    const auto [k_in, k_out] = net.degrees(id);
    const double capacity =
        theta * static_cast<double>(k_in + k_out) * net.config().default_weight;
    return net.energy(id) < -capacity;
}

AvalancheRecord trigger_cascade(TradeNetwork& net, AgentId seed_agent, double theta) {
    if (!is_insolvent(net, seed_agent, theta))
        throw ContractViolation("trigger_cascade: seed agent is solvent");

    AvalancheRecord record;
    record.seed_agent = seed_agent;

    std::vector<char> visited(net.agent_count(), 0);
    std::deque<AgentId> queue;
    queue.push_back(seed_agent);
    visited[seed_agent] = 1;

    while (!queue.empty()) {
        const AgentId current = queue.front();
        queue.pop_front();

        // Collapse: drop all consumption links, discharge the energy balance.
        std::vector<AgentId> suppliers;
        suppliers.reserve(net.agent(current).in.size());
        for (const Link& l : net.agent(current).in)
            suppliers.push_back(l.peer);

        record.k_t += net.remove_in_links(current);
        net.set_energy(current, 0.0);
        record.r += 1;

        // Suppliers lost one production link each; re-evaluate them in
        // ascending id order (the in-link list is already sorted).
        for (AgentId s : suppliers) {
            if (!visited[s] && is_insolvent(net, s, theta)) {
                visited[s] = 1;
                queue.push_back(s);
            }
        }
    }
    return record;
}

double overall_product(const TradeNetwork& net) {
    double total = 0.0;
    for (const Agent& a : net.agents())
        for (const Link& l : a.out)
            total += l.weight;
    return total;
}

namespace {

// Growth move between existing agents: one link between two preferentially
// selected agents. The direction rule matches attachment: the lower-degree
// endpoint produces to the higher-degree one with probability direction_mix
// (a newcomer, having degree zero, is always the lower endpoint there).
// Duplicate pairs are redrawn a bounded number of times.
bool add_preferential_link(TradeNetwork& net) {
    if (net.agent_count() < 2)
        return false;
    const double mix = net.config().direction_mix;
    for (int attempt = 0; attempt < 32; ++attempt) {
        const AgentId a = net.sample_preferential();
        const AgentId b = net.sample_preferential();
        if (a == b)
            continue;
        AgentId lo = a, hi = b;
        if (net.total_degree(b) < net.total_degree(a))
            std::swap(lo, hi);
        const AgentId src = net.rng().bernoulli(mix) ? lo : hi;
        const AgentId dst = src == lo ? hi : lo;
        if (net.add_link(src, dst, net.config().default_weight))
            return true;
    }
    return false;
}

double total_energy(const TradeNetwork& net) {
    double sum = 0.0;
    for (const Agent& a : net.agents())
        sum += a.energy;
    return sum;
}

} // namespace

StepReport step(TradeNetwork& net, const DynamicsConfig& cfg, std::uint64_t step_index) {
    StepReport report;
    report.step = step_index;

    // 1. growth
    if (net.rng().bernoulli(cfg.new_agent_probability)) {
        const AttachResult attached =
            net.attach_preferential(cfg.growth.m_new, cfg.growth.direction_mix);
        report.agent_added = true;
        report.links_added = attached.links_created;
        report.growth_clamped = attached.clamped;
    } else {
        if (add_preferential_link(net))
            report.links_added = 1;
        else
            report.growth_clamped = true;
    }

    // 2. trade settlement
    if (cfg.check_conservation) {
        const double before = total_energy(net);
        settle_trades(net);
        report.conservation_drift = std::fabs(total_energy(net) - before);
    } else {
        settle_trades(net);
    }

    // 3. insolvency sweep in ascending id order
    const std::size_t n = net.agent_count();
    for (AgentId id = 0; id < n; ++id) {
        if (net.energy(id) >= 0.0)
            continue;
        if (is_insolvent(net, id, cfg.theta)) {
            AvalancheRecord record = trigger_cascade(net, id, cfg.theta);
            record.step = step_index;
            report.avalanches.push_back(record);
        }
    }

    // 4. record the overall product
    report.u_t_after = net.total_link_weight();
    return report;
}

SimulationOutput run_simulation(const DynamicsConfig& cfg, std::uint64_t seed) {
    cfg.validate();

    TradeNetwork net(cfg.growth, seed);

    SimulationOutput out{.u_t = {},
                         .returns = {},
                         .avalanches = {},
                         .step_reports = {},
                         .final_network = std::move(net),
                         .config_echo = cfg,
                         .seed = seed,
                         .conservation_max_drift = 0.0};
    TradeNetwork& network = out.final_network;

    out.u_t.reserve(cfg.steps + 1);
    out.u_t.push_back(network.total_link_weight());
    out.step_reports.reserve(cfg.steps);

    for (std::uint64_t t = 0; t < cfg.steps; ++t) {
        StepReport report = step(network, cfg, t);

        if (cfg.check_conservation) {
            const double per_link =
                report.conservation_drift /
                std::max(1.0, static_cast<double>(network.link_count()));
            if (per_link > out.conservation_max_drift)
                out.conservation_max_drift = per_link;
        }

        for (const AvalancheRecord& r : report.avalanches)
            out.avalanches.push_back(r);
        out.u_t.push_back(report.u_t_after);
        out.step_reports.push_back(std::move(report));
    }

    out.returns.resize(cfg.steps, std::numeric_limits<double>::quiet_NaN());
    for (std::uint64_t t = 0; t < cfg.steps; ++t) {
        const double a = out.u_t[t];
        const double b = out.u_t[t + 1];
        if (a > 0.0 && b > 0.0)
            out.returns[t] = std::log(b / a);
    }
    return out;
}

} // namespace econet
