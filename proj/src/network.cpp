#include "econet/network.hpp"

#include "econet/errors.hpp"

#include <algorithm>
#include <string>

namespace econet {

void GrowthConfig::validate() const {
    if (n0 < 1)
        throw ConfigError("growth.n0 must be >= 1");
    if (m_new < 1)
        throw ConfigError("growth.m_new must be >= 1");
    if (pa_offset < 0.0)
        throw ConfigError("growth.pa_offset must be >= 0");
    if (default_weight <= 0.0)
        throw ConfigError("growth.default_weight must be > 0");
    if (direction_mix < 0.0 || direction_mix > 1.0)
        throw ConfigError("growth.direction_mix must be in [0,1]");
}

// ---------------------------------------------------------------------------
// PrefixWeights (Fenwick tree)
// ---------------------------------------------------------------------------

void TradeNetwork::PrefixWeights::push_back(double w) {
    // Appending index i (1-based): node value is the sum of w over the block
    // (i - lowbit(i), i], assembled from the sub-blocks already stored.
    const std::size_t i = tree_.size() + 1;
    double value = w;
    const std::size_t lowbit = i & (~i + 1);
    std::size_t j = i - 1;
    while (j > i - lowbit) {
        value += tree_[j - 1];
        j -= j & (~j + 1);
    }
    tree_.push_back(value);
}

void TradeNetwork::PrefixWeights::add(std::size_t i, double delta) {
    for (std::size_t j = i + 1; j <= tree_.size(); j += j & (~j + 1))
        tree_[j - 1] += delta;
}

double TradeNetwork::PrefixWeights::prefix(std::size_t count) const {
    double s = 0.0;
    for (std::size_t j = count; j > 0; j -= j & (~j + 1))
        s += tree_[j - 1];
    return s;
}

std::size_t TradeNetwork::PrefixWeights::sample(double u) const {
    std::size_t pos = 0;
    std::size_t bit = 1;
    while ((bit << 1) <= tree_.size())
        bit <<= 1;
    for (; bit > 0; bit >>= 1) {
        const std::size_t next = pos + bit;
        if (next <= tree_.size() && tree_[next - 1] <= u) {
            u -= tree_[next - 1];
            pos = next;
        }
    }
    return pos; // 0-based index of the selected agent
}

// ---------------------------------------------------------------------------
// TradeNetwork
// ---------------------------------------------------------------------------

TradeNetwork::TradeNetwork(const GrowthConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {
    cfg_.validate();
    agents_.resize(cfg_.n0);
    for (std::uint32_t i = 0; i < cfg_.n0; ++i)
        pa_weights_.push_back(cfg_.pa_offset);
    // Seed topology: a directed ring so every seed agent starts with nonzero
    // degree. n0 = 1 degenerates to a single isolated agent (no self-loop).
    if (cfg_.n0 >= 2) {
        for (std::uint32_t i = 0; i < cfg_.n0; ++i)
            add_link(i, (i + 1) % cfg_.n0, cfg_.default_weight);
    }
}

void TradeNetwork::fail_lookup(AgentId id) const {
    throw LookupError("unknown agent id " + std::to_string(id));
}

AgentId TradeNetwork::add_agent() {
    agents_.emplace_back();
    pa_weights_.push_back(cfg_.pa_offset);
    return static_cast<AgentId>(agents_.size() - 1);
}

void TradeNetwork::insert_sorted(std::vector<Link>& links, AgentId peer, double weight) {
    auto it = std::lower_bound(links.begin(), links.end(), peer,
                               [](const Link& l, AgentId p) { return l.peer < p; });
    links.insert(it, Link{peer, weight});
}

bool TradeNetwork::erase_sorted(std::vector<Link>& links, AgentId peer) {
    auto it = std::lower_bound(links.begin(), links.end(), peer,
                               [](const Link& l, AgentId p) { return l.peer < p; });
    if (it == links.end() || it->peer != peer)
        return false;
    links.erase(it);
    return true;
}

bool TradeNetwork::has_link(AgentId src, AgentId dst) const {
    check_id(src);
    check_id(dst);
    const auto& out = agents_[src].out;
    auto it = std::lower_bound(out.begin(), out.end(), dst,
                               [](const Link& l, AgentId p) { return l.peer < p; });
    return it != out.end() && it->peer == dst;
}

bool TradeNetwork::add_link(AgentId src, AgentId dst, double weight) {
    check_id(src);
    check_id(dst);
    if (src == dst)
        throw DomainError("self-loops are not allowed");
    if (weight <= 0.0)
        throw DomainError("link weight must be > 0");
    if (has_link(src, dst))
        return false;
    insert_sorted(agents_[src].out, dst, weight);
    insert_sorted(agents_[dst].in, src, weight);
    pa_weights_.add(src, 1.0);
    pa_weights_.add(dst, 1.0);
    ++link_count_;
    total_weight_ += weight;
    return true;
}

bool TradeNetwork::remove_link(AgentId src, AgentId dst) {
    check_id(src);
    check_id(dst);
    const auto& out = agents_[src].out;
    auto it = std::lower_bound(out.begin(), out.end(), dst,
                               [](const Link& l, AgentId p) { return l.peer < p; });
    if (it == out.end() || it->peer != dst)
        return false;
    const double weight = it->weight;
    erase_sorted(agents_[src].out, dst);
    erase_sorted(agents_[dst].in, src);
    pa_weights_.add(src, -1.0);
    pa_weights_.add(dst, -1.0);
    --link_count_;
    total_weight_ -= weight;
    return true;
}

std::size_t TradeNetwork::remove_in_links(AgentId id) {
    check_id(id);
    std::vector<Link> removed;
    removed.swap(agents_[id].in);
    for (const Link& l : removed) {
        erase_sorted(agents_[l.peer].out, id);
        pa_weights_.add(l.peer, -1.0);
        total_weight_ -= l.weight;
    }
    if (!removed.empty())
        pa_weights_.add(id, -static_cast<double>(removed.size()));
    link_count_ -= removed.size();
    return removed.size();
}

AgentId TradeNetwork::sample_preferential() {
    if (agents_.empty())
        throw EmptyInputError("cannot sample from an empty network");
    const double total = pa_weights_.total();
    if (total <= 0.0)
        return static_cast<AgentId>(rng_.below(agents_.size()));
    return static_cast<AgentId>(pa_weights_.sample(rng_.uniform01() * total));
}

AttachResult TradeNetwork::attach_preferential(std::uint32_t m_new, double direction_mix) {
    if (agents_.empty())
        throw EmptyInputError("attach_preferential requires at least one agent");
    const std::size_t available = agents_.size();
    const std::uint32_t m_eff =
        static_cast<std::uint32_t>(std::min<std::size_t>(m_new, available));

    // Targets are selected among existing agents before the newcomer joins.
    // Duplicate draws are redrawn; a bounded number of attempts is followed by
    // a deterministic scan so the operation always terminates.
    std::vector<AgentId> targets;
    targets.reserve(m_eff);
    auto chosen = [&](AgentId id) {
        return std::find(targets.begin(), targets.end(), id) != targets.end();
    };
    for (std::uint32_t k = 0; k < m_eff; ++k) {
        AgentId pick = 0;
        bool found = false;
        for (int attempt = 0; attempt < 64; ++attempt) {
            pick = sample_preferential();
            if (!chosen(pick)) {
                found = true;
                break;
            }
        }
        if (!found) {
            AgentId fallback = static_cast<AgentId>(agents_.size());
            for (AgentId id = 0; id < agents_.size(); ++id) {
                if (chosen(id))
                    continue;
                if (total_degree(id) > 0) {
                    pick = id;
                    found = true;
                    break;
                }
                if (fallback == agents_.size())
                    fallback = id;
            }
            if (!found)
                pick = fallback; // m_eff <= agent count guarantees one exists
        }
        targets.push_back(pick);
    }

    const AgentId newcomer = add_agent();
    for (AgentId t : targets) {
        if (rng_.bernoulli(direction_mix))
            add_link(newcomer, t, cfg_.default_weight);
        else
            add_link(t, newcomer, cfg_.default_weight);
    }
    return AttachResult{newcomer, static_cast<std::uint32_t>(targets.size()), m_eff < m_new};
}

} // namespace econet
