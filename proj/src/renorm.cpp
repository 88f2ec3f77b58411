#include "econet/renorm.hpp"

#include "econet/errors.hpp"
#include "econet/rng.hpp"
#include "econet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>

namespace econet {

namespace {

// Bounded BFS with generation stamps so repeated calls avoid O(N) clears.
struct BallFinder {
    explicit BallFinder(std::size_t n) : stamp(n, 0), dist(n, 0) {}

    // Visits all nodes within max_dist of source; calls visit(node, d).
    template <typename Visit>
    void run(const UndirectedGraph& g, AgentId source, std::uint32_t max_dist, Visit visit) {
        ++generation;
        stamp[source] = generation;
        dist[source] = 0;
        queue.clear();
        queue.push_back(source);
        visit(source, 0u);
        while (!queue.empty()) {
            const AgentId v = queue.front();
            queue.pop_front();
            const std::uint32_t d = dist[v];
            if (d >= max_dist)
                continue;
            for (AgentId w : g.adj[v]) {
                if (stamp[w] != generation) {
                    stamp[w] = generation;
                    dist[w] = d + 1;
                    queue.push_back(w);
                    visit(w, d + 1);
                }
            }
        }
    }

    bool reached(AgentId v) const { return stamp[v] == generation; }

    std::vector<std::uint64_t> stamp;
    std::vector<std::uint32_t> dist;
    std::deque<AgentId> queue;
    std::uint64_t generation = 0;
};

} // namespace

BoxCovering box_cover(const UndirectedGraph& g, std::uint32_t l_b, std::uint64_t seed) {
    if (l_b == 0)
        throw ConfigError("box_cover: l_b must be >= 1");
    if (g.node_count() == 0)
        throw EmptyInputError("box_cover: empty graph");

    const std::vector<AgentId> giant = g.giant_component();

    BoxCovering cover;
    cover.l_b = l_b;
    cover.box_of.assign(g.node_count(), -1);

    // Distance < 1 forces singleton boxes.
    if (l_b == 1) {
        std::int32_t next = 0;
        for (AgentId v : giant)
            cover.box_of[v] = next++;
        cover.n_boxes = static_cast<std::size_t>(next);
        return cover;
    }

    // Seeded founder order.
    std::vector<AgentId> order = giant;
    Rng rng(mix_seed(seed, l_b));
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);

    BallFinder ball(g.node_count());
    const std::uint32_t radius = l_b - 1; // members must stay within this of each other

    std::int32_t next_box = 0;
    std::vector<std::pair<std::uint32_t, AgentId>> candidates; // (dist from founder, id)
    std::vector<char> alive;

    for (AgentId founder : order) {
        if (cover.box_of[founder] >= 0)
            continue;
        const std::int32_t box = next_box++;
        cover.box_of[founder] = box;

        candidates.clear();
        ball.run(g, founder, radius, [&](AgentId v, std::uint32_t d) {
            if (v != founder && cover.box_of[v] < 0)
                candidates.emplace_back(d, v);
        });
        std::sort(candidates.begin(), candidates.end());
        alive.assign(candidates.size(), 1);

        // Absorb nearest-first; each absorbed member prunes the candidates
        // that fall outside its own < l_b ball.
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (!alive[i])
                continue;
            const AgentId member = candidates[i].second;
            cover.box_of[member] = box;
            alive[i] = 0;
            bool any_left = false;
            for (std::size_t j = i + 1; j < candidates.size(); ++j)
                if (alive[j]) {
                    any_left = true;
                    break;
                }
            if (!any_left)
                break;
            ball.run(g, member, radius, [](AgentId, std::uint32_t) {});
            for (std::size_t j = i + 1; j < candidates.size(); ++j) {
                if (alive[j] && !ball.reached(candidates[j].second))
                    alive[j] = 0;
            }
        }
    }
    cover.n_boxes = static_cast<std::size_t>(next_box);
    return cover;
}

std::vector<std::size_t> renormalized_degrees(const UndirectedGraph& g,
                                              const BoxCovering& cover) {
    std::vector<std::pair<std::int32_t, std::int32_t>> box_edges;
    for (AgentId u = 0; u < g.node_count(); ++u) {
        const std::int32_t bu = cover.box_of[u];
        if (bu < 0)
            continue;
        for (AgentId v : g.adj[u]) {
            if (v <= u)
                continue;
            const std::int32_t bv = cover.box_of[v];
            if (bv < 0 || bv == bu)
                continue;
            box_edges.emplace_back(std::min(bu, bv), std::max(bu, bv));
        }
    }
    std::sort(box_edges.begin(), box_edges.end());
    box_edges.erase(std::unique(box_edges.begin(), box_edges.end()), box_edges.end());

    std::vector<std::size_t> degree(cover.n_boxes, 0);
    for (const auto& [a, b] : box_edges) {
        ++degree[a];
        ++degree[b];
    }
    return degree;
}

FractalFit fractal_dimensions(const UndirectedGraph& g, const std::vector<std::uint32_t>& scales,
                              std::uint64_t seed, FractalOptions options) {
    if (scales.size() < 3)
        throw ConfigError("fractal_dimensions: at least 3 scales required");
    if (options.covers < 1)
        throw ConfigError("fractal_dimensions: at least 1 cover per scale required");
    const std::vector<AgentId> giant = g.giant_component();
    if (giant.size() < 50)
        throw InsufficientDataError("fractal_dimensions: giant component below 50 nodes");

    std::size_t k_hub = 0;
    for (AgentId v : giant)
        k_hub = std::max(k_hub, g.degree(v));

    FractalFit fit;
    fit.scales = scales;
    std::sort(fit.scales.begin(), fit.scales.end());

    for (std::uint32_t l_b : fit.scales) {
        double sum_n = 0.0, sum_n2 = 0.0, sum_k = 0.0;
        for (std::uint32_t rep = 0; rep < options.covers; ++rep) {
            const std::uint64_t cover_seed = mix_seed(seed, 1000ULL * l_b + rep);
            const BoxCovering cover = box_cover(g, l_b, cover_seed);
            const std::vector<std::size_t> degrees = renormalized_degrees(g, cover);
            const std::size_t k_p =
                degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
            const double n = static_cast<double>(cover.n_boxes);
            sum_n += n;
            sum_n2 += n * n;
            sum_k += static_cast<double>(k_p);
        }
        const double reps = static_cast<double>(options.covers);
        const double mean_n = sum_n / reps;
        const double var_n = std::max(0.0, sum_n2 / reps - mean_n * mean_n);
        fit.n_p.push_back(mean_n);
        fit.n_p_std.push_back(std::sqrt(var_n));
        fit.k_p.push_back(sum_k / reps);
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();

    // d_B: -slope of ln n_p vs ln l_b.
    const bool all_equal =
        std::all_of(fit.n_p.begin(), fit.n_p.end(), [&](double v) { return v == fit.n_p[0]; });
    if (all_equal) {
        fit.degenerate_b = true;
        fit.d_b = nan;
        fit.r2_b = nan;
    } else {
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < fit.scales.size(); ++i) {
            xs.push_back(std::log(static_cast<double>(fit.scales[i])));
            ys.push_back(std::log(fit.n_p[i]));
        }
        const OlsFit reg = ols(xs, ys);
        fit.d_b = -reg.slope;
        fit.r2_b = reg.r2;
    }

    // d_k: -slope of ln(k_p / k_hub) vs ln l_b over scales with k_p > 0.
    {
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < fit.scales.size(); ++i) {
            if (fit.k_p[i] > 0.0 && k_hub > 0) {
                xs.push_back(std::log(static_cast<double>(fit.scales[i])));
                ys.push_back(std::log(fit.k_p[i] / static_cast<double>(k_hub)));
            }
        }
        if (xs.size() < 3) {
            fit.degenerate_k = true;
            fit.d_k = nan;
            fit.r2_k = nan;
        } else {
            const OlsFit reg = ols(xs, ys);
            fit.d_k = -reg.slope;
            fit.r2_k = reg.r2;
        }
    }
    return fit;
}

double gamma_prediction(double d_b, double d_k) {
    if (!(d_k > 0.0))
        throw DomainError("gamma_prediction: d_k must be > 0");
    return 1.0 + 2.0 * d_b / d_k;
}

} // namespace econet
