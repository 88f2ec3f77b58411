#pragma once

#include "econet/metrics.hpp"

#include <cstdint>
#include <vector>

namespace econet {

/// Assignment of every giant-component node to a box whose members are
/// pairwise closer than l_b (chemical distance in the full graph).
struct BoxCovering {
    std::uint32_t l_b = 1;
    std::vector<std::int32_t> box_of; ///< -1 for nodes outside the giant component
    std::size_t n_boxes = 0;
};

/// Greedy compact-box covering: founders are visited in a seeded random
/// order; each founder absorbs, nearest first, the uncovered nodes that stay
/// within distance < l_b of every current member. Deterministic given seed.
BoxCovering box_cover(const UndirectedGraph& g, std::uint32_t l_b, std::uint64_t seed);

/// Degrees of the boxes in the renormalized graph (two boxes are linked iff
/// any member pair is linked). Indexed by box id.
std::vector<std::size_t> renormalized_degrees(const UndirectedGraph& g, const BoxCovering& cover);

struct FractalOptions {
    std::uint32_t covers = 8; ///< random cover repetitions averaged per scale
};

struct FractalFit {
    std::vector<std::uint32_t> scales;
    std::vector<double> n_p;     ///< mean box count per scale
    std::vector<double> n_p_std; ///< std dev of box count across covers
    std::vector<double> k_p;     ///< mean hub (max) box degree per scale
    double d_b = 0.0;
    double d_k = 0.0;
    double r2_b = 0.0;
    double r2_k = 0.0;
    bool degenerate_b = false; ///< d_b undefined (all n_p equal)
    bool degenerate_k = false; ///< d_k undefined (no usable k_p scaling)
};

/// d_B from ln n_p vs ln l_b and d_k from ln(k_p / k_hub) vs ln l_b, averaged
/// over FractalOptions::covers seeded covers per scale.
FractalFit fractal_dimensions(const UndirectedGraph& g, const std::vector<std::uint32_t>& scales,
                              std::uint64_t seed, FractalOptions options = {});

/// Topological degree-exponent prediction gamma = 1 + 2 d_B / d_k.
double gamma_prediction(double d_b, double d_k);

} // namespace econet
