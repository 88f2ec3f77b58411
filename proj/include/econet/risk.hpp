#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace econet {

/// A Value-at-Risk question: confidence level, horizon (metadata; losses are
/// per-step), and the Pareto tail cutoff x_min.
struct VaRQuery {
    double alpha = 0.99;
    std::uint64_t horizon = 1;
    double x_min = 1.0;

    void validate() const; // throws ConfigError
};

/// VaR band across the admissible exponent range: upper bound at m = 2,
/// lower bound at m = 7/2, optional point estimate at a fitted exponent.
struct VaREnvelope {
    double var_lower = 0.0;
    double var_upper = 0.0;
    std::optional<double> var_point;
    std::string note; ///< set when the fitted exponent falls outside the band
};

/// Closed-form Pareto VaR: x* = x_min * (1 - alpha)^(-1/m), the loss level
/// whose exceedance probability is exactly 1 - alpha.
double pareto_var(double m, const VaRQuery& query);

VaREnvelope var_envelope(const VaRQuery& query, std::optional<double> m_hat = std::nullopt);

/// Empirical alpha-quantile of the loss sample, interpolating linearly
/// between order statistics. Requires at least 100 samples.
double empirical_var(std::span<const double> losses, double alpha);

} // namespace econet
