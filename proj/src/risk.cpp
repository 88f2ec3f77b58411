#include "econet/risk.hpp"

#include "econet/errors.hpp"
#include "econet/stats.hpp"
#include "econet/tails.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace econet {

void VaRQuery::validate() const {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw ConfigError("var.alpha must be in (0,1)");
    if (horizon < 1)
        throw ConfigError("var.horizon must be >= 1");
    if (x_min <= 0.0)
        throw ConfigError("var.x_min must be > 0");
}

double pareto_var(double m, const VaRQuery& query) {
    if (m <= 0.0)
        throw DomainError("pareto_var: m must be > 0");
    query.validate();
    return query.x_min * std::pow(1.0 - query.alpha, -1.0 / m);
}

VaREnvelope var_envelope(const VaRQuery& query, std::optional<double> m_hat) {
    query.validate();
    VaREnvelope env;
    env.var_upper = pareto_var(kTailExponentMin, query); // heaviest admissible tail
    env.var_lower = pareto_var(kTailExponentMax, query);
    if (m_hat) {
        env.var_point = pareto_var(*m_hat, query);
        if (*m_hat < kTailExponentMin)
            env.note = "fitted exponent below m_min; point estimate exceeds the envelope";
        else if (*m_hat > kTailExponentMax)
            env.note = "fitted exponent above m_max; point estimate falls below the envelope";
    }
    return env;
}

double empirical_var(std::span<const double> losses, double alpha) {
    if (losses.size() < 100)
        throw InsufficientDataError("empirical_var: need at least 100 loss samples");
    if (alpha <= 0.0 || alpha >= 1.0)
        throw ConfigError("empirical_var: alpha must be in (0,1)");
    std::vector<double> sorted(losses.begin(), losses.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, alpha);
}

} // namespace econet
