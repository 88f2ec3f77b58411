#include "econet/tails.hpp"

#include "econet/errors.hpp"
#include "econet/stats.hpp"

#include <algorithm>
#include <cmath>

namespace econet {

CcdfPoints ccdf(std::span<const double> samples) {
    std::vector<double> sorted;
    sorted.reserve(samples.size());
    for (double x : samples) {
        if (!(x > 0.0))
            throw DomainError("ccdf: samples must be positive");
        sorted.push_back(x);
    }
    if (sorted.empty())
        throw EmptyInputError("ccdf: empty sample");
    std::sort(sorted.begin(), sorted.end());

    CcdfPoints out;
    out.n_samples = sorted.size();
    const double n = static_cast<double>(sorted.size());
    std::size_t i = 0;
    while (i < sorted.size()) {
        // P(X >= s) where s is the i-th smallest distinct value
        out.points.push_back({sorted[i], static_cast<double>(sorted.size() - i) / n});
        const double s = sorted[i];
        while (i < sorted.size() && sorted[i] == s)
            ++i;
    }
    return out;
}

namespace {

void append_note(std::string& note, const std::string& extra) {
    if (!note.empty())
        note += "; ";
    note += extra;
}

} // namespace

TailFit fit_ccdf_regression(const CcdfPoints& points, double s_min) {
    std::vector<double> xs, ys;
    xs.reserve(points.points.size());
    ys.reserve(points.points.size());
    for (const auto& p : points.points) {
        if (p.s >= s_min) {
            xs.push_back(std::log(p.s));
            ys.push_back(std::log(p.fraction));
        }
    }
    if (xs.size() < 10)
        throw InsufficientTailError("fit_ccdf_regression: fewer than 10 points above s_min");

    const OlsFit fit = ols(xs, ys);

    TailFit out;
    out.method = TailMethod::Regression;
    out.m_hat = -fit.slope;
    out.s_min = s_min;
    out.std_error = fit.slope_se;
    out.n_tail = xs.size();
    if (xs.size() < 30)
        append_note(out.note, "fewer than 30 distinct values in the fitted tail");
    return out;
}

namespace {

// Hill point estimate over the largest n_tail entries of a descending-sorted
// sample; the threshold is the next order statistic.
double hill_point(const std::vector<double>& desc, std::size_t n_tail) {
    const double threshold = desc[n_tail]; // (n_tail+1)-th largest
    double sum_log = 0.0;
    for (std::size_t i = 0; i < n_tail; ++i)
        sum_log += std::log(desc[i] / threshold);
    if (sum_log <= 0.0)
        throw InsufficientTailError("hill: no variation in the selected tail");
    return static_cast<double>(n_tail) / sum_log;
}

} // namespace

TailFit hill(std::span<const double> samples, double tail_fraction) {
    if (tail_fraction <= 0.0 || tail_fraction >= 1.0)
        throw ConfigError("hill: tail_fraction must be in (0,1)");
    std::vector<double> desc;
    desc.reserve(samples.size());
    for (double x : samples) {
        if (!(x > 0.0))
            throw DomainError("hill: samples must be positive");
        desc.push_back(x);
    }
    std::sort(desc.begin(), desc.end(), std::greater<>());

    const std::size_t n_tail = static_cast<std::size_t>(
        std::floor(tail_fraction * static_cast<double>(desc.size())));
    if (n_tail < 20 || n_tail >= desc.size())
        throw InsufficientTailError("hill: fewer than 20 samples in the selected tail");

    TailFit out;
    out.method = TailMethod::Hill;
    out.m_hat = hill_point(desc, n_tail);
    out.s_min = desc[n_tail];
    out.n_tail = n_tail;
    out.std_error = out.m_hat / std::sqrt(static_cast<double>(n_tail));

    // Stability probe: re-estimate on half the tail. Strong drift is the
    // classic sign of a non-power-law sample.
    if (n_tail / 2 >= 20) {
        const double half = hill_point(desc, n_tail / 2);
        if (std::fabs(half - out.m_hat) > 0.25 * out.m_hat)
            append_note(out.note, "estimate unstable under tail halving (non-power-law?)");
    }

    std::size_t distinct = 0;
    for (std::size_t i = 0; i < n_tail; ++i)
        if (i == 0 || desc[i] != desc[i - 1])
            ++distinct;
    if (distinct < 30)
        append_note(out.note, "fewer than 30 distinct values in the fitted tail");
    return out;
}

double m_from_gamma(double gamma) {
    if (gamma <= 0.0)
        throw DomainError("m_from_gamma: gamma must be > 0");
    return 1.5 * gamma - 1.0;
}

double gamma_from_m(double m) {
    if (m <= -1.0)
        throw DomainError("gamma_from_m: m must be > -1");
    return 2.0 * (m + 1.0) / 3.0;
}

BandCheck classify_bounds(double m_hat, double std_error) {
    BandCheck out{Band::Within, ""};
    if (m_hat < kTailExponentMin)
        out.band = Band::Below;
    else if (m_hat > kTailExponentMax)
        out.band = Band::Above;

    const double lo = m_hat - 2.0 * std_error;
    const double hi = m_hat + 2.0 * std_error;
    if (lo < kTailExponentMin && hi >= kTailExponentMin)
        append_note(out.note, "2-sigma interval crosses m_min");
    if (lo <= kTailExponentMax && hi > kTailExponentMax)
        append_note(out.note, "2-sigma interval crosses m_max");
    return out;
}

double default_s_min(std::span<const double> samples) {
    if (samples.empty())
        throw EmptyInputError("default_s_min: empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, 0.9);
}

} // namespace econet
