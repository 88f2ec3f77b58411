#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace econet {

/// Bounds of the return-tail exponent band implied by degree exponents
/// between 2 and 3.
inline constexpr double kTailExponentMin = 2.0;
inline constexpr double kTailExponentMax = 3.5;

/// Empirical complementary CDF: fraction = P(X >= s) at the distinct sample
/// values, s strictly increasing, fraction non-increasing in (0, 1].
struct CcdfPoints {
    struct Point {
        double s;
        double fraction;
    };
    std::vector<Point> points;
    std::size_t n_samples = 0;
};

enum class TailMethod { Regression, Hill };

struct TailFit {
    double m_hat = 0.0;      ///< CCDF exponent estimate
    double s_min = 0.0;      ///< fit cutoff actually used
    double std_error = 0.0;
    std::size_t n_tail = 0;  ///< samples (or points) entering the fit
    TailMethod method = TailMethod::Regression;
    std::string note;        ///< diagnostics (discrete support, instability)
};

enum class Band { Below, Within, Above };

struct BandCheck {
    Band band;
    std::string note;
};

CcdfPoints ccdf(std::span<const double> samples);

/// OLS on (ln s, ln fraction) restricted to s >= s_min; m_hat = -slope.
TailFit fit_ccdf_regression(const CcdfPoints& points, double s_min);

/// Hill estimator on the top tail_fraction order statistics, with the
/// asymptotic standard error m_hat / sqrt(n_tail).
TailFit hill(std::span<const double> samples, double tail_fraction);

/// Exponent bridge m = 3*gamma/2 - 1 between the degree distribution and the
/// avalanche-size (return) distribution, and its inverse.
double m_from_gamma(double gamma);
double gamma_from_m(double m);

/// Classifies a point estimate against the closed band [2, 7/2]; the note
/// reports whether the +-2 sigma interval crosses a bound.
BandCheck classify_bounds(double m_hat, double std_error);

/// Default cutoff policy: the 90th percentile of the sample.
double default_s_min(std::span<const double> samples);

} // namespace econet
