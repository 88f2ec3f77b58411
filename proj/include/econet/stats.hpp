#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace econet {

/// Ordinary least squares y = intercept + slope * x.
struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0; // standard error of the slope
    double r2 = 0.0;
    std::size_t n = 0;
};

OlsFit ols(std::span<const double> x, std::span<const double> y);

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Two-sided p-value for a t statistic with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

/// Quantile with linear interpolation between order statistics
/// (h = (n-1)q convention). `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double q);

/// Convenience: copies, sorts, and interpolates.
double quantile(std::vector<double> values, double q);

} // namespace econet
