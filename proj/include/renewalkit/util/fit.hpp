#pragma once

#include <vector>

namespace renewalkit {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares y = a + b*x.
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// Theil-Sen slope with a coarse confidence interval from the pairwise-slope
// order statistics (95% unless too few points, then min/max).
struct TheilSen {
    double slope = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};
TheilSen theil_sen(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace renewalkit
