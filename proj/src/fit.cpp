#include "renewalkit/util/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace renewalkit {

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    size_t n = x.size();
    if (n != y.size() || n < 2) throw std::invalid_argument("least_squares: need >= 2 points");
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (size_t i = 0; i < n; ++i) {
        double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    if (n > 2) fit.slope_stderr = std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx);
    return fit;
}

TheilSen theil_sen(const std::vector<double>& x, const std::vector<double>& y) {
    size_t n = x.size();
    if (n != y.size() || n < 2) throw std::invalid_argument("theil_sen: need >= 2 points");
    std::vector<double> slopes;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (x[j] != x[i]) slopes.push_back((y[j] - y[i]) / (x[j] - x[i]));
    std::sort(slopes.begin(), slopes.end());
    TheilSen ts;
    size_t m = slopes.size();
    ts.slope = m % 2 ? slopes[m / 2] : 0.5 * (slopes[m / 2 - 1] + slopes[m / 2]);
    // order-statistic CI: rank offset 1.96*sqrt(var of Kendall's S)/2
    double var_s = static_cast<double>(n) * (n - 1.0) * (2.0 * n + 5.0) / 18.0;
    double c = 1.96 * std::sqrt(var_s);
    long lo_idx = static_cast<long>((static_cast<double>(m) - c) / 2.0);
    long hi_idx = static_cast<long>((static_cast<double>(m) + c) / 2.0) + 1;
    lo_idx = std::max(0L, lo_idx);
    hi_idx = std::min(static_cast<long>(m) - 1, hi_idx);
    ts.lo = slopes[static_cast<size_t>(lo_idx)];
    ts.hi = slopes[static_cast<size_t>(hi_idx)];
    return ts;
}

}  // namespace renewalkit
