#include "renewalkit/util/directions.hpp"

#include <algorithm>
#include <numeric>

namespace renewalkit {

std::vector<std::vector<double>> orthonormal_frame(const std::vector<double>& omega) {
    size_t d = omega.size();
    std::vector<std::vector<double>> basis;
    basis.push_back(omega);
    // axis order: least-aligned coordinates first for stability
    std::vector<size_t> order(d);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return std::abs(omega[a]) < std::abs(omega[b]); });
    for (size_t k = 0; basis.size() < d && k < d; ++k) {
        std::vector<double> v(d, 0.0);
        v[order[k]] = 1.0;
        for (const auto& b : basis) {
            double p = dot(v, b);
            for (size_t i = 0; i < d; ++i) v[i] -= p * b[i];
        }
        double n = norm2(v);
        if (n < 1e-10) continue;
        for (auto& c : v) c /= n;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace renewalkit
