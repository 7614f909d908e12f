#pragma once

#include "renewalkit/util/rng.hpp"

#include <cmath>
#include <vector>

namespace renewalkit {

// Deterministic unit-vector sets on S^{d-1}: equispaced angles for d=2,
// Fibonacci sphere for d=3, seeded-normalized draws for d >= 4.
inline std::vector<std::vector<double>> direction_set(int d, int n, uint64_t seed = 0x5eed) {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<size_t>(n));
    if (d == 1) {
        out.push_back({1.0});
        if (n > 1) out.push_back({-1.0});
        return out;
    }
    if (d == 2) {
        for (int i = 0; i < n; ++i) {
            double th = 2.0 * M_PI * (static_cast<double>(i) + 0.5) / n;
            out.push_back({std::cos(th), std::sin(th)});
        }
        return out;
    }
    if (d == 3) {
        const double ga = M_PI * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < n; ++i) {
            double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / n;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double th = ga * i;
            out.push_back({r * std::cos(th), r * std::sin(th), z});
        }
        return out;
    }
    Rng rng(seed, static_cast<uint64_t>(d));
    for (int i = 0; i < n; ++i) {
        std::vector<double> v(static_cast<size_t>(d));
        double norm = 0.0;
        do {
            norm = 0.0;
            for (auto& c : v) {
                c = rng.normal();
                norm += c * c;
            }
        } while (norm < 1e-12);
        norm = std::sqrt(norm);
        for (auto& c : v) c /= norm;
        out.push_back(std::move(v));
    }
    return out;
}

inline double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Orthonormal completion of a unit vector omega to a full basis; column 0 is
// omega itself (Gram-Schmidt over the best-conditioned coordinate axes).
std::vector<std::vector<double>> orthonormal_frame(const std::vector<double>& omega);

}  // namespace renewalkit
