#pragma once

#include "renewalkit/step_models.hpp"

#include <functional>
#include <span>
#include <vector>

namespace renewalkit::renewal {

struct BoxTooSmall : std::runtime_error {
    explicit BoxTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// Dense n-fold convolution table on a truncated lattice box. Masses only ever
// leave the box, so every entry is a certified lower bound with per-table
// missing-mass accounting.
struct ConvolutionTable {
    int d = 0;
    long radius = 0;  // box is [-radius, radius]^d
    std::vector<double> mass;
    double missing = 0.0;  // 1 - in-box mass, exact

    long side() const { return 2 * radius + 1; }
    double at(std::span<const long long> x) const;
    double& at_mut(std::span<const long long> x);
};

// F^{*k} for k = 1..n by direct dense convolution with the kernel truncated to
// the same box; the reference oracle for everything else.
std::vector<ConvolutionTable> convolve_exact(const models::StepDistribution& law, int n, long box_radius,
                                             double tol = 1.0);

// Characteristic-function powering on the torus Z^d mod G: the inverse
// transform of phi^n is the G-periodization of the law of S_n, exact up to
// the folding remainder and float rounding. Windowed sums over n collapse to
// a closed-form geometric sum in the frequency domain, so a whole n-range
// costs one transform. Requires a symmetric lattice law (real phi).
class TorusConvolver {
  public:
    TorusConvolver(int d, int grid, std::function<double(std::span<const long long>)> pmf,
                   bool assume_symmetric = true);

    int dim() const { return d_; }
    int grid() const { return g_; }
    double fold_deficit() const { return fold_deficit_; }

    // P_torus(S_n = x) for all x in [-G/2, G/2)^d (row-major)
    std::vector<double> power_table(double n) const;
    // sum over integer n in [n0, n1) of P_torus(S_n = x)
    std::vector<double> window_table(double n0, double n1) const;

    double lookup(const std::vector<double>& table, std::span<const long long> x) const;
    // max boundary-shell entry times the face-image count: a periodization
    // error indicator in the spirit of the density-grid alias bound
    double boundary_level(const std::vector<double>& table) const;

  private:
    std::vector<double> invert(const std::vector<double>& freq) const;

    int d_;
    int g_;
    double fold_deficit_ = 0.0;
    std::vector<double> phi_;  // real CF on the frequency grid
};

}  // namespace renewalkit::renewal
