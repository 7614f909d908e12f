#pragma once

#include <memory>
#include <vector>

namespace renewalkit::stable {

// One-dimensional symmetric alpha-stable law with cf exp(-|t|^alpha):
// density/CDF tabulated by Fourier inversion on a fine grid, continued with
// the asymptotic tail series beyond the grid.
class SymStable1D {
  public:
    explicit SymStable1D(double alpha, double x_max = 64.0, int grid_log2 = 18);

    // psi_d(u * omega) for the product of d iid copies (cf exp(-sum |t_i|^alpha))
    double product_ray_value(const std::vector<double>& omega, double u) const;

    double alpha() const { return alpha_; }
    double pdf(double x) const;
    double cdf(double x) const;
    double tail(double x) const { return x >= 0 ? 1.0 - cdf(x) : cdf(-x); }
    double interval_prob(double a, double b) const;  // P(X in [a, b))

  private:
    double series_pdf(double x) const;
    double series_tail(double x) const;
    double image_sum(double x) const;

    double alpha_;
    double x_max_;
    double dx_;
    std::vector<double> pdf_grid_;  // on [0, x_max]
    std::vector<double> cdf_grid_;  // cdf(x_k) for x_k >= 0
};

}  // namespace renewalkit::stable
