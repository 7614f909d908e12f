#pragma once

#include "renewalkit/util/quad.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace renewalkit::stable {

struct NotApplicable : std::runtime_error {
    explicit NotApplicable(const std::string& what) : std::runtime_error(what) {}
};

// Angular measure on S^{d-1}: uniform, a finite atom list, or a density with
// respect to the uniform probability measure (discretized by a fixed rule).
class SpectralMeasure {
  public:
    enum class Kind { Isotropic, Atoms, Density };

    static SpectralMeasure isotropic();
    static SpectralMeasure atoms(std::vector<std::pair<std::vector<double>, double>> list);
    static SpectralMeasure density(std::function<double(const std::vector<double>&)> f, int nodes = 512);

    Kind kind() const { return kind_; }

    // Finite (direction, weight) presentation, weights summing to 1.
    std::vector<std::pair<std::vector<double>, double>> quadrature(int d) const;

    const std::vector<std::pair<std::vector<double>, double>>& atom_list() const { return atoms_; }

  private:
    Kind kind_ = Kind::Isotropic;
    std::vector<std::pair<std::vector<double>, double>> atoms_;
    std::function<double(const std::vector<double>&)> density_;
    int nodes_ = 512;
};

// Strictly stable law on R^d: characteristic function
//   exp(-C E f_alpha(<xi, t>) + i <tau, t> 1{alpha = 1}).
struct StableLaw {
    double alpha = 2.0;
    double C = 1.0;
    std::vector<double> tau;  // used only when alpha == 1
    SpectralMeasure spectral = SpectralMeasure::isotropic();
    int d = 1;

    void validate() const;        // parameter ranges; alpha=1 needs mean-zero measure
    bool is_degenerate() const;   // spectral measure concentrated in a hyperplane through 0

    std::complex<double> cf(const std::vector<double>& t) const;

    // Gaussian covariance matrix for alpha == 2 (Sigma with cf = exp(-t'St/2)).
    std::vector<double> gaussian_covariance() const;  // row-major d x d
    double gaussian_density(const std::vector<double>& x) const;
};

// E|<e, xi>|^alpha for xi uniform on S^{d-1}.
double isotropic_angular_moment(int d, double alpha);

// Isotropic stable law whose one-dimensional radial CF is exp(-scale * r^alpha).
StableLaw isotropic_law(int d, double alpha, double C = 1.0);

// ---- density on a grid (tensor-trapezoid Fourier inversion via FFT) ----

struct DensityGridConfig {
    double extent = 5.0;       // grid covers |x_i| <= extent
    double spacing = 0.25;     // upper bound on the output spacing
    double tail_eps = 1e-10;   // |cf| truncation level fixing the t-domain radius
    double alias_tol = 5e-7;   // target for the periodization error
    long max_nodes = 120'000'000;
    int max_period_retries = 4;
};

struct DensityGrid {
    int d = 0;
    int n = 0;               // output nodes per dimension
    double spacing = 0.0;    // output spacing
    double extent = 0.0;     // grid origin is -extent in each coordinate
    double period = 0.0;     // torus period used by the inversion
    std::vector<double> values;  // row-major, n^d entries
    double truncation_error = 0.0;
    double alias_error = 0.0;
    double period_mass = 0.0;  // full-period trapezoid mass (equals cf(0) up to rounding)

    double error_estimate() const { return truncation_error + alias_error; }
    double value(const std::vector<double>& x) const;  // multilinear interpolation
    std::string to_csv() const;
    std::vector<unsigned char> to_binary() const;
};

DensityGrid density(const StableLaw& law, const DensityGridConfig& cfg = {});

// ---- density along a ray (slice-projection inversion) ----
//
// For fixed omega, psi(u * omega) = (2pi)^{-1} int e^{-i u l} H(l) dl with
// H(l) the integral of cf over the affine hyperplane <t, omega> = l. The
// hyperplane quadrature runs in a frame adapted to omega, so isotropic laws
// see identical arithmetic for every direction.
class RayDensity {
  public:
    RayDensity(const StableLaw& law, std::vector<double> omega, double u_max, double tol = 1e-9);
    double operator()(double u) const;
    double u_max() const { return u_max_; }

  private:
    double u_max_;
    double dlam_;
    int d_;
    std::vector<double> lambdas_;
    std::vector<std::complex<double>> h_;
};

// ---- radial SRT limit (partial-radial integral) ----

struct RhoResult {
    double value = 0.0;
    bool infinite = false;
    double tail_estimate = 0.0;   // extrapolated contribution beyond the computed range (delta = 0)
    double error = 0.0;
    double fitted_ray_exponent = 0.0;  // local decay exponent of psi(u*omega) at the far end
};

struct RhoConfig {
    double u_cap = 512.0;   // computed range for the improper (delta = 0) integral
    double abs_tol = 1e-10;
    double divergence_margin = 0.05;
};

// rho_delta(omega) = (alpha / q) * int_0^{1/delta} psi(u omega) u^{d-alpha-1} du.
// delta = 0 integrates to u_cap and extrapolates with the fitted power decay,
// flagging divergence when the integrand is not integrable at infinity.
// ray_override, when given, supplies psi(u * omega) directly and bypasses the
// slice quadrature (fast path for product-form laws; mandatory in practice
// for small alpha, where the slice cutoff radius explodes).
RhoResult rho(const StableLaw& law, long q, const std::vector<double>& omega, double delta,
              const RhoConfig& cfg = {}, const std::function<double(double)>& ray_override = nullptr);

// ---- uniform-convergence diagnostic for rho_delta -> rho_0 ----

struct RadialConvergenceReport {
    std::string status;  // "ok" | "NotApplicable" | "Infinite"
    std::vector<double> deltas;
    std::vector<double> sup_gap;  // sup over sampled omega of |rho_delta - rho_proxy|
    bool monotone_decreasing = false;
};

RadialConvergenceReport radial_uniform_convergence_check(const StableLaw& law, long q,
                                                         const std::vector<double>& deltas,
                                                         int omega_count, uint64_t seed = 0x5eed);

}  // namespace renewalkit::stable
