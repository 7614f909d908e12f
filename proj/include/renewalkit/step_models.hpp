#pragma once

#include "renewalkit/norming.hpp"
#include "renewalkit/stable1d.hpp"
#include "renewalkit/stable_law.hpp"
#include "renewalkit/util/rng.hpp"

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace renewalkit::models {

struct UnknownTail : std::runtime_error {
    explicit UnknownTail(const std::string& what) : std::runtime_error(what) {}
};
struct MonteCarloBudget : std::runtime_error {
    explicit MonteCarloBudget(const std::string& what) : std::runtime_error(what) {}
};

// Sampleable step law with its tail, truncated moments, characteristic
// function, norming function, and (for lattice laws) an exact pmf.
class StepDistribution {
  public:
    virtual ~StepDistribution() = default;

    virtual std::string name() const = 0;
    virtual int dim() const = 0;
    virtual double alpha() const = 0;
    virtual const NormingFunction& norming() const = 0;
    virtual bool symmetric() const { return true; }

    virtual void sample(Rng& rng, std::span<double> out) const = 0;

    // q_X(s) = P(|X| > s); bracket gives certified lower/upper values where
    // only an asymptotic point estimate is available
    virtual double tail(double s) const = 0;
    virtual std::pair<double, double> tail_bracket(double s) const { return {tail(s), tail(s)}; }

    virtual std::complex<double> cf(const std::vector<double>& t) const = 0;

    virtual bool is_lattice() const = 0;
    virtual double pmf(const std::vector<long long>& x) const;

    // limiting stable law of S_n / a_n
    virtual stable::StableLaw limit_law() const = 0;

    // P(xi in [a, b)) for the 1-d factor of product-form laws; nullopt otherwise
    virtual std::optional<double> factor_interval_prob(double a, double b) const {
        (void)a;
        (void)b;
        return std::nullopt;
    }
    // psi(u * omega) for the limit law when a product-form fast path exists
    virtual std::optional<double> limit_ray_value(const std::vector<double>& omega, double u) const {
        (void)omega;
        (void)u;
        return std::nullopt;
    }
};

// ---- Example-2.1-style family: symmetric integer steps with spiky pmf ----
//   P(xi = +-k) = c k^{-1-d/2} ln k   off powers of two
//   P(xi = +-k) = c k^{-d/2} / b_k    at k in {2, 4, 8, ...}
struct BkSpec {
    enum class Kind { Const, Log, LogSq, Custom };
    Kind kind = Kind::Log;
    double value = 1.0;  // for Const
    std::function<double(double)> custom;

    double operator()(double k) const;
    std::string describe() const;
};

class WilliamsonModified : public StepDistribution {
  public:
    WilliamsonModified(int d, BkSpec bk);

    std::string name() const override;
    int dim() const override { return d_; }
    double alpha() const override { return alpha_; }
    const NormingFunction& norming() const override { return norming_; }
    void sample(Rng& rng, std::span<double> out) const override;
    double tail(double s) const override;  // asymptotic point estimate d * q_xi(s)
    std::pair<double, double> tail_bracket(double s) const override;
    std::complex<double> cf(const std::vector<double>& t) const override;
    bool is_lattice() const override { return true; }
    double pmf(const std::vector<long long>& x) const override;
    stable::StableLaw limit_law() const override;

    double factor_pmf(long long k) const;          // P(xi = k)
    double factor_tail(double s) const;            // P(xi > s), one-sided
    std::optional<double> factor_interval_prob(double a, double b) const override;
    double normalizing_constant() const { return c_; }

  private:
    double sample_factor(Rng& rng) const;

    int d_;
    BkSpec bk_;
    double alpha_;
    double c_ = 0.0;
    NormingFunction norming_;
    // alias table for k <= k_alias, exact tail categories beyond
    long long k_alias_ = 1 << 16;
    std::vector<double> alias_prob_;
    std::vector<int> alias_idx_;
    double mass_alias_ = 0.0, mass_tail_smooth_ = 0.0, mass_tail_spike_ = 0.0;
    std::vector<std::pair<long long, double>> tail_spikes_;  // cumulative
    std::vector<double> suffix_;  // P(xi > k) for k <= k_alias
};

// ---- Example-2.2 family: iid symmetric alpha-stable coordinates ----
class ProductStable : public StepDistribution {
  public:
    ProductStable(int d, double alpha);

    std::string name() const override;
    int dim() const override { return d_; }
    double alpha() const override { return alpha_; }
    const NormingFunction& norming() const override { return norming_; }
    void sample(Rng& rng, std::span<double> out) const override;
    double tail(double s) const override;
    std::pair<double, double> tail_bracket(double s) const override;
    std::complex<double> cf(const std::vector<double>& t) const override;
    bool is_lattice() const override { return false; }
    stable::StableLaw limit_law() const override;

    std::optional<double> factor_interval_prob(double a, double b) const override;
    std::optional<double> limit_ray_value(const std::vector<double>& omega, double u) const override;
    const stable::SymStable1D& factor() const { return one_; }

  private:
    int d_;
    double alpha_;
    stable::SymStable1D one_;
    NormingFunction norming_;
};

// ---- integer-valued radially-Pareto family (exact-convolution oracle) ----
//   pmf(x) = c (1 v |x|)^{-d-alpha} on Z^d
class ParetoLattice : public StepDistribution {
  public:
    ParetoLattice(int d, double alpha, long long box = 2048);

    std::string name() const override;
    int dim() const override { return d_; }
    double alpha() const override { return alpha_; }
    const NormingFunction& norming() const override { return norming_; }
    void sample(Rng& rng, std::span<double> out) const override;
    double tail(double s) const override;
    std::complex<double> cf(const std::vector<double>& t) const override;  // box-truncated
    bool is_lattice() const override { return true; }
    double pmf(const std::vector<long long>& x) const override;
    stable::StableLaw limit_law() const override;

    double normalizing_constant() const { return c_; }
    double tail_constant() const;  // lim s^alpha q_X(s)

  private:
    void sample_tail(Rng& rng, std::span<double> out) const;

    int d_;
    double alpha_;
    double c_ = 0.0;
    long long box_;
    NormingFunction norming_;
    // radial mass bins out to the box plus analytic continuation
    std::vector<double> radial_suffix_;  // P(|X| > r_k)
    double bin_width_ = 0.25;
    // sampler: alias over |x|_inf <= k_alias, exact tail rejection beyond
    long long k_alias_ = 96;
    std::vector<double> alias_prob_;
    std::vector<int> alias_idx_;
    std::vector<std::vector<long long>> alias_points_;
    double mass_alias_ = 0.0;
    double reject_bound_ = 0.0;
};

// ---- finite-support lattice law (exact everything; alpha = 2) ----
class FiniteLattice : public StepDistribution {
  public:
    FiniteLattice(int d, std::vector<std::pair<std::vector<long long>, double>> atoms, std::string name = "finite");

    std::string name() const override { return name_; }
    int dim() const override { return d_; }
    double alpha() const override { return 2.0; }
    const NormingFunction& norming() const override { return norming_; }
    bool symmetric() const override { return symmetric_; }
    void sample(Rng& rng, std::span<double> out) const override;
    double tail(double s) const override;
    std::complex<double> cf(const std::vector<double>& t) const override;
    bool is_lattice() const override { return true; }
    double pmf(const std::vector<long long>& x) const override;
    stable::StableLaw limit_law() const override;  // Gaussian limit; requires mean zero

    const std::vector<std::pair<std::vector<long long>, double>>& atoms() const { return atoms_; }
    std::vector<double> mean() const;
    std::vector<double> covariance() const;  // row-major d x d

  private:
    int d_;
    std::string name_;
    std::vector<std::pair<std::vector<long long>, double>> atoms_;
    std::vector<double> alias_prob_;
    std::vector<int> alias_idx_;
    NormingFunction norming_;
    bool symmetric_ = false;
};

// ---- continuous isotropic density f(x) = c (1+|x|)^{-d-decay} ----
// used by the sufficient-condition checks that need an evaluable density
class IsotropicParetoDensity : public StepDistribution {
  public:
    IsotropicParetoDensity(int d, double decay_beyond_d = 2.0);

    std::string name() const override;
    int dim() const override { return d_; }
    double alpha() const override;  // 2 when the decay gives finite-variance-style norming
    const NormingFunction& norming() const override { return norming_; }
    void sample(Rng& rng, std::span<double> out) const override;
    double tail(double s) const override;
    std::complex<double> cf(const std::vector<double>& t) const override;  // numeric radial transform
    bool is_lattice() const override { return false; }
    stable::StableLaw limit_law() const override;

    double density_at(double r) const;          // radial profile c (1+r)^{-d-decay}
    double cell_mass(const std::vector<double>& x, double h) const;  // midpoint approx

  private:
    int d_;
    double decay_;
    double c_ = 0.0;
    NormingFunction norming_;
    std::vector<double> radial_cdf_;  // P(|X| <= r) on a grid, for sampling
    double cdf_dr_ = 0.0;
};

// helpers for the alias method
void build_alias(const std::vector<double>& weights, std::vector<double>& prob, std::vector<int>& idx);
int sample_alias(Rng& rng, const std::vector<double>& prob, const std::vector<int>& idx);

// ---- operations ----

struct Path {
    std::vector<double> steps;  // n x d row-major
    std::vector<double> sums;   // (n+1) x d row-major, S_0 = 0
};
Path sample_path(const StepDistribution& model, long n, uint64_t seed, uint64_t substream = 0);

struct NormingValidation {
    bool ok = false;
    double ratio_min = 0.0, ratio_max = 0.0;  // over q_X(s) A(s) on the test grid
    std::vector<double> s_grid, ratio_lo, ratio_hi;
};
// Returns the family's documented A and validates boundedness of q_X(s) A(s).
NormingValidation norming_from_tail(const StepDistribution& model, double s_lo = 1e2, double s_hi = 1e6,
                                    int nodes = 9, double band = 1e3);

struct MomentDiagnostics {
    std::vector<double> s_grid;
    std::vector<std::vector<double>> m_ratio;       // [omega][s]: m_X(s,w) A(s)/s^2
    std::vector<std::vector<double>> m_ratio_err;   // MC stderr
    std::vector<double> n_grid, centering;          // (n/a_n)|c_X(a_n)|
    bool centering_exact_zero = false;
    bool m_ratio_bounded = false;
    double band_lo = 0.0, band_hi = 0.0;
};
MomentDiagnostics truncated_moment_diagnostics(const StepDistribution& model, std::vector<double> s_grid,
                                               int omega_count = 4, long samples = 200000,
                                               uint64_t seed = 0x5eed);

// structured model configuration (documented schema; see print-schema)
std::unique_ptr<StepDistribution> model_from_json(const std::string& text);

}  // namespace renewalkit::models
