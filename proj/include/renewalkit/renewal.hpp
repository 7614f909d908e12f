#pragma once

#include "renewalkit/convolution.hpp"
#include "renewalkit/intmatrix.hpp"
#include "renewalkit/step_models.hpp"

#include <optional>
#include <string>
#include <vector>

namespace renewalkit::renewal {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Target cell of the renewal sums: D^{-1} K I_nu x (h I_{d-nu}), the unit
// cell h I_d when nu = 0.
struct TargetCell {
    double h = 1.0;
    int d = 1;
    int nu = 0;
    long long q = 1;
    IntMat k;                   // nu x nu unimodular; identity by default
    std::vector<double> kinv_d;  // K^{-1} D as doubles, row-major (cached)

    static TargetCell cube(int d, double h) {
        TargetCell c;
        c.d = d;
        c.h = h;
        return c;
    }
    static TargetCell lattice(int d, int nu, long long q, IntMat k_block);

    bool contains(std::span<const double> y) const;  // y in Delta_h
    // integer points of x + Delta_h (exact floor/ceil arithmetic)
    std::vector<std::vector<long long>> integer_points(std::span<const double> x) const;
};

struct RenewalEstimate {
    double s = 0.0;
    std::vector<double> omega;
    double h = 1.0;
    double delta = 0.0;
    double m_cut = 0.0;  // M of the truncation window; 0 means "no upper cut"
    double value = 0.0;  // (s^d / A(s)) * sum over the window
    double stderr_or_bound = 0.0;
    double remainder_bound = 0.0;  // shape of the neglected n >= A(Ms) mass: M^{alpha-d}/(d-alpha)
    double n_lo = 0.0, n_hi = 0.0;
    std::string method;  // "exact-convolution" | "monte-carlo"
};

struct RenewalConfig {
    long long grid_override = 0;  // torus size; 0 = auto from a_{n_max}
    long paths = 200000;          // MC paths
    int threads = 1;
    uint64_t seed = 0x5eed;
    long max_cells = 90'000'000;
};

// Big-n window sum over n in [A(delta s), A(M s)) for a batch of directions.
// Exact path: torus CF powering (lattice symmetric models); MC path: shared
// paths with prefix sums across all n and directions.
std::vector<RenewalEstimate> renewal_sum_batch(const models::StepDistribution& model, const TargetCell& cell,
                                               double s, const std::vector<std::vector<double>>& omegas,
                                               double delta, double m_cut, const std::string& method,
                                               const RenewalConfig& cfg = {});

RenewalEstimate renewal_sum(const models::StepDistribution& model, const TargetCell& cell, double s,
                            const std::vector<double>& omega, double delta, double m_cut,
                            const std::string& method, const RenewalConfig& cfg = {});

// Small-n sum over n in [1, A(delta s)); the reported value is the sup over
// the deterministic direction set.
struct SmallNResult {
    double sup_value = 0.0;  // sup over omegas of (s^d/A(s)) sum_{n < A(delta s)}
    std::vector<RenewalEstimate> per_omega;
};
SmallNResult small_n_sum(const models::StepDistribution& model, const TargetCell& cell, double s,
                         const std::vector<std::vector<double>>& omegas, double delta,
                         const std::string& method, const RenewalConfig& cfg = {});

// Local-limit-theorem convergence check for symmetric lattice walks:
//   gap(n) = sup_y |a_n^d P(S_n = y) - q psi(y / a_n)|
// over reachable y with |y| <= radius_factor * a_n; psi defaults to the
// Gaussian closed form of the model's limit law (alpha = 2).
struct LltReport {
    std::vector<double> n_grid;
    std::vector<double> sup_gap;
    bool decreasing = false;
};
LltReport llt_check(const models::StepDistribution& model, const std::vector<double>& n_grid,
                    long long class_period = 1, double radius_factor = 8.0,
                    const std::function<double(const std::vector<double>&)>& psi = nullptr,
                    const RenewalConfig& cfg = {});

}  // namespace renewalkit::renewal
