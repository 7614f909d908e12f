#pragma once

#include "renewalkit/step_models.hpp"
#include "renewalkit/util/fit.hpp"

#include <string>
#include <vector>

namespace renewalkit::concentration {

// Constant of the concentration bound, from the quartic-sinc product kernel:
// c_d = (2 pi)^{-d} sup_{||x||_inf <= 1/2} 1 / f(x). Numeric grid/refinement
// value, cross-checked against the corner closed form of the decreasing kernel.
double concentration_constant(int d);

struct ConcentrationCheck {
    std::string model;
    double h = 0.0, a = 0.0;
    double lhs = 0.0;         // exact (or histogram) concentration function value
    double lhs_slack = 0.0;   // additive upper-bound slack (truncated support / histogram error)
    double rhs = 0.0;         // c_d [(1/a) v h]^d int_{||t||_inf <= a} |phi| dt
    double margin = 0.0;      // rhs - (lhs + lhs_slack)
    bool holds = false;
};

// Levy concentration function Q_X(h) = sup_x P(X in x + h I_d).
// Lattice path: exact sliding-window maximum over the (truncated) support,
// with the neglected mass added to the slack. Nonlattice path: cell histogram
// with the binomial error folded into the slack.
struct QEstimate {
    double value = 0.0;
    double slack = 0.0;
};
QEstimate concentration_function(const models::StepDistribution& model, double h, long mc_samples = 400000,
                                 uint64_t seed = 0x5eed);

ConcentrationCheck check_concentration(const models::StepDistribution& model, double h, double a,
                                       long mc_samples = 400000, uint64_t seed = 0x5eed);
std::vector<ConcentrationCheck> check_concentration(const models::StepDistribution& model,
                                                    const std::vector<double>& h_list,
                                                    const std::vector<double>& a_list);

// ---- local large-deviation shape checks ----

struct LdpRay {
    std::vector<double> omega;
    double n = 0.0, s = 0.0;
    std::vector<double> rho;        // |x| grid along the ray
    std::vector<double> log_prob;   // log MC estimate of P(S_n in x + h I_d, |X_{n:1}| <= s)
    std::vector<double> stderr_log;
    double slope = 0.0;      // fitted d log P / d(rho/s); the bound's shape wants < 0
    double r_squared = 0.0;
    long min_count = 0;
};

struct LdpConfig {
    double h = 1.0;
    long paths = 2'000'000;
    int threads = 1;
    uint64_t seed = 0x5eed;
};

LdpRay check_local_ldp_ray(const models::StepDistribution& model, double n, double s,
                           const std::vector<double>& omega, const std::vector<double>& rho_grid,
                           const LdpConfig& cfg = {});

// s = infinity specialization: sup-cell probability of S_n scaled by a_n^d,
// exact through the torus tables (symmetric lattice walks).
double sup_cell_probability(const models::StepDistribution& model, double n, long long grid = 0);

}  // namespace renewalkit::concentration
