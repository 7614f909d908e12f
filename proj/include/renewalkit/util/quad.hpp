#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace renewalkit {

struct QuadratureBudgetExceeded : std::runtime_error {
    explicit QuadratureBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence.
GaussRule gauss_legendre(int n);

// Integrate f over [a,b] with an n-point Gauss rule.
double gauss_integrate(const std::function<double(double)>& f, double a, double b, const GaussRule& rule);

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
};

// Adaptive Simpson with absolute/relative targets and an evaluation budget.
AdaptiveResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                double rel_tol = 1e-10, long max_evals = 2'000'000);

}  // namespace renewalkit
