#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace renewalkit::models {

// Norming function A: strictly increasing, regularly varying with exponent
// alpha; a_n = A^{-1}(n) norms the walk. Closed-form families plus a log-log
// interpolated table.
class NormingFunction {
  public:
    enum class Family { Power, PowerOverLog, SquareOverLogSq, SquareOverLogLog, Table };

    // A(s) = scale * s^alpha
    static NormingFunction power(double alpha, double scale = 1.0, double s_min = 1.0);
    // A(s) = scale * s^power / ln s
    static NormingFunction power_over_log(double power, double scale = 1.0, double s_min = 3.0);
    // A(s) = scale * s^2 / (ln s)^2
    static NormingFunction square_over_log_sq(double scale = 1.0, double s_min = 8.0);
    // A(s) = scale * s^2 / ln ln s
    static NormingFunction square_over_loglog(double scale = 1.0, double s_min = 16.0);
    // strictly increasing samples (s, A(s)), log-log linear in between
    static NormingFunction table(std::vector<std::pair<double, double>> samples, double alpha_hint);

    Family family() const { return family_; }
    double alpha() const { return alpha_; }
    double s_min() const { return s_min_; }

    double operator()(double s) const;
    // monotone bisection to relative 1e-12
    double inverse(double t) const;
    // a_0 = 1 by convention; a_n = A^{-1}(n) otherwise (memoized for integers)
    double a_n(double n) const;

    // numeric check that s A'(s)/A(s) stays within [lo, hi] on a log grid
    struct SlopeCheck {
        double min_ratio = 0.0, max_ratio = 0.0;
        bool ok = false;
    };
    SlopeCheck slope_check(double s_lo, double s_hi, int nodes = 64, double lo = 0.05, double hi = 20.0) const;

    std::string describe() const;

  private:
    double raw(double s) const;

    Family family_ = Family::Power;
    double alpha_ = 1.0;
    double scale_ = 1.0;
    double s_min_ = 1.0;
    std::vector<std::pair<double, double>> table_;  // (log s, log A)
    mutable std::map<long long, double> memo_;
};

}  // namespace renewalkit::models
