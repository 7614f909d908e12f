#include "renewalkit/norming.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace renewalkit::models {

NormingFunction NormingFunction::power(double alpha, double scale, double s_min) {
    NormingFunction a;
    a.family_ = Family::Power;
    a.alpha_ = alpha;
    a.scale_ = scale;
    a.s_min_ = s_min;
    return a;
}

NormingFunction NormingFunction::power_over_log(double power, double scale, double s_min) {
    if (s_min <= std::exp(1.0 / power))
        throw std::invalid_argument("NormingFunction: s^p/ln s needs s_min above the turning point");
    NormingFunction a;
    a.family_ = Family::PowerOverLog;
    a.alpha_ = power;
    a.scale_ = scale;
    a.s_min_ = s_min;
    return a;
}

NormingFunction NormingFunction::square_over_log_sq(double scale, double s_min) {
    if (s_min <= std::exp(1.0)) throw std::invalid_argument("NormingFunction: s^2/(ln s)^2 needs s_min > e");
    NormingFunction a;
    a.family_ = Family::SquareOverLogSq;
    a.alpha_ = 2.0;
    a.scale_ = scale;
    a.s_min_ = s_min;
    return a;
}

NormingFunction NormingFunction::square_over_loglog(double scale, double s_min) {
    if (s_min <= std::exp(1.0)) throw std::invalid_argument("NormingFunction: s^2/lnln s needs s_min > e");
    NormingFunction a;
    a.family_ = Family::SquareOverLogLog;
    a.alpha_ = 2.0;
    a.scale_ = scale;
    a.s_min_ = s_min;
    return a;
}

NormingFunction NormingFunction::table(std::vector<std::pair<double, double>> samples, double alpha_hint) {
    if (samples.size() < 2) throw std::invalid_argument("NormingFunction: table needs >= 2 samples");
    std::sort(samples.begin(), samples.end());
    NormingFunction a;
    a.family_ = Family::Table;
    a.alpha_ = alpha_hint;
    a.s_min_ = samples.front().first;
    for (auto& [s, v] : samples) {
        if (s <= 0 || v <= 0) throw std::invalid_argument("NormingFunction: table entries must be positive");
        if (!a.table_.empty() && std::log(v) <= a.table_.back().second)
            throw std::invalid_argument("NormingFunction: table must be strictly increasing");
        a.table_.push_back({std::log(s), std::log(v)});
    }
    return a;
}

double NormingFunction::raw(double s) const {
    switch (family_) {
        case Family::Power:
            return scale_ * std::pow(s, alpha_);
        case Family::PowerOverLog:
            return scale_ * std::pow(s, alpha_) / std::log(s);
        case Family::SquareOverLogSq: {
            double l = std::log(s);
            return scale_ * s * s / (l * l);
        }
        case Family::SquareOverLogLog:
            return scale_ * s * s / std::log(std::log(s));
        case Family::Table: {
            double ls = std::log(s);
            if (ls <= table_.front().first) {
                // power continuation below the table
                return std::exp(table_.front().second + alpha_ * (ls - table_.front().first));
            }
            if (ls >= table_.back().first)
                return std::exp(table_.back().second + alpha_ * (ls - table_.back().first));
            auto it = std::lower_bound(table_.begin(), table_.end(), std::make_pair(ls, -1e300));
            auto lo = it == table_.begin() ? it : it - 1;
            double f = (ls - lo->first) / ((lo + 1)->first - lo->first);
            return std::exp(lo->second * (1.0 - f) + (lo + 1)->second * f);
        }
    }
    return 0.0;
}

double NormingFunction::operator()(double s) const {
    if (s <= 0) return 0.0;
    if (s < s_min_) {
        // regularly varying continuation below the cutoff keeps A increasing
        double base = raw(s_min_);
        return base * std::pow(s / s_min_, alpha_);
    }
    return raw(s);
}

double NormingFunction::inverse(double t) const {
    if (t <= 0) return 0.0;
    double lo = 1e-12, hi = 1.0;
    while ((*this)(hi) < t) {
        hi *= 4.0;
        if (hi > 1e300) throw std::invalid_argument("NormingFunction::inverse: target too large");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = std::sqrt(lo * hi);
        if ((*this)(mid) < t)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-12 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double NormingFunction::a_n(double n) const {
    if (n <= 0) return 1.0;  // a_0 = 1 by convention
    if (n == std::floor(n) && n < 9e18) {
        long long key = static_cast<long long>(n);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        double v = inverse(n);
        memo_[key] = v;
        return v;
    }
    return inverse(n);
}

NormingFunction::SlopeCheck NormingFunction::slope_check(double s_lo, double s_hi, int nodes, double lo,
                                                         double hi) const {
    SlopeCheck c;
    c.min_ratio = 1e300;
    c.max_ratio = -1e300;
    for (int i = 0; i < nodes; ++i) {
        double s = s_lo * std::pow(s_hi / s_lo, (i + 0.5) / nodes);
        double h = s * 1e-6;
        double ratio = s * ((*this)(s + h) - (*this)(s - h)) / (2.0 * h) / (*this)(s);
        c.min_ratio = std::min(c.min_ratio, ratio);
        c.max_ratio = std::max(c.max_ratio, ratio);
    }
    c.ok = c.min_ratio >= lo && c.max_ratio <= hi;
    return c;
}

std::string NormingFunction::describe() const {
    std::ostringstream os;
    switch (family_) {
        case Family::Power:
            os << scale_ << " * s^" << alpha_;
            break;
        case Family::PowerOverLog:
            os << scale_ << " * s^" << alpha_ << " / ln s";
            break;
        case Family::SquareOverLogSq:
            os << scale_ << " * s^2 / (ln s)^2";
            break;
        case Family::SquareOverLogLog:
            os << scale_ << " * s^2 / ln ln s";
            break;
        case Family::Table:
            os << "table[" << table_.size() << "] ~ s^" << alpha_;
            break;
    }
    return os.str();
}

}  // namespace renewalkit::models
