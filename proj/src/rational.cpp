#include "renewalkit/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace renewalkit {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in " + s);
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(Int(s));
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (head == "-" || head.empty()) head = "0";
    Int ipart(head);
    Int scale = 1;
    for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
    Int fpart = tail.empty() ? Int(0) : Int(tail);
    Int num = boost::multiprecision::abs(ipart) * scale + fpart;
    if (neg || ipart < 0) num = -num;
    return Rational(num, scale);
}

std::string to_string(const Rational& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

std::string to_string(const Int& n) { return n.str(); }

Rational rational_from_decimal(double x, int max_digits) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_decimal: non-finite input");
    double scale = 1.0;
    for (int k = 0; k <= max_digits; ++k) {
        double scaled = x * scale;
        double rounded = std::nearbyint(scaled);
        if (std::abs(scaled - rounded) <= 1e-9 * std::max(1.0, std::abs(scaled))) {
            Int num(static_cast<long long>(rounded));
            Int den(static_cast<long long>(scale));
            return Rational(num, den);
        }
        scale *= 10.0;
    }
    // small fractions like 1/3, 2/7
    for (long long q = 2; q <= 64; ++q) {
        double scaled = x * static_cast<double>(q);
        double rounded = std::nearbyint(scaled);
        if (std::abs(scaled - rounded) <= 1e-9 * std::max(1.0, std::abs(scaled)))
            return Rational(Int(static_cast<long long>(rounded)), Int(q));
    }
    throw std::invalid_argument("rational_from_decimal: no short rational matches " + std::to_string(x));
}

}  // namespace renewalkit
