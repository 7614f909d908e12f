#include "renewalkit/stable1d.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace renewalkit::stable {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSeriesFrom = 32.0;  // series handles |x| >= this

// Hurwitz zeta for s > 1, a > 0 by Euler-Maclaurin.
double hurwitz_zeta(double s, double a) {
    const int m = 12;
    double sum = 0.0;
    for (int k = 0; k < m; ++k) sum += std::pow(a + k, -s);
    double am = a + m;
    sum += std::pow(am, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(am, -s);
    // B_2 = 1/6, B_4 = -1/30, B_6 = 1/42
    double t = s * std::pow(am, -s - 1.0);
    sum += t / 12.0;
    t *= (s + 1.0) * (s + 2.0) / (am * am);
    sum -= t / 720.0;
    t *= (s + 3.0) * (s + 4.0) / (am * am);
    sum += t / 30240.0;
    return sum;
}

}  // namespace

SymStable1D::SymStable1D(double alpha, double x_max, int grid_log2) : alpha_(alpha), x_max_(x_max) {
    if (alpha <= 0.0 || alpha > 2.0) throw std::invalid_argument("SymStable1D: alpha outside (0, 2]");
    // frequency cutoff where exp(-t^alpha) < 1e-14, grid sized to cover it
    double r_cut = std::pow(std::log(1e14), 1.0 / alpha);
    double period = 2.0 * x_max;
    double dt = 2.0 * kPi / period;
    int need = static_cast<int>(std::ceil(std::log2(std::max(4.0, 2.0 * r_cut / dt))));
    grid_log2 = std::clamp(std::max({grid_log2, need, 21}), 16, 25);
    size_t n = size_t{1} << grid_log2;
    dx_ = period / static_cast<double>(n);

    std::vector<std::complex<double>> buf(n);
    for (size_t k = 0; k < n; ++k) {
        double t = (static_cast<double>(k) - static_cast<double>(n) / 2) * dt;
        double v = std::exp(-std::pow(std::abs(t), alpha));
        buf[k] = (k & 1) ? -v : v;
    }
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(buf.data()),
                                      reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    double amp = dt / (2.0 * kPi);

    // keep the non-negative half (pdf is even) and strip the périodization
    // images with the tail series summed over all copies (Hurwitz zeta)
    size_t half = n / 2;
    pdf_grid_.resize(half + 1);
    for (size_t m = 0; m <= half && m + half < n; ++m) {
        double x = static_cast<double>(m) * dx_;
        double v = amp * buf[m + half].real() * (((m + half) & 1) ? -1.0 : 1.0);
        v -= image_sum(x);
        pdf_grid_[m] = std::max(v, 0.0);
    }
    cdf_grid_.resize(pdf_grid_.size());
    double acc = series_tail(x_max_);
    std::vector<double> upper(pdf_grid_.size());
    upper[pdf_grid_.size() - 1] = acc;
    for (size_t m = pdf_grid_.size() - 1; m-- > 0;) {
        acc += 0.5 * (pdf_grid_[m] + pdf_grid_[m + 1]) * dx_;
        upper[m] = acc;  // P(X > x_m)
    }
    for (size_t m = 0; m < pdf_grid_.size(); ++m) cdf_grid_[m] = 1.0 - upper[m];
}

double SymStable1D::image_sum(double x) const {
    if (alpha_ == 2.0) return 0.0;
    // sum over k >= 1 of f(2 k x_max - x) + f(2 k x_max + x) with f replaced
    // by its tail series: each power collapses to a pair of Hurwitz zetas
    double p = 2.0 * x_max_;
    double frac = x / p;
    double s = 0.0, fact = 1.0, prev = 1e300;
    for (int k = 1; k <= 12; ++k) {
        fact *= k;
        double sk = std::sin(0.5 * kPi * k * alpha_);
        if (std::abs(sk) < 1e-12) continue;
        double beta = k * alpha_ + 1.0;
        double coeff = std::tgamma(k * alpha_ + 1.0) / fact * sk / kPi;
        double term = coeff * std::pow(p, -beta) *
                      (hurwitz_zeta(beta, 1.0 - frac) + hurwitz_zeta(beta, 1.0 + frac));
        if (std::abs(term) > prev) break;
        s += (k % 2 ? 1.0 : -1.0) * term;
        prev = std::abs(term);
    }
    return s;
}

double SymStable1D::series_pdf(double x) const {
    // f(x) = (1/pi) sum_k (-1)^{k+1} Gamma(k alpha + 1)/k! sin(k pi alpha/2) x^{-k alpha - 1}
    double s = 0.0, fact = 1.0;
    double prev = 1e300;
    for (int k = 1; k <= 14; ++k) {
        fact *= k;
        double sk = std::sin(0.5 * kPi * k * alpha_);
        if (std::abs(sk) < 1e-12) continue;
        double term = std::tgamma(k * alpha_ + 1.0) / fact * sk * std::pow(x, -k * alpha_ - 1.0);
        if (std::abs(term) > prev) break;  // asymptotic regime: stop at the smallest term
        s += (k % 2 ? 1.0 : -1.0) * term;
        prev = std::abs(term);
    }
    return s / kPi;
}

double SymStable1D::series_tail(double x) const {
    double s = 0.0, fact = 1.0;
    double prev = 1e300;
    for (int k = 1; k <= 14; ++k) {
        fact *= k;
        double sk = std::sin(0.5 * kPi * k * alpha_);
        if (std::abs(sk) < 1e-12) continue;
        double term = std::tgamma(k * alpha_) / fact * sk * std::pow(x, -k * alpha_);
        if (std::abs(term) > prev) break;
        s += (k % 2 ? 1.0 : -1.0) * term;
        prev = std::abs(term);
    }
    return s / kPi;
}

double SymStable1D::pdf(double x) const {
    x = std::abs(x);
    if (x >= kSeriesFrom && alpha_ < 2.0) return series_pdf(x);
    if (x >= x_max_) return alpha_ == 2.0 ? 0.0 : series_pdf(x);
    double u = x / dx_;
    size_t m = static_cast<size_t>(u);
    double f = u - static_cast<double>(m);
    if (m + 1 >= pdf_grid_.size()) return alpha_ == 2.0 ? 0.0 : series_pdf(x);
    return pdf_grid_[m] * (1.0 - f) + pdf_grid_[m + 1] * f;
}

double SymStable1D::cdf(double x) const {
    double ax = std::abs(x);
    double upper_half;
    if (ax >= kSeriesFrom && alpha_ < 2.0) {
        upper_half = series_tail(ax);
    } else if (ax >= x_max_) {
        upper_half = alpha_ == 2.0 ? 0.0 : series_tail(ax);
    } else {
        double u = ax / dx_;
        size_t m = static_cast<size_t>(u);
        double f = u - static_cast<double>(m);
        if (m + 1 >= cdf_grid_.size()) {
            upper_half = alpha_ == 2.0 ? 0.0 : series_tail(ax);
        } else {
            double c = cdf_grid_[m] * (1.0 - f) + cdf_grid_[m + 1] * f;
            upper_half = 1.0 - c;
        }
    }
    return x >= 0 ? 1.0 - upper_half : upper_half;
}

double SymStable1D::interval_prob(double a, double b) const {
    if (b <= a) return 0.0;
    return std::max(0.0, cdf(b) - cdf(a));
}

double SymStable1D::product_ray_value(const std::vector<double>& omega, double u) const {
    double v = 1.0;
    for (double w : omega) v *= pdf(u * w);
    return v;
}

}  // namespace renewalkit::stable
