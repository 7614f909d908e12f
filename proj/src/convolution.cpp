#include "renewalkit/convolution.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <numeric>

namespace renewalkit::renewal {

namespace {

size_t flat_index(std::span<const long long> x, long radius, int d) {
    size_t idx = 0;
    long side = 2 * radius + 1;
    for (int i = 0; i < d; ++i) {
        long long c = x[static_cast<size_t>(i)] + radius;
        idx = idx * static_cast<size_t>(side) + static_cast<size_t>(c);
    }
    return idx;
}

}  // namespace

double ConvolutionTable::at(std::span<const long long> x) const {
    for (int i = 0; i < d; ++i)
        if (std::llabs(x[static_cast<size_t>(i)]) > radius) return 0.0;
    return mass[flat_index(x, radius, d)];
}

double& ConvolutionTable::at_mut(std::span<const long long> x) { return mass[flat_index(x, radius, d)]; }

std::vector<ConvolutionTable> convolve_exact(const models::StepDistribution& law, int n, long box_radius,
                                             double tol) {
    if (!law.is_lattice()) throw std::invalid_argument("convolve_exact: lattice law required");
    int d = law.dim();
    long side = 2 * box_radius + 1;
    size_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= static_cast<size_t>(side);
    if (cells > 80'000'000) throw BoxTooSmall("convolve_exact: box too large to hold");

    // kernel = the step pmf restricted to the box
    std::vector<std::pair<std::vector<long long>, double>> kernel;
    double kernel_mass = 0.0;
    {
        std::vector<long long> x(static_cast<size_t>(d), -box_radius);
        while (true) {
            double p = law.pmf(x);
            if (p > 0.0) {
                kernel.push_back({x, p});
                kernel_mass += p;
            }
            int i = 0;
            for (; i < d; ++i) {
                if (x[static_cast<size_t>(i)] < box_radius) {
                    ++x[static_cast<size_t>(i)];
                    break;
                }
                x[static_cast<size_t>(i)] = -box_radius;
            }
            if (i == d) break;
        }
    }

    std::vector<ConvolutionTable> out;
    ConvolutionTable cur;
    cur.d = d;
    cur.radius = box_radius;
    cur.mass.assign(cells, 0.0);
    for (const auto& [x, p] : kernel) cur.mass[flat_index(x, box_radius, d)] = p;
    cur.missing = 1.0 - kernel_mass;
    if (cur.missing > tol) throw BoxTooSmall("convolve_exact: step law loses too much mass in the box");
    out.push_back(cur);

    std::vector<long long> y(static_cast<size_t>(d));
    std::vector<long long> z(static_cast<size_t>(d));
    for (int k = 2; k <= n; ++k) {
        ConvolutionTable next;
        next.d = d;
        next.radius = box_radius;
        next.mass.assign(cells, 0.0);
        const ConvolutionTable& prev = out.back();
        for (size_t idx = 0; idx < cells; ++idx) {
            double m = prev.mass[idx];
            if (m == 0.0) continue;
            size_t rem = idx;
            for (int i = d - 1; i >= 0; --i) {
                y[static_cast<size_t>(i)] = static_cast<long long>(rem % static_cast<size_t>(side)) - box_radius;
                rem /= static_cast<size_t>(side);
            }
            for (const auto& [step, p] : kernel) {
                bool inside = true;
                for (int i = 0; i < d; ++i) {
                    z[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] + step[static_cast<size_t>(i)];
                    if (std::llabs(z[static_cast<size_t>(i)]) > box_radius) inside = false;
                }
                if (inside) next.mass[flat_index(z, box_radius, d)] += m * p;
            }
        }
        double total = std::accumulate(next.mass.begin(), next.mass.end(), 0.0);
        next.missing = 1.0 - total;
        if (next.missing > tol)
            throw BoxTooSmall("convolve_exact: certified missing mass " + std::to_string(next.missing) +
                              " exceeds tolerance at step " + std::to_string(k));
        out.push_back(std::move(next));
    }
    return out;
}

TorusConvolver::TorusConvolver(int d, int grid, std::function<double(std::span<const long long>)> pmf,
                               bool assume_symmetric)
    : d_(d), g_(grid) {
    if (!assume_symmetric)
        throw std::invalid_argument("TorusConvolver: only symmetric laws carry a real torus CF");
    size_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= static_cast<size_t>(g_);

    // fold the pmf onto the torus with one layer of images per side; cells are
    // indexed by x mod G with the representative in [-G/2, G/2)
    std::vector<std::complex<double>> buf(cells);
    double mass = 0.0;
    {
        std::vector<long long> x(static_cast<size_t>(d));
        std::vector<long long> xi(static_cast<size_t>(d));
        for (size_t flat = 0; flat < cells; ++flat) {
            size_t rem = flat;
            for (int i = d - 1; i >= 0; --i) {
                long long idx = static_cast<long long>(rem % static_cast<size_t>(g_));
                rem /= static_cast<size_t>(g_);
                x[static_cast<size_t>(i)] = idx < g_ / 2 ? idx : idx - g_;
            }
            double p = 0.0;
            int images = 1;
            for (int i = 0; i < d; ++i) images *= 3;
            for (int im = 0; im < images; ++im) {
                int rem2 = im;
                for (int i = 0; i < d; ++i) {
                    int off = rem2 % 3 - 1;
                    rem2 /= 3;
                    xi[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] + static_cast<long long>(off) * g_;
                }
                p += pmf(xi);
            }
            mass += p;
            buf[flat] = {p, 0.0};
        }
    }
    fold_deficit_ = 1.0 - mass;

    std::vector<int> dims(static_cast<size_t>(d), g_);
    fftw_plan plan = fftw_plan_dft(d, dims.data(), reinterpret_cast<fftw_complex*>(buf.data()),
                                   reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    phi_.resize(cells);
    double max_imag = 0.0;
    for (size_t i = 0; i < cells; ++i) {
        phi_[i] = buf[i].real();
        max_imag = std::max(max_imag, std::abs(buf[i].imag()));
    }
    if (max_imag > 1e-9)
        throw std::invalid_argument("TorusConvolver: law is not symmetric (complex torus CF)");
}

std::vector<double> TorusConvolver::invert(const std::vector<double>& freq) const {
    size_t cells = freq.size();
    std::vector<std::complex<double>> buf(cells);
    for (size_t i = 0; i < cells; ++i) buf[i] = {freq[i], 0.0};
    std::vector<int> dims(static_cast<size_t>(d_), g_);
    fftw_plan plan = fftw_plan_dft(d_, dims.data(), reinterpret_cast<fftw_complex*>(buf.data()),
                                   reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    double scale = 1.0 / static_cast<double>(cells);
    std::vector<double> out(cells);
    for (size_t i = 0; i < cells; ++i) out[i] = buf[i].real() * scale;
    return out;
}

namespace {

double signed_pow(double f, double n) {
    if (f == 0.0) return 0.0;
    double mag = std::pow(std::abs(f), n);
    bool odd = std::fmod(n, 2.0) != 0.0;
    return (f < 0 && odd) ? -mag : mag;
}

}  // namespace

std::vector<double> TorusConvolver::power_table(double n) const {
    std::vector<double> freq(phi_.size());
    for (size_t i = 0; i < phi_.size(); ++i) freq[i] = signed_pow(phi_[i], n);
    return invert(freq);
}

std::vector<double> TorusConvolver::window_table(double n0, double n1) const {
    std::vector<double> freq(phi_.size());
    for (size_t i = 0; i < phi_.size(); ++i) {
        double f = phi_[i];
        double den = 1.0 - f;
        if (std::abs(den) < 1e-13) {
            freq[i] = (n1 - n0) * signed_pow(f, n0);
        } else {
            freq[i] = (signed_pow(f, n0) - signed_pow(f, n1)) / den;
        }
    }
    return invert(freq);
}

double TorusConvolver::lookup(const std::vector<double>& table, std::span<const long long> x) const {
    size_t idx = 0;
    for (int i = 0; i < d_; ++i) {
        long long c = x[static_cast<size_t>(i)] % g_;
        if (c < 0) c += g_;
        idx = idx * static_cast<size_t>(g_) + static_cast<size_t>(c);
    }
    return table[idx];
}

double TorusConvolver::boundary_level(const std::vector<double>& table) const {
    // the far shell of the torus sits at coordinate index G/2
    double mx = 0.0;
    for (size_t flat = 0; flat < table.size(); ++flat) {
        size_t rem = flat;
        bool boundary = false;
        for (int i = d_ - 1; i >= 0; --i) {
            long long c = static_cast<long long>(rem % static_cast<size_t>(g_));
            rem /= static_cast<size_t>(g_);
            if (c == g_ / 2) boundary = true;
        }
        if (boundary) mx = std::max(mx, std::abs(table[flat]));
    }
    return 2.0 * d_ * mx;
}

}  // namespace renewalkit::renewal
