#include "renewalkit/stable_law.hpp"

#include "renewalkit/util/directions.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <numeric>
#include <sstream>

namespace renewalkit::stable {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sphere_area(int d) {
    return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

std::complex<double> f_alpha(double theta, double alpha) {
    if (theta == 0.0) return {0.0, 0.0};
    double a = std::abs(theta);
    double mag = std::pow(a, alpha);
    if (alpha == 2.0) return {mag, 0.0};
    double sgn = theta > 0 ? 1.0 : -1.0;
    if (alpha == 1.0) return {mag, mag * (2.0 / kPi) * sgn * std::log(a)};
    return {mag, -mag * std::tan(0.5 * kPi * alpha) * sgn};
}

// Linear solve for tiny dense systems (gaussian_density).
std::vector<double> solve_small(std::vector<double> a, std::vector<double> b, int n) {
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[static_cast<size_t>(r) * n + c]) > std::abs(a[static_cast<size_t>(piv) * n + c])) piv = r;
        for (int j = 0; j < n; ++j) std::swap(a[static_cast<size_t>(c) * n + j], a[static_cast<size_t>(piv) * n + j]);
        std::swap(b[static_cast<size_t>(c)], b[static_cast<size_t>(piv)]);
        double p = a[static_cast<size_t>(c) * n + c];
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = a[static_cast<size_t>(r) * n + c] / p;
            for (int j = c; j < n; ++j) a[static_cast<size_t>(r) * n + j] -= f * a[static_cast<size_t>(c) * n + j];
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(c)];
        }
    }
    for (int c = 0; c < n; ++c) b[static_cast<size_t>(c)] /= a[static_cast<size_t>(c) * n + c];
    return b;
}

double det_small(std::vector<double> a, int n) {
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[static_cast<size_t>(r) * n + c]) > std::abs(a[static_cast<size_t>(piv) * n + c])) piv = r;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(a[static_cast<size_t>(c) * n + j], a[static_cast<size_t>(piv) * n + j]);
            det = -det;
        }
        double p = a[static_cast<size_t>(c) * n + c];
        if (p == 0.0) return 0.0;
        det *= p;
        for (int r = c + 1; r < n; ++r) {
            double f = a[static_cast<size_t>(r) * n + c] / p;
            for (int j = c; j < n; ++j) a[static_cast<size_t>(r) * n + j] -= f * a[static_cast<size_t>(c) * n + j];
        }
    }
    return det;
}

}  // namespace

SpectralMeasure SpectralMeasure::isotropic() { return {}; }

SpectralMeasure SpectralMeasure::atoms(std::vector<std::pair<std::vector<double>, double>> list) {
    SpectralMeasure m;
    m.kind_ = Kind::Atoms;
    double total = 0.0;
    for (auto& [dir, w] : list) {
        if (w <= 0) throw std::invalid_argument("SpectralMeasure: nonpositive atom weight");
        double n = norm2(dir);
        if (std::abs(n - 1.0) > 1e-12) throw std::invalid_argument("SpectralMeasure: atom direction not unit");
        total += w;
    }
    for (auto& [dir, w] : list) w /= total;
    m.atoms_ = std::move(list);
    return m;
}

SpectralMeasure SpectralMeasure::density(std::function<double(const std::vector<double>&)> f, int nodes) {
    SpectralMeasure m;
    m.kind_ = Kind::Density;
    m.density_ = std::move(f);
    m.nodes_ = nodes;
    return m;
}

std::vector<std::pair<std::vector<double>, double>> SpectralMeasure::quadrature(int d) const {
    if (kind_ == Kind::Atoms) return atoms_;
    std::vector<std::pair<std::vector<double>, double>> out;
    if (d == 1) {
        out.push_back({{1.0}, 0.5});
        out.push_back({{-1.0}, 0.5});
    } else if (d == 2) {
        int n = nodes_;
        for (int i = 0; i < n; ++i) {
            double th = 2.0 * kPi * (i + 0.5) / n;
            out.push_back({{std::cos(th), std::sin(th)}, 1.0 / n});
        }
    } else if (d == 3) {
        int nz = std::max(8, nodes_ / 16);
        int na = std::max(16, nodes_ / nz);
        GaussRule gr = gauss_legendre(nz);
        for (int i = 0; i < nz; ++i) {
            double z = gr.nodes[static_cast<size_t>(i)];
            double wz = gr.weights[static_cast<size_t>(i)] / 2.0;  // uniform z on [-1,1]
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            for (int j = 0; j < na; ++j) {
                double th = 2.0 * kPi * (j + 0.5) / na;
                out.push_back({{r * std::cos(th), r * std::sin(th), z}, wz / na});
            }
        }
    } else {
        auto dirs = direction_set(d, std::max(nodes_, 256));
        for (auto& v : dirs) out.push_back({v, 1.0 / static_cast<double>(dirs.size())});
    }
    if (kind_ == Kind::Density) {
        double total = 0.0;
        for (auto& [dir, w] : out) {
            w *= density_(dir);
            total += w;
        }
        if (total <= 0) throw std::invalid_argument("SpectralMeasure: density integrates to zero");
        for (auto& [dir, w] : out) w /= total;
    }
    return out;
}

double isotropic_angular_moment(int d, double alpha) {
    return std::tgamma(0.5 * (alpha + 1.0)) * std::tgamma(0.5 * d) /
           (std::sqrt(kPi) * std::tgamma(0.5 * (alpha + d)));
}

StableLaw isotropic_law(int d, double alpha, double C) {
    StableLaw law;
    law.d = d;
    law.alpha = alpha;
    law.C = C / isotropic_angular_moment(d, alpha);
    law.validate();
    return law;
}

void StableLaw::validate() const {
    if (alpha <= 0.0 || alpha > 2.0) throw std::invalid_argument("StableLaw: alpha outside (0, 2]");
    if (C <= 0.0) throw std::invalid_argument("StableLaw: scale must be positive");
    if (d < 1) throw std::invalid_argument("StableLaw: dimension must be >= 1");
    if (alpha == 1.0 && spectral.kind() != SpectralMeasure::Kind::Isotropic) {
        std::vector<double> mean(static_cast<size_t>(d), 0.0);
        for (const auto& [dir, w] : spectral.quadrature(d))
            for (int i = 0; i < d; ++i) mean[static_cast<size_t>(i)] += w * dir[static_cast<size_t>(i)];
        if (norm2(mean) > 1e-9)
            throw std::invalid_argument("StableLaw: alpha = 1 requires a mean-zero spectral measure");
    }
}

bool StableLaw::is_degenerate() const {
    if (spectral.kind() == SpectralMeasure::Kind::Isotropic) return false;
    auto quad = spectral.quadrature(d);
    // rank of the direction set
    std::vector<std::vector<double>> rows;
    for (const auto& [dir, w] : quad) {
        (void)w;
        rows.push_back(dir);
    }
    int rank = 0;
    for (int c = 0; c < d && rank < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        double best = 1e-9;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (std::abs(rows[static_cast<size_t>(r)][static_cast<size_t>(c)]) > best) {
                best = std::abs(rows[static_cast<size_t>(r)][static_cast<size_t>(c)]);
                piv = r;
            }
        if (piv < 0) continue;
        std::swap(rows[static_cast<size_t>(piv)], rows[static_cast<size_t>(rank)]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank) continue;
            double f = rows[static_cast<size_t>(r)][static_cast<size_t>(c)] / rows[static_cast<size_t>(rank)][static_cast<size_t>(c)];
            for (int cc = 0; cc < d; ++cc) rows[static_cast<size_t>(r)][static_cast<size_t>(cc)] -= f * rows[static_cast<size_t>(rank)][static_cast<size_t>(cc)];
        }
        ++rank;
    }
    return rank < d;
}

std::complex<double> StableLaw::cf(const std::vector<double>& t) const {
    double r = norm2(t);
    if (r == 0.0) return {1.0, 0.0};
    std::complex<double> e;
    if (spectral.kind() == SpectralMeasure::Kind::Isotropic) {
        // the odd imaginary part cancels by antipodal symmetry (including the
        // alpha = 1 logarithmic term)
        e = {isotropic_angular_moment(d, alpha) * std::pow(r, alpha), 0.0};
    } else {
        for (const auto& [dir, w] : spectral.quadrature(d)) e += w * f_alpha(dot(dir, t), alpha);
    }
    std::complex<double> ex = -C * e;
    if (alpha == 1.0 && !tau.empty()) ex += std::complex<double>(0.0, dot(tau, t));
    return std::exp(ex);
}

std::vector<double> StableLaw::gaussian_covariance() const {
    if (alpha != 2.0) throw NotApplicable("gaussian_covariance: alpha != 2");
    std::vector<double> sigma(static_cast<size_t>(d) * static_cast<size_t>(d), 0.0);
    if (spectral.kind() == SpectralMeasure::Kind::Isotropic) {
        for (int i = 0; i < d; ++i) sigma[static_cast<size_t>(i) * d + i] = 2.0 * C / d;
        return sigma;
    }
    for (const auto& [dir, w] : spectral.quadrature(d))
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) sigma[static_cast<size_t>(i) * d + j] += 2.0 * C * w * dir[static_cast<size_t>(i)] * dir[static_cast<size_t>(j)];
    return sigma;
}

double StableLaw::gaussian_density(const std::vector<double>& x) const {
    std::vector<double> sigma = gaussian_covariance();
    double dt = det_small(sigma, d);
    std::vector<double> y = solve_small(sigma, x, d);
    double quad = 0.0;
    for (int i = 0; i < d; ++i) quad += x[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
    return std::exp(-0.5 * quad) / std::pow(2.0 * kPi, 0.5 * d) / std::sqrt(dt);
}

namespace {

struct FreqDomain {
    double radius = 0.0;       // |cf| < tail_eps outside
    double scale = 0.0;        // spatial scale of the law
    double g_min = 0.0, g_mean = 0.0;
};

FreqDomain frequency_domain(const StableLaw& law, double tail_eps) {
    FreqDomain fd;
    auto probes = direction_set(law.d, 48);
    double gmin = 1e300, gsum = 0.0;
    if (law.spectral.kind() == SpectralMeasure::Kind::Isotropic) {
        gmin = isotropic_angular_moment(law.d, law.alpha);
        gsum = gmin * static_cast<double>(probes.size());
    } else {
        auto quad = law.spectral.quadrature(law.d);
        for (const auto& w : probes) {
            double g = 0.0;
            for (const auto& [dir, wt] : quad) g += wt * std::pow(std::abs(dot(dir, w)), law.alpha);
            gmin = std::min(gmin, g);
            gsum += g;
        }
    }
    fd.g_min = gmin;
    fd.g_mean = gsum / static_cast<double>(probes.size());
    if (gmin <= 0) throw NotApplicable("frequency_domain: spectral measure degenerate along a probe direction");
    fd.radius = std::pow(std::log(1.0 / tail_eps) / (law.C * gmin), 1.0 / law.alpha);
    fd.scale = std::pow(law.C * fd.g_mean, 1.0 / law.alpha);
    return fd;
}

}  // namespace

double DensityGrid::value(const std::vector<double>& x) const {
    std::vector<int> base(static_cast<size_t>(d));
    std::vector<double> frac(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        double u = (x[static_cast<size_t>(i)] + extent) / spacing;
        int b = static_cast<int>(std::floor(u));
        if (b < 0 || b >= n - 1) {
            if (u < -0.5 || u > n - 0.5) throw std::out_of_range("DensityGrid::value: point outside grid");
            b = std::clamp(b, 0, n - 2);
        }
        base[static_cast<size_t>(i)] = b;
        frac[static_cast<size_t>(i)] = u - b;
    }
    double acc = 0.0;
    int corners = 1 << d;
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        size_t idx = 0;
        for (int i = 0; i < d; ++i) {
            int bit = (c >> i) & 1;
            w *= bit ? frac[static_cast<size_t>(i)] : 1.0 - frac[static_cast<size_t>(i)];
            idx = idx * static_cast<size_t>(n) + static_cast<size_t>(base[static_cast<size_t>(i)] + bit);
        }
        acc += w * values[idx];
    }
    return acc;
}

std::string DensityGrid::to_csv() const {
    std::ostringstream os;
    for (int i = 0; i < d; ++i) os << "x" << i + 1 << ",";
    os << "value\n";
    std::vector<int> idx(static_cast<size_t>(d), 0);
    for (size_t flat = 0; flat < values.size(); ++flat) {
        size_t rem = flat;
        for (int i = d - 1; i >= 0; --i) {
            idx[static_cast<size_t>(i)] = static_cast<int>(rem % static_cast<size_t>(n));
            rem /= static_cast<size_t>(n);
        }
        char buf[64];
        for (int i = 0; i < d; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,", -extent + idx[static_cast<size_t>(i)] * spacing);
            os << buf;
        }
        std::snprintf(buf, sizeof buf, "%.17g\n", values[flat]);
        os << buf;
    }
    return os.str();
}

std::vector<unsigned char> DensityGrid::to_binary() const {
    // "RKGRID1\n", int32 d, int32 n, float64 spacing, float64 extent, values (row-major, little-endian)
    std::vector<unsigned char> out;
    const char magic[8] = {'R', 'K', 'G', 'R', 'I', 'D', '1', '\n'};
    out.insert(out.end(), magic, magic + 8);
    auto push = [&out](const void* p, size_t nbytes) {
        const auto* b = static_cast<const unsigned char*>(p);
        out.insert(out.end(), b, b + nbytes);
    };
    int32_t dd = d, nn = n;
    push(&dd, 4);
    push(&nn, 4);
    push(&spacing, 8);
    push(&extent, 8);
    push(values.data(), values.size() * 8);
    return out;
}

DensityGrid density(const StableLaw& law, const DensityGridConfig& cfg) {
    law.validate();
    if (law.is_degenerate()) throw NotApplicable("density: degenerate spectral measure");
    FreqDomain fd = frequency_domain(law, cfg.tail_eps);
    int d = law.d;
    double period = std::max(4.0 * cfg.extent, 2.0 * cfg.extent + 12.0 * fd.scale);

    DensityGrid grid;
    for (int attempt = 0; attempt <= cfg.max_period_retries; ++attempt) {
        double dt = 2.0 * kPi / period;
        long n_l = static_cast<long>(std::ceil(std::max(2.0 * fd.radius / dt, period / cfg.spacing)));
        n_l = ((n_l + 3) / 4) * 4;
        double total = std::pow(static_cast<double>(n_l), d);
        if (total > static_cast<double>(cfg.max_nodes))
            throw QuadratureBudgetExceeded("density: node budget exceeded (" + std::to_string(total) + ")");
        int n = static_cast<int>(n_l);
        double dx = period / n;

        size_t nd = 1;
        for (int i = 0; i < d; ++i) nd *= static_cast<size_t>(n);
        std::vector<std::complex<double>> buf(nd);
        std::vector<double> tcoord(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) tcoord[static_cast<size_t>(k)] = (k - n / 2) * dt;
        {
            std::vector<int> idx(static_cast<size_t>(d), 0);
            std::vector<double> t(static_cast<size_t>(d));
            for (size_t flat = 0; flat < nd; ++flat) {
                size_t rem = flat;
                int parity = 0;
                for (int i = d - 1; i >= 0; --i) {
                    int k = static_cast<int>(rem % static_cast<size_t>(n));
                    rem /= static_cast<size_t>(n);
                    idx[static_cast<size_t>(i)] = k;
                    parity += k;
                    t[static_cast<size_t>(i)] = tcoord[static_cast<size_t>(k)];
                }
                std::complex<double> v = law.cf(t);
                buf[flat] = (parity & 1) ? -v : v;
            }
        }
        {
            std::vector<int> dims(static_cast<size_t>(d), n);
            fftw_plan plan = fftw_plan_dft(d, dims.data(), reinterpret_cast<fftw_complex*>(buf.data()),
                                           reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD, FFTW_ESTIMATE);
            fftw_execute(plan);
            fftw_destroy_plan(plan);
        }
        double amp = std::pow(dt / (2.0 * kPi), d);

        int n_half = static_cast<int>(std::ceil(cfg.extent / dx));
        if (2 * n_half + 1 > n) n_half = (n - 1) / 2;
        int n_out = 2 * n_half + 1;

        grid.d = d;
        grid.n = n_out;
        grid.spacing = dx;
        grid.extent = n_half * dx;
        grid.period = period;
        grid.values.assign(static_cast<size_t>(std::pow(n_out, d)), 0.0);

        double period_mass = 0.0;
        double face_max = 0.0, edge_max = 0.0;
        {
            std::vector<int> idx(static_cast<size_t>(d), 0);
            for (size_t flat = 0; flat < nd; ++flat) {
                size_t rem = flat;
                int parity = 0;
                int boundary_dims = 0;
                bool near_center_otherwise = true;
                bool inside = true;
                size_t out_idx = 0;
                for (int i = d - 1; i >= 0; --i) {
                    int m = static_cast<int>(rem % static_cast<size_t>(n));
                    rem /= static_cast<size_t>(n);
                    idx[static_cast<size_t>(i)] = m;
                    parity += m;
                    if (m == 0 || m == n - 1) ++boundary_dims;
                }
                for (int i = 0; i < d; ++i) {
                    int off = idx[static_cast<size_t>(i)] - n / 2;
                    int m = idx[static_cast<size_t>(i)];
                    if (m != 0 && m != n - 1 && std::abs(off) > n_half + 1) near_center_otherwise = false;
                    if (off < -n_half || off > n_half) inside = false;
                    else out_idx = out_idx * static_cast<size_t>(n_out) + static_cast<size_t>(off + n_half);
                }
                double v = amp * ((parity & 1) ? -buf[flat].real() : buf[flat].real());
                period_mass += v;
                if (boundary_dims > 0) {
                    // the dominant periodization images of a point in the output
                    // box are the 2d face neighbors; corner images sit farther out
                    if (boundary_dims == 1 && near_center_otherwise) face_max = std::max(face_max, std::abs(v));
                    else edge_max = std::max(edge_max, std::abs(v));
                }
                if (inside) grid.values[out_idx] = v;
            }
        }
        grid.period_mass = period_mass * std::pow(dx, d);
        grid.alias_error = 2.0 * d * face_max + (std::pow(3.0, d) - 1.0 - 2.0 * d) * edge_max;

        // truncation estimate: shell integral of |cf| beyond the cutoff radius
        double surf = sphere_area(d);
        auto tail_f = [&](double r) { return std::pow(r, d - 1) * std::exp(-law.C * fd.g_min * std::pow(r, law.alpha)); };
        grid.truncation_error =
            std::pow(2.0 * kPi, -d) * surf * adaptive_simpson(tail_f, fd.radius, 6.0 * fd.radius, 1e-18, 1e-6).value;

        if (grid.alias_error <= cfg.alias_tol || attempt == cfg.max_period_retries) break;
        // heavy tails decay like r^{-d-alpha}: jump the period where the
        // measured alias level lands under the target
        double jump = std::pow(grid.alias_error / cfg.alias_tol, 1.0 / (d + law.alpha)) * 1.2;
        period *= std::clamp(jump, 1.4, 16.0);
    }
    return grid;
}

RayDensity::RayDensity(const StableLaw& law, std::vector<double> omega, double u_max, double tol)
    : u_max_(u_max), d_(law.d) {
    law.validate();
    if (law.is_degenerate()) throw NotApplicable("RayDensity: degenerate spectral measure");
    double n = norm2(omega);
    for (auto& c : omega) c /= n;
    FreqDomain fd = frequency_domain(law, 1e-12);
    double r_cut = fd.radius;
    dlam_ = kPi / (1.06 * u_max);
    int half = static_cast<int>(std::ceil(r_cut / dlam_));
    auto frame = orthonormal_frame(omega);

    // transverse spacing: the hyperplane-integral trapezoid aliases at spatial
    // distance 2*pi/dtau, pushed beyond the heavy-tail noise floor
    double p_perp = std::max(60.0 * fd.scale, 32.0);
    double dtau = 2.0 * kPi / p_perp;
    (void)tol;

    double tau_nodes = d_ == 1 ? 1.0 : 2.0 * r_cut / dtau;
    if (d_ == 3) tau_nodes *= 64.0;
    if ((2.0 * half + 1.0) * tau_nodes > 6e8)
        throw QuadratureBudgetExceeded("RayDensity: slice quadrature too large (alpha likely small); use a product-form ray");

    lambdas_.resize(static_cast<size_t>(2 * half + 1));
    h_.resize(lambdas_.size());
    std::vector<double> t(static_cast<size_t>(d_));
    for (int j = -half; j <= half; ++j) {
        double lam = j * dlam_;
        lambdas_[static_cast<size_t>(j + half)] = lam;
        std::complex<double> acc{0.0, 0.0};
        if (d_ == 1) {
            for (int i = 0; i < d_; ++i) t[static_cast<size_t>(i)] = lam * omega[static_cast<size_t>(i)];
            acc = law.cf(t);
        } else if (d_ == 2) {
            int m = static_cast<int>(std::ceil(r_cut / dtau));
            for (int k = -m; k <= m; ++k) {
                double tau = k * dtau;
                for (int i = 0; i < d_; ++i)
                    t[static_cast<size_t>(i)] =
                        lam * omega[static_cast<size_t>(i)] + tau * frame[1][static_cast<size_t>(i)];
                acc += law.cf(t);
            }
            acc *= dtau;
        } else {
            // polar rule in the transverse plane: trapezoid in angle, equispaced radius
            int m = static_cast<int>(std::ceil(r_cut / dtau));
            int n_ang = 64;
            for (int k = 1; k <= m; ++k) {
                double r = k * dtau;
                std::complex<double> ring{0.0, 0.0};
                for (int a = 0; a < n_ang; ++a) {
                    double th = 2.0 * kPi * (a + 0.5) / n_ang;
                    for (int i = 0; i < d_; ++i)
                        t[static_cast<size_t>(i)] = lam * omega[static_cast<size_t>(i)] +
                                                    r * std::cos(th) * frame[1][static_cast<size_t>(i)] +
                                                    r * std::sin(th) * frame[2][static_cast<size_t>(i)];
                    ring += law.cf(t);
                }
                acc += ring * (r * dtau * 2.0 * kPi / n_ang);
            }
        }
        h_[static_cast<size_t>(j + half)] = acc;
    }
}

double RayDensity::operator()(double u) const {
    std::complex<double> acc{0.0, 0.0};
    for (size_t j = 0; j < lambdas_.size(); ++j) acc += h_[j] * std::exp(std::complex<double>(0.0, -u * lambdas_[j]));
    double v = (acc * dlam_).real() * std::pow(2.0 * kPi, -d_);
    return v;
}

RhoResult rho(const StableLaw& law, long q, const std::vector<double>& omega, double delta, const RhoConfig& cfg,
              const std::function<double(double)>& ray_override) {
    law.validate();
    if (law.d <= law.alpha) throw NotApplicable("rho: requires d > alpha");
    if (law.is_degenerate()) throw NotApplicable("rho: degenerate spectral measure");
    if (q < 1) throw std::invalid_argument("rho: q must be >= 1");
    double d = law.d, alpha = law.alpha;
    double power = d - alpha;  // substitution u = v^{1/(d-alpha)} flattens the origin singularity

    RhoResult res;
    if (delta > 0) {
        std::function<double(double)> ray = ray_override;
        std::shared_ptr<RayDensity> rd;
        if (!ray) {
            rd = std::make_shared<RayDensity>(law, omega, std::max(4.0 / delta, 8.0));
            ray = [rd](double u) { return (*rd)(u); };
        }
        auto sub = [&](double v) { return ray(std::pow(v, 1.0 / power)); };
        AdaptiveResult a = adaptive_simpson(sub, 0.0, std::pow(1.0 / delta, power), cfg.abs_tol, 1e-9);
        res.value = alpha / static_cast<double>(q) / power * a.value;
        res.error = alpha / static_cast<double>(q) / power * a.error;
        return res;
    }

    // delta = 0: integrate to u_cap with geometric panels, then decide
    // integrability from the fitted decay of psi along the ray
    std::function<double(double)> ray = ray_override;
    std::shared_ptr<RayDensity> rd;
    if (!ray) {
        rd = std::make_shared<RayDensity>(law, omega, 2.0 * cfg.u_cap);
        ray = [rd](double u) { return (*rd)(u); };
    }
    auto sub = [&](double v) { return ray(std::pow(v, 1.0 / power)); };
    AdaptiveResult head = adaptive_simpson(sub, 0.0, 1.0, cfg.abs_tol, 1e-9);
    double value = head.value / power;
    double err = head.error / power;
    auto integrand = [&](double u) { return ray(u) * std::pow(u, d - alpha - 1.0); };
    double lo = 1.0;
    while (lo < cfg.u_cap) {
        double hi = std::min(2.0 * lo, cfg.u_cap);
        AdaptiveResult p = adaptive_simpson(integrand, lo, hi, cfg.abs_tol, 1e-8);
        value += p.value;
        err += p.error;
        lo = hi;
    }
    // local decay exponent of psi(u omega) over the last octave
    std::vector<double> lx, ly;
    for (int i = 0; i <= 8; ++i) {
        double u = cfg.u_cap * std::pow(2.0, -1.0 + i / 8.0);
        double g = ray(u);
        if (g > 1e-300) {
            lx.push_back(std::log(u));
            ly.push_back(std::log(g));
        }
    }
    double beta = 1e9;
    if (lx.size() >= 4) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        double nn = static_cast<double>(lx.size());
        beta = -(nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    }
    res.fitted_ray_exponent = beta;
    if (d - alpha - beta >= -cfg.divergence_margin) {
        res.infinite = true;
        res.value = std::numeric_limits<double>::infinity();
        return res;
    }
    double g_cap = ray(cfg.u_cap);
    double tail = g_cap * std::pow(cfg.u_cap, d - alpha) / (beta - (d - alpha));
    res.tail_estimate = alpha / static_cast<double>(q) * tail;
    res.value = alpha / static_cast<double>(q) * value + res.tail_estimate;
    res.error = alpha / static_cast<double>(q) * err + 0.5 * res.tail_estimate;
    return res;
}

RadialConvergenceReport radial_uniform_convergence_check(const StableLaw& law, long q,
                                                         const std::vector<double>& deltas, int omega_count,
                                                         uint64_t seed) {
    RadialConvergenceReport rep;
    rep.deltas = deltas;
    std::sort(rep.deltas.begin(), rep.deltas.end(), std::greater<>());
    if (law.is_degenerate() || law.d <= law.alpha) {
        rep.status = "NotApplicable";
        return rep;
    }
    double delta_proxy = rep.deltas.back() / 4.0;
    auto omegas = direction_set(law.d, omega_count, seed);
    std::vector<double> gaps(rep.deltas.size(), 0.0);
    try {
        for (const auto& w : omegas) {
            double u_hi = 1.0 / delta_proxy;
            RayDensity ray(law, w, 4.0 * u_hi);
            double power = law.d - law.alpha;
            auto partial = [&](double delta) {
                auto sub = [&](double v) { return ray(std::pow(v, 1.0 / power)); };
                AdaptiveResult a = adaptive_simpson(sub, 0.0, std::pow(1.0 / delta, power), 1e-11, 1e-9);
                return law.alpha / static_cast<double>(q) / power * a.value;
            };
            double proxy = partial(delta_proxy);
            for (size_t i = 0; i < rep.deltas.size(); ++i)
                gaps[i] = std::max(gaps[i], std::abs(proxy - partial(rep.deltas[i])));
        }
    } catch (const NotApplicable&) {
        rep.status = "NotApplicable";
        return rep;
    }
    rep.sup_gap = gaps;
    rep.monotone_decreasing = true;
    for (size_t i = 0; i + 1 < gaps.size(); ++i)
        if (gaps[i + 1] > gaps[i] * (1.0 + 1e-9) + 1e-14) rep.monotone_decreasing = false;
    rep.status = "ok";
    return rep;
}

}  // namespace renewalkit::stable
