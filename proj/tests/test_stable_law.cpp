#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "renewalkit/stable1d.hpp"
#include "renewalkit/stable_law.hpp"
#include "renewalkit/util/directions.hpp"
#include "renewalkit/util/rng.hpp"

using namespace renewalkit;
using namespace renewalkit::stable;

namespace {

// closed-form oracles
double gaussian_iso_density(int d, const std::vector<double>& x) {
    // cf exp(-|t|^2) <-> N(0, 2 I)
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return std::exp(-r2 / 4.0) / std::pow(4.0 * M_PI, 0.5 * d);
}

double cauchy_iso_density(int d, double scale, const std::vector<double>& x) {
    // cf exp(-scale * |t|) <-> Gamma((d+1)/2) / pi^{(d+1)/2} * scale / (scale^2 + |x|^2)^{(d+1)/2}
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return std::tgamma(0.5 * (d + 1)) / std::pow(M_PI, 0.5 * (d + 1)) * scale /
           std::pow(scale * scale + r2, 0.5 * (d + 1));
}

SpectralMeasure product_atoms(int d) {
    std::vector<std::pair<std::vector<double>, double>> list;
    for (int i = 0; i < d; ++i)
        for (double s : {1.0, -1.0}) {
            std::vector<double> e(static_cast<size_t>(d), 0.0);
            e[static_cast<size_t>(i)] = s;
            list.push_back({e, 1.0});
        }
    return SpectralMeasure::atoms(list);
}

}  // namespace

TEST_CASE("cf basics: value at zero, modulus bound, conjugation symmetry") {
    StableLaw law = isotropic_law(2, 1.5);
    CHECK(law.cf({0.0, 0.0}) == std::complex<double>(1.0, 0.0));
    Rng rng(7);
    StableLaw skew;
    skew.d = 2;
    skew.alpha = 0.7;
    skew.C = 1.3;
    skew.spectral = SpectralMeasure::atoms({{{1.0, 0.0}, 0.6}, {{0.0, 1.0}, 0.4}});
    for (int i = 0; i < 100; ++i) {
        std::vector<double> t{rng.uniform(-8, 8), rng.uniform(-8, 8)};
        auto v = skew.cf(t);
        CHECK(std::abs(v) <= 1.0 + 1e-12);
        auto vn = skew.cf({-t[0], -t[1]});
        CHECK(std::abs(v - std::conj(vn)) < 1e-12);
    }
}

TEST_CASE("cf: alpha=2 isotropic is the Gaussian exponent") {
    StableLaw law = isotropic_law(3, 2.0, 1.0);  // radial cf exp(-r^2)
    for (double r : {0.3, 1.0, 2.5}) {
        auto v = law.cf({r, 0.0, 0.0});
        CHECK(v.real() == doctest::Approx(std::exp(-r * r)).epsilon(1e-12));
        CHECK(std::abs(v.imag()) < 1e-14);
    }
}

TEST_CASE("cf: alpha=1 isotropic log terms cancel by symmetry") {
    // the closed-form isotropic path must agree with a fine symmetric
    // discretization carrying the alpha=1 log terms explicitly
    StableLaw law = isotropic_law(2, 1.0, 1.0);
    StableLaw discr = law;
    discr.spectral = SpectralMeasure::density([](const std::vector<double>&) { return 1.0; }, 4096);
    for (double r : {0.5, 1.0, 3.0}) {
        auto a = law.cf({r * 0.6, r * 0.8});
        auto b = discr.cf({r * 0.6, r * 0.8});
        CHECK(a.real() == doctest::Approx(std::exp(-r)).epsilon(1e-6));
        CHECK(std::abs(a - b) < 1e-6);
        CHECK(std::abs(b.imag()) < 1e-9);
    }
}

TEST_CASE("alpha=1 with asymmetric spectral measure is rejected") {
    StableLaw law;
    law.d = 2;
    law.alpha = 1.0;
    law.spectral = SpectralMeasure::atoms({{{1.0, 0.0}, 0.7}, {{0.0, 1.0}, 0.3}});
    CHECK_THROWS(law.validate());
}

TEST_CASE("density grid: Gaussian oracle d=2") {
    StableLaw law = isotropic_law(2, 2.0, 1.0);
    DensityGridConfig cfg;
    cfg.extent = 5.0;
    cfg.spacing = 0.25;
    DensityGrid g = density(law, cfg);
    CHECK(std::abs(g.period_mass - 1.0) < 1e-9);
    double max_err = 0.0, min_v = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            std::vector<double> x{-g.extent + i * g.spacing, -g.extent + j * g.spacing};
            double v = g.values[static_cast<size_t>(i) * g.n + j];
            max_err = std::max(max_err, std::abs(v - gaussian_iso_density(2, x)));
            min_v = std::min(min_v, v);
        }
    CHECK(max_err < 1e-6);
    CHECK(min_v > -1e-9);
}

TEST_CASE("density grid: Cauchy oracle d=2") {
    StableLaw law = isotropic_law(2, 1.0, 2.0);  // radial cf exp(-2r)
    DensityGridConfig cfg;
    cfg.extent = 5.0;
    cfg.spacing = 0.25;
    DensityGrid g = density(law, cfg);
    double max_err = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            std::vector<double> x{-g.extent + i * g.spacing, -g.extent + j * g.spacing};
            double v = g.values[static_cast<size_t>(i) * g.n + j];
            max_err = std::max(max_err, std::abs(v - cauchy_iso_density(2, 2.0, x)));
        }
    CHECK(max_err < 1e-6);
    CHECK(std::abs(g.period_mass - 1.0) < 1e-8);
    CHECK(max_err < g.error_estimate());  // the reported bar covers the truth
    CHECK(g.error_estimate() < 1e-4);
}

TEST_CASE("scaling self-similarity for strictly stable laws (CF-level scale relation)") {
    double alpha = 1.5, c = 2.0;
    StableLaw law1 = isotropic_law(2, alpha, 1.0);
    StableLaw lawc = isotropic_law(2, alpha, c);
    std::vector<double> omega{0.6, 0.8};
    RayDensity r1(law1, omega, 16.0);
    RayDensity rc(lawc, omega, 16.0);
    double lam = std::pow(c, 1.0 / alpha);  // X_c = lam * X_1
    for (double u = 0.0; u <= 4.0; u += 0.4) {
        double want = r1(u / lam) / (lam * lam);
        CHECK(rc(u) == doctest::Approx(want).epsilon(1e-5));
    }
}

TEST_CASE("ray density agrees with the grid route") {
    StableLaw law;
    law.d = 2;
    law.alpha = 1.4;
    law.C = 1.0;
    law.spectral = SpectralMeasure::atoms(
        {{{1.0, 0.0}, 0.25}, {{-1.0, 0.0}, 0.25}, {{0.6, 0.8}, 0.25}, {{-0.6, -0.8}, 0.25}});
    DensityGridConfig cfg;
    cfg.extent = 4.0;
    cfg.spacing = 0.05;
    cfg.alias_tol = 1e-5;  // the cross-check tolerance is 1e-3
    DensityGrid g = density(law, cfg);
    std::vector<double> omega{0.36, 0.932951951} /* not axis-aligned */;
    double n = norm2(omega);
    for (auto& c : omega) c /= n;
    RayDensity ray(law, omega, 16.0);
    for (double u : {0.5, 1.0, 2.0, 3.5}) {
        std::vector<double> x{u * omega[0], u * omega[1]};
        CHECK(ray(u) == doctest::Approx(g.value(x)).epsilon(1e-3));
    }
}

TEST_CASE("rho: isotropic laws are direction-free and 1/q-exact") {
    StableLaw law = isotropic_law(2, 1.5, 1.0);
    Rng rng(99);
    double mn = 1e300, mx = -1e300;
    std::vector<double> vals;
    for (int i = 0; i < 16; ++i) {
        double th = rng.uniform(0, 2 * M_PI);
        RhoResult r = rho(law, 1, {std::cos(th), std::sin(th)}, 0.5);
        mn = std::min(mn, r.value);
        mx = std::max(mx, r.value);
        vals.push_back(r.value);
    }
    CHECK(mx - mn < 1e-6);
    RhoResult r1 = rho(law, 1, {1.0, 0.0}, 0.5);
    RhoResult r2 = rho(law, 2, {1.0, 0.0}, 0.5);
    CHECK(r2.value == doctest::Approx(r1.value / 2.0).epsilon(1e-14));
}

TEST_CASE("rho: monotone in delta") {
    StableLaw law = isotropic_law(2, 1.2, 1.0);
    double prev = -1.0;
    for (double delta : {2.0, 1.0, 0.5, 0.25}) {
        RhoResult r = rho(law, 1, {1.0, 0.0}, delta);
        CHECK(r.value >= prev - 1e-12);
        prev = r.value;
    }
}

TEST_CASE("rho: product law divergence boundary (axis rays)") {
    // product of iid symmetric stables: finite rho_0 iff alpha > (d-1)/2
    int d = 2;
    std::vector<double> e1{1.0, 0.0};
    {
        double alpha = 0.4;  // <= 1/2: divergent
        SymStable1D one(alpha);
        StableLaw law;
        law.d = d;
        law.alpha = alpha;
        law.C = 2.0;
        law.spectral = product_atoms(d);
        auto ray = [&](double u) { return one.product_ray_value(e1, u); };
        RhoResult r = rho(law, 1, e1, 0.0, {}, ray);
        CHECK(r.infinite);
    }
    {
        double alpha = 1.5;  // > 1/2: finite
        SymStable1D one(alpha);
        StableLaw law;
        law.d = d;
        law.alpha = alpha;
        law.C = 2.0;
        law.spectral = product_atoms(d);
        auto ray = [&](double u) { return one.product_ray_value(e1, u); };
        RhoResult r = rho(law, 1, e1, 0.0, {}, ray);
        CHECK_FALSE(r.infinite);
        CHECK(r.value > 0.0);
        CHECK(std::isfinite(r.value));
    }
}

TEST_CASE("rho: not applicable when d <= alpha") {
    StableLaw law = isotropic_law(1, 1.5, 1.0);
    CHECK_THROWS_AS(rho(law, 1, {1.0}, 0.5), NotApplicable);
}

TEST_CASE("radial uniform convergence: Gaussian (d=3) and isotropic alpha=1.5 (d=2)") {
    {
        StableLaw law = isotropic_law(3, 2.0, 1.0);  // rho needs d > alpha
        RadialConvergenceReport rep = radial_uniform_convergence_check(law, 1, {1.0, 0.5, 0.25, 0.125}, 4);
        CHECK(rep.status == "ok");
        CHECK(rep.monotone_decreasing);
        CHECK(rep.sup_gap.back() < rep.sup_gap.front());
    }
    {
        StableLaw law = isotropic_law(2, 1.5, 1.0);
        RadialConvergenceReport rep = radial_uniform_convergence_check(law, 1, {1.0, 0.5, 0.25, 0.125}, 8);
        CHECK(rep.status == "ok");
        CHECK(rep.monotone_decreasing);
        CHECK(rep.sup_gap.back() < rep.sup_gap.front());
    }
}

TEST_CASE("radial uniform convergence: degenerate measure flagged") {
    StableLaw law;
    law.d = 2;
    law.alpha = 1.5;
    law.spectral = SpectralMeasure::atoms({{{1.0, 0.0}, 0.5}, {{-1.0, 0.0}, 0.5}});
    RadialConvergenceReport rep = radial_uniform_convergence_check(law, 1, {1.0, 0.5}, 4);
    CHECK(rep.status == "NotApplicable");
}

TEST_CASE("1-d symmetric stable tables: Cauchy closed form") {
    SymStable1D c(1.0);
    for (double x : {0.0, 0.5, 2.0, 10.0, 300.0}) {
        double want = 1.0 / (M_PI * (1.0 + x * x));
        CHECK(c.pdf(x) == doctest::Approx(want).epsilon(1e-8));
    }
    for (double x : {-3.0, 0.0, 1.0, 50.0}) {
        double want = 0.5 + std::atan(x) / M_PI;
        CHECK(c.cdf(x) == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("1-d symmetric stable tables: Gaussian closed form and tail sanity") {
    SymStable1D g(2.0);
    for (double x : {0.0, 1.0, 3.0}) {
        double want = std::exp(-x * x / 4.0) / std::sqrt(4.0 * M_PI);
        CHECK(g.pdf(x) == doctest::Approx(want).epsilon(1e-9));
    }
    SymStable1D s(0.4);
    // tail must follow C_alpha x^{-alpha} with C_alpha = Gamma(alpha) sin(pi alpha/2)/pi
    double c_alpha = std::tgamma(0.4) * std::sin(0.2 * M_PI) / M_PI;
    for (double x : {1000.0, 10000.0}) {
        double ratio = s.tail(x) / (c_alpha * std::pow(x, -0.4));
        CHECK(ratio == doctest::Approx(1.0).epsilon(0.1));
    }
    // cdf is a proper distribution function
    CHECK(s.cdf(-1e9) < 1e-3);
    CHECK(s.cdf(1e9) > 1.0 - 1e-3);
    CHECK(s.interval_prob(-2.0, 2.0) + 2.0 * s.tail(2.0) == doctest::Approx(1.0).epsilon(1e-9));
}
