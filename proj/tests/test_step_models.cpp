#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "renewalkit/step_models.hpp"
#include "renewalkit/util/directions.hpp"
#include "renewalkit/util/quad.hpp"

#include <algorithm>
#include <map>

using namespace renewalkit;
using namespace renewalkit::models;

TEST_CASE("norming functions: inverse, a_0 convention, slope band") {
    NormingFunction a = NormingFunction::power_over_log(1.0, 1.0, 3.0);  // s / ln s
    CHECK(a.a_n(0) == 1.0);
    for (double t : {1.0, 10.0, 1234.5}) {
        double s = a.inverse(t);
        CHECK(a(s) == doctest::Approx(t).epsilon(1e-11));
    }
    // A'(s) s / A(s) stays within a fixed band around alpha on the test range
    auto sc = a.slope_check(1e2, 1e6, 64, 0.1 * 1.0, 10.0 * 1.0);
    CHECK(sc.ok);
    NormingFunction b = NormingFunction::square_over_log_sq(1.0, 8.0);
    auto sb = b.slope_check(1e2, 1e6, 64, 0.1 * 2.0, 10.0 * 2.0);
    CHECK(sb.ok);
}

TEST_CASE("sample_path: empty path and seed determinism") {
    ProductStable model(2, 1.5);
    Path p0 = sample_path(model, 0, 42);
    CHECK(p0.steps.empty());
    CHECK(p0.sums.size() == 2);
    CHECK(p0.sums[0] == 0.0);

    Path a = sample_path(model, 64, 42, 7);
    Path b = sample_path(model, 64, 42, 7);
    Path c = sample_path(model, 64, 42, 8);
    CHECK(a.steps == b.steps);
    CHECK(a.steps != c.steps);
    // prefix sums are consistent
    for (int k = 0; k < 2; ++k)
        CHECK(a.sums[64 * 2 + k] ==
              doctest::Approx(a.sums[63 * 2 + k] + a.steps[63 * 2 + k]).epsilon(1e-12));
}

TEST_CASE("williamson: pmf shape, normalization, and exact tail") {
    WilliamsonModified model(2, BkSpec{BkSpec::Kind::Log});
    double c = model.normalizing_constant();
    CHECK(model.factor_pmf(1) == 0.0);
    CHECK(model.factor_pmf(5) == doctest::Approx(c * std::pow(5.0, -2.0) * std::log(5.0)));
    CHECK(model.factor_pmf(8) == doctest::Approx(c * std::pow(8.0, -1.0) / std::log(8.0)));
    CHECK(model.factor_pmf(-8) == model.factor_pmf(8));
    // total mass: 2 * sum over k of factor_pmf = 1, via the exact tail at 0
    CHECK(2.0 * model.factor_tail(1.0) == doctest::Approx(1.0).epsilon(1e-9));
    // suffix consistency: P(xi > k-1) - P(xi > k) = pmf(k)
    for (long long k : {2, 3, 16, 100, 1000}) {
        double diff = model.factor_tail(static_cast<double>(k - 1)) - model.factor_tail(static_cast<double>(k));
        CHECK(diff == doctest::Approx(model.factor_pmf(k)).epsilon(1e-10));
    }
}

TEST_CASE("williamson: empirical tail within 3 binomial sigmas of the analytic tail") {
    WilliamsonModified model(2, BkSpec{BkSpec::Kind::Log});
    const long n = 400000;
    Rng rng(1234, 5);
    std::vector<double> x(2);
    std::vector<double> s_checks{10.0, 50.0, 100.0};
    std::vector<long> hits(s_checks.size(), 0);
    for (long i = 0; i < n; ++i) {
        model.sample(rng, x);
        double r = std::sqrt(x[0] * x[0] + x[1] * x[1]);
        for (size_t j = 0; j < s_checks.size(); ++j)
            if (r > s_checks[j]) ++hits[j];
    }
    for (size_t j = 0; j < s_checks.size(); ++j) {
        auto [qlo, qhi] = model.tail_bracket(s_checks[j]);
        double phat = static_cast<double>(hits[j]) / n;
        double sigma = std::sqrt(std::max(phat, 1e-12) * (1 - phat) / n);
        CHECK(phat > qlo - 3 * sigma);
        CHECK(phat < qhi + 3 * sigma);
    }
}

TEST_CASE("williamson: sampler matches the exact factor pmf cellwise") {
    WilliamsonModified model(3, BkSpec{BkSpec::Kind::LogSq});
    const long n = 300000;
    Rng rng(99, 0);
    std::vector<double> x(3);
    std::map<long long, long> counts;
    for (long i = 0; i < n; ++i) {
        model.sample(rng, x);
        ++counts[static_cast<long long>(x[0])];
    }
    for (long long k : {2, 3, 4, 8, -5, 16}) {
        double want = model.factor_pmf(k);
        double got = static_cast<double>(counts[k]) / n;
        double sigma = std::sqrt(want * (1 - want) / n);
        CHECK(std::abs(got - want) < 4 * sigma + 1e-9);
    }
}

TEST_CASE("norming_from_tail: documented families and bounded q*A") {
    WilliamsonModified w2(2, BkSpec{BkSpec::Kind::Log});
    CHECK(w2.norming().family() == NormingFunction::Family::PowerOverLog);
    CHECK(w2.norming().alpha() == doctest::Approx(1.0));
    NormingValidation v2 = norming_from_tail(w2);
    CHECK(v2.ok);

    WilliamsonModified w4(4, BkSpec{BkSpec::Kind::LogSq});
    CHECK(w4.norming().family() == NormingFunction::Family::SquareOverLogSq);

    ProductStable p(2, 1.5);
    CHECK(p.norming().family() == NormingFunction::Family::Power);
    CHECK(p.norming().alpha() == doctest::Approx(1.5));
    CHECK(p.norming().a_n(8) == doctest::Approx(std::pow(8.0, 1.0 / 1.5)).epsilon(1e-10));
    NormingValidation vp = norming_from_tail(p);
    CHECK(vp.ok);
}

TEST_CASE("product stable: Cauchy coordinates pass a Kolmogorov check") {
    ProductStable model(2, 1.0);
    const long n = 200000;
    Rng rng(31, 9);
    std::vector<double> x(2);
    std::vector<double> xs;
    xs.reserve(n);
    for (long i = 0; i < n; ++i) {
        model.sample(rng, x);
        xs.push_back(x[0]);
    }
    std::sort(xs.begin(), xs.end());
    double dmax = 0.0;
    for (long i = 0; i < n; ++i) {
        double cdf = 0.5 + std::atan(xs[static_cast<size_t>(i)]) / M_PI;  // standard Cauchy oracle
        double emp_lo = static_cast<double>(i) / n, emp_hi = static_cast<double>(i + 1) / n;
        dmax = std::max({dmax, std::abs(cdf - emp_lo), std::abs(cdf - emp_hi)});
    }
    CHECK(dmax < 0.01);
}

TEST_CASE("pareto lattice: pmf, sampler lattice support, and tail scaling") {
    ParetoLattice model(2, 1.5);
    CHECK(model.pmf({0, 0}) == doctest::Approx(model.normalizing_constant()));
    CHECK(model.pmf({3, 4}) == doctest::Approx(model.normalizing_constant() * std::pow(5.0, -3.5)));

    Rng rng(7, 3);
    std::vector<double> x(2);
    for (int i = 0; i < 20000; ++i) {
        model.sample(rng, x);
        CHECK(x[0] == std::floor(x[0]));  // integer lattice, always
        CHECK(x[1] == std::floor(x[1]));
    }
    // s^alpha q(s) approaches the tail constant
    double tc = model.tail_constant();
    for (double s : {200.0, 800.0}) {
        CHECK(model.tail(s) * std::pow(s, 1.5) == doctest::Approx(tc).epsilon(0.05));
    }
    // A(s) = [1+o(1)] s^2 / V_X(s) wired through the tail constant
    const NormingFunction& a = model.norming();
    CHECK(a.alpha() == doctest::Approx(1.5));
}

TEST_CASE("pareto lattice: sampler matches pmf in the tail region (4 sigma)") {
    ParetoLattice model(2, 1.5);
    const long n = 2000000;
    Rng rng(555, 1);
    std::vector<double> x(2);
    long far = 0;
    std::map<std::pair<long long, long long>, long> counts;
    for (long i = 0; i < n; ++i) {
        model.sample(rng, x);
        auto key = std::make_pair(static_cast<long long>(x[0]), static_cast<long long>(x[1]));
        if (std::llabs(key.first) > 96 || std::llabs(key.second) > 96) ++far;
        ++counts[key];
    }
    // aggregate tail frequency against the radial suffix estimate
    double want_far = 0.0;
    {
        // P(|x|_inf > 96): bracket via radial tails
        double lo = model.tail(96.0 * std::sqrt(2.0)), hi = model.tail(96.0);
        double got = static_cast<double>(far) / n;
        CHECK(got > lo * 0.8 - 4e-4);
        CHECK(got < hi * 1.2 + 4e-4);
        want_far = got;
    }
    (void)want_far;
    // individual cells, inside and outside the alias window
    for (auto key : {std::make_pair(0LL, 0LL), {1LL, 0LL}, {5LL, -3LL}, {40LL, 40LL}, {120LL, 0LL}, {0LL, 150LL}}) {
        double want = model.pmf({key.first, key.second});
        double got = static_cast<double>(counts[key]) / n;
        double sigma = std::sqrt(want * (1 - want) / n);
        CHECK(std::abs(got - want) < 4 * sigma + 2e-7);
    }
}

TEST_CASE("finite lattice: moments, cf, and the Gaussian limit parameters") {
    // nearest-neighbor-plus-hold walk in the plane
    FiniteLattice model(2,
                        {{{0, 0}, 0.2}, {{1, 0}, 0.2}, {{-1, 0}, 0.2}, {{0, 1}, 0.2}, {{0, -1}, 0.2}},
                        "nn_hold");
    CHECK(model.symmetric());
    auto m = model.mean();
    CHECK(m[0] == doctest::Approx(0.0));
    auto cov = model.covariance();
    CHECK(cov[0] == doctest::Approx(0.4));
    CHECK(cov[3] == doctest::Approx(0.4));
    CHECK(cov[1] == doctest::Approx(0.0));
    CHECK(std::abs(model.cf({0.0, 0.0}) - std::complex<double>(1.0, 0.0)) < 1e-15);
    CHECK(model.cf({M_PI, 0.0}).real() == doctest::Approx(0.2 + 0.2 - 0.2 - 0.2 + 0.2));

    stable::StableLaw limit = model.limit_law();
    auto sigma = limit.gaussian_covariance();
    // covariance of the weak limit S_n / a_n with a_n = sqrt(0.8 n): Cov/0.8
    CHECK(sigma[0] == doctest::Approx(0.5));
    CHECK(sigma[3] == doctest::Approx(0.5));
    CHECK(sigma[1] == doctest::Approx(0.0).epsilon(1e-12));

    // a_n = A^{-1}(n) with A = s^2 / E|X|^2
    CHECK(model.norming().a_n(100) == doctest::Approx(std::sqrt(0.8 * 100)).epsilon(1e-10));
}

TEST_CASE("truncated moments: symmetric exact centering and bounded m-ratio") {
    ParetoLattice model(2, 1.5);
    MomentDiagnostics diag =
        truncated_moment_diagnostics(model, {10.0, 30.0, 100.0, 300.0, 1000.0}, 4, 150000, 2024);
    CHECK(diag.centering_exact_zero);
    CHECK(diag.m_ratio_bounded);  // m_X(s,w) A(s)/s^2 inside a factor-4 band
    for (const auto& row : diag.m_ratio)
        for (double v : row) CHECK(v > 0.0);
}

TEST_CASE("williamson d=3: analytic moment bracket harnesses the MC ratio") {
    WilliamsonModified model(3, BkSpec{BkSpec::Kind::Log});
    // analytic per-coordinate truncated second moment bracket:
    //   V1(s/sqrt(3)) P(|xi|<=s/sqrt(3))^2 <= m_X(s, e_1) <= V1(s)
    auto v1 = [&](double s) {
        double acc = 0.0;
        for (long long k = 2; k <= static_cast<long long>(s); ++k)
            acc += 2.0 * model.factor_pmf(k) * static_cast<double>(k) * static_cast<double>(k);
        return acc;
    };
    MomentDiagnostics diag = truncated_moment_diagnostics(model, {1000.0, 3000.0, 10000.0}, 1, 400000, 77);
    const NormingFunction& a = model.norming();
    for (size_t j = 0; j < diag.s_grid.size(); ++j) {
        double s = diag.s_grid[j];
        double hi = v1(s) * a(s) / (s * s);
        double root3 = std::sqrt(3.0);
        double plo = 1.0 - model.tail(s / root3);
        double lo = v1(s / root3) * plo * plo * a(s) / (s * s);
        double got = diag.m_ratio[0][j];
        CHECK(got < hi * 1.25 + 4 * diag.m_ratio_err[0][j]);
        CHECK(got > lo * 0.75 - 4 * diag.m_ratio_err[0][j]);
    }
}

TEST_CASE("product stable d=2 alpha=1.5: moment band against the 1-d integral oracle") {
    ProductStable model(2, 1.5);
    MomentDiagnostics diag = truncated_moment_diagnostics(model, {10.0, 30.0, 100.0}, 2, 200000, 4242);
    CHECK(diag.centering_exact_zero);
    CHECK(diag.m_ratio_bounded);
    // oracle: per-coordinate truncated second moment from the 1-d stable pdf,
    // V1(s) = 2 int_0^s x^2 f(x) dx, brackets m_X(s, omega)
    const stable::SymStable1D& f = model.factor();
    auto v1 = [&](double s) {
        return 2.0 * adaptive_simpson([&](double x) { return x * x * f.pdf(x); }, 0.0, s, 1e-10, 1e-8).value;
    };
    const NormingFunction& a = model.norming();
    for (size_t j = 0; j < diag.s_grid.size(); ++j) {
        double s = diag.s_grid[j];
        double hi = v1(s) * a(s) / (s * s);
        double root2 = std::sqrt(2.0);
        double plo = 1.0 - 2.0 * f.tail(s / root2);
        double lo = v1(s / root2) * plo * a(s) / (s * s);
        for (size_t w = 0; w < diag.m_ratio.size(); ++w) {
            CHECK(diag.m_ratio[w][j] < hi * 1.1 + 4 * diag.m_ratio_err[w][j]);
            CHECK(diag.m_ratio[w][j] > lo * 0.9 - 4 * diag.m_ratio_err[w][j]);
        }
    }
}

TEST_CASE("tails are monotone and truncation-consistent across families") {
    WilliamsonModified wm(2, BkSpec{BkSpec::Kind::Log});
    ProductStable ps(2, 1.2);
    ParetoLattice pl(2, 1.5);
    for (const StepDistribution* m : {static_cast<const StepDistribution*>(&wm),
                                      static_cast<const StepDistribution*>(&ps),
                                      static_cast<const StepDistribution*>(&pl)}) {
        double prev = 1.1;
        for (double s = 1.0; s < 2e4; s *= 1.7) {
            double q = m->tail(s);
            CHECK(q <= prev + 1e-12);
            CHECK(q >= 0.0);
            prev = q;
        }
    }
}

TEST_CASE("model config round trip") {
    auto w = model_from_json(R"({"family":"williamson","d":2,"b_k":{"kind":"log_sq"}})");
    CHECK(w->dim() == 2);
    CHECK(w->alpha() == doctest::Approx(1.0));
    auto p = model_from_json(R"({"family":"product_stable","d":2,"alpha":1.2})");
    CHECK(p->alpha() == doctest::Approx(1.2));
    auto f = model_from_json(R"({"family":"finite_lattice","d":1,"atoms":[{"point":[-1],"mass":0.5},{"point":[1],"mass":0.5}]})");
    CHECK(f->is_lattice());
    CHECK(f->pmf({1}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(model_from_json(R"({"family":"black_box_sampler"})"), UnknownTail);
}
