#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "renewalkit/exact_lattice.hpp"
#include "renewalkit/util/rng.hpp"

#include <complex>

using namespace renewalkit;
using namespace renewalkit::lattice;

namespace {

IntMat random_unimodular(Rng& rng, int n) {
    IntMat k = IntMat::identity(n);
    for (int step = 0; step < 6 * n; ++step) {
        int i = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        int j = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        if (i == j) continue;
        Int c = Int(static_cast<long long>(rng.below(5))) - 2;
        if (c == 0) c = 1;
        for (int col = 0; col < n; ++col) k(i, col) += c * k(j, col);
    }
    if (rng.below(2)) k.swap_rows(0, n - 1 == 0 ? 0 : n - 1);
    return k;
}

LatticeLaw uniform_law_1d(std::initializer_list<long long> pts) {
    LatticeLaw law;
    law.dim = 1;
    Rational mass(1, static_cast<long long>(pts.size()));
    for (long long p : pts) law.atoms.push_back({{SymbolicReal(Rational(p))}, mass});
    return law;
}

}  // namespace

TEST_CASE("symbolic real algebra is exact and canonical") {
    SymbolTable tab;
    int s = tab.add("sqrt2", std::sqrt(2.0));
    SymbolicReal a = SymbolicReal(Rational(1, 2)) + SymbolicReal::symbol(s, Rational(3));
    SymbolicReal b = SymbolicReal::symbol(s, Rational(-3));
    SymbolicReal c = a + b;
    CHECK(c.is_rational());
    CHECK(c.rational_part() == Rational(1, 2));
    CHECK(c.irrational_part().empty());  // zero coefficients are dropped
    CHECK(a - a == SymbolicReal(0));
    CHECK((a * Rational(2)).evaluate(tab) == doctest::Approx(1.0 + 6.0 * std::sqrt(2.0)));
}

TEST_CASE("smith normal form: pinned examples") {
    CHECK(smith_normal_form(IntMat::identity(3)).s == IntMat::identity(3));

    IntMat m(2, 2);
    m(0, 0) = 2;
    m(1, 1) = 3;
    SmithResult r = smith_normal_form(m);
    CHECK(r.s(0, 0) == 1);
    CHECK(r.s(1, 1) == 6);
    CHECK(matmul(matmul(r.u, m), r.v) == r.s);

    IntMat m2(2, 2);
    m2(0, 0) = 2;
    m2(0, 1) = 4;
    m2(1, 0) = 6;
    m2(1, 1) = 8;
    SmithResult r2 = smith_normal_form(m2);
    // invariant factors from gcds of minors: d1 = 2, d2 = |det| = 8, so diag(2, 4)
    CHECK(r2.s(0, 0) == 2);
    CHECK(r2.s(1, 1) == 4);
    CHECK(matmul(matmul(r2.u, m2), r2.v) == r2.s);
}

TEST_CASE("smith normal form properties on random matrices") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int rows = 1 + static_cast<int>(rng.below(4));
        int cols = 1 + static_cast<int>(rng.below(4));
        IntMat m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = Int(static_cast<long long>(rng.below(21))) - 10;
        SmithResult r = smith_normal_form(m);
        CHECK(matmul(matmul(r.u, m), r.v) == r.s);
        Int du = det(r.u), dv = det(r.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        int k = std::min(rows, cols);
        for (int i = 0; i + 1 < k; ++i) {
            if (r.s(i + 1, i + 1) == 0) continue;
            REQUIRE(r.s(i, i) != 0);
            CHECK(r.s(i + 1, i + 1) % r.s(i, i) == 0);
        }
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (i != j) CHECK(r.s(i, j) == 0);
    }
}

TEST_CASE("normalize_vector: gcd/lcm folding of rationals") {
    SymbolTable tab;
    SymVec y{SymbolicReal(Rational(1, 2)), SymbolicReal(Rational(1, 3))};
    NormalizeResult r = normalize_vector(y, tab);
    CHECK(r.nu == 2);
    CHECK(r.z[0] == SymbolicReal(0));
    CHECK(r.z[1] == SymbolicReal(Rational(1, 6)));  // gcd(1,1)/lcm(2,3)
    Int dk = det(r.K);
    CHECK((dk == 1 || dk == -1));
}

TEST_CASE("normalize_vector: zero vector is fixed by the identity") {
    SymbolTable tab;
    SymVec y{SymbolicReal(0), SymbolicReal(0), SymbolicReal(0)};
    NormalizeResult r = normalize_vector(y, tab);
    CHECK(r.K == IntMat::identity(3));
    for (const auto& z : r.z) CHECK(z.is_zero());
}

TEST_CASE("normalize_vector: eliminates rational dependence among symbols") {
    SymbolTable tab;
    int s = tab.add("sigma", 0.7390851332151607);
    SymVec y{SymbolicReal::symbol(s), SymbolicReal::symbol(s, Rational(2))};
    NormalizeResult r = normalize_vector(y, tab);
    CHECK(r.nu == 1);
    CHECK(r.z[0].is_zero());
    CHECK_FALSE(r.z[1].is_rational());
    CHECK(r.z[1].evaluate(tab) > 0);
    // z = K*y exactly: exhaustively verify the symbolic linear relation
    for (int i = 0; i < 2; ++i) {
        SymbolicReal acc;
        for (int j = 0; j < 2; ++j) acc += Rational(r.K(i, j)) * y[static_cast<size_t>(j)];
        CHECK(acc == r.z[static_cast<size_t>(i)]);
    }
}

TEST_CASE("normalize_vector: canonical form on random rational vectors") {
    Rng rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        int r = 1 + static_cast<int>(rng.below(6));
        SymbolTable tab;
        SymVec y;
        Int gp(0), lq(1);
        bool any = false;
        for (int i = 0; i < r; ++i) {
            long long num = static_cast<long long>(rng.below(2001)) - 1000;
            long long den = 1 + static_cast<long long>(rng.below(9999));
            Rational v(num, den);
            y.push_back(SymbolicReal(v));
            if (v != 0) {
                any = true;
                gp = boost::multiprecision::gcd(gp, boost::multiprecision::abs(rat_num(v)));
                lq = boost::multiprecision::lcm(lq, rat_den(v));
            }
        }
        NormalizeResult res = normalize_vector(y, tab);
        Int dk = det(res.K);
        CHECK((dk == 1 || dk == -1));
        CHECK(res.nu == r);
        for (int i = 0; i + 1 < r; ++i) CHECK(res.z[static_cast<size_t>(i)].is_zero());
        if (any) {
            CHECK(res.z[static_cast<size_t>(r - 1)].rational_part() == Rational(gp, lq));
        } else {
            CHECK(res.z[static_cast<size_t>(r - 1)].is_zero());
        }
        for (int i = 0; i < r; ++i) {
            SymbolicReal acc;
            for (int j = 0; j < r; ++j) acc += Rational(res.K(i, j)) * y[static_cast<size_t>(j)];
            CHECK(acc == res.z[static_cast<size_t>(i)]);
        }
    }
}

TEST_CASE("decompose: uniform {-1,+1} walk step") {
    LatticeLaw law = uniform_law_1d({-1, 1});
    LatticeDecomposition dec = decompose(law);
    CHECK(dec.r == 1);
    CHECK(dec.nu == 1);
    CHECK(dec.q == 2);
    CHECK(dec.p == 1);
    CHECK(dec.beta[0] == SymbolicReal(Rational(1, 2)));

    // |phi(2 pi t)| = 1 exactly on t in (1/2)Z: direct CF evaluation on the support
    for (int k = -4; k <= 4; ++k) {
        double t = 0.5 * k;
        std::complex<double> phi = 0.5 * std::exp(std::complex<double>(0, 2 * M_PI * t * -1.0)) +
                                   0.5 * std::exp(std::complex<double>(0, 2 * M_PI * t * 1.0));
        CHECK(std::abs(phi) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // and strictly below 1 off the dual lattice
    for (double t : {0.1, 0.3, 0.7, 1.2}) {
        std::complex<double> phi = 0.5 * std::exp(std::complex<double>(0, 2 * M_PI * t * -1.0)) +
                                   0.5 * std::exp(std::complex<double>(0, 2 * M_PI * t * 1.0));
        CHECK(std::abs(phi) < 1.0 - 1e-6);
    }
}

TEST_CASE("decompose: strongly aperiodic law containing 0, e1, e2") {
    LatticeLaw law;
    law.dim = 2;
    law.atoms.push_back({{SymbolicReal(0), SymbolicReal(0)}, Rational(1, 3)});
    law.atoms.push_back({{SymbolicReal(1), SymbolicReal(0)}, Rational(1, 3)});
    law.atoms.push_back({{SymbolicReal(0), SymbolicReal(1)}, Rational(1, 3)});
    LatticeDecomposition dec = decompose(law);
    CHECK(dec.r == 2);
    CHECK(dec.nu == 2);
    CHECK(dec.q == 1);
    for (const auto& b : dec.beta) CHECK(b.is_zero());
}

TEST_CASE("decompose: one rational direction, one irrational offset coordinate") {
    // Minimal nondegenerate law of the {(0,0),(1,sigma)} flavor: the second
    // coordinate lives on sigma + Z while the first is plain Z.
    LatticeLaw law;
    law.dim = 2;
    int s = law.symbols.add("sigma", std::sqrt(2.0) - 1.0);
    SymbolicReal sigma = SymbolicReal::symbol(s);
    law.atoms.push_back({{SymbolicReal(0), sigma}, Rational(1, 3)});
    law.atoms.push_back({{SymbolicReal(1), sigma}, Rational(1, 3)});
    law.atoms.push_back({{SymbolicReal(0), sigma + SymbolicReal(1)}, Rational(1, 3)});
    LatticeDecomposition dec = decompose(law);
    CHECK(dec.r == 2);
    CHECK(dec.nu == 1);
    CHECK(dec.q == 1);
    CHECK(dec.beta[0].is_zero());
    CHECK_FALSE(dec.beta[1].is_rational());
    double b1 = dec.beta[1].evaluate(law.symbols);
    CHECK(b1 > 0);
    CHECK(b1 < 1);
    CHECK(b1 == doctest::Approx(std::sqrt(2.0) - 1.0));

    // brute-force Gamma oracle: v = (i/2, j/2), small integer combinations,
    // must land in Gamma iff integer
    for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j) {
            Rational v1(i, 2), v2(j, 2);
            bool in_gamma = true;
            for (size_t a = 0; a < law.atoms.size() && in_gamma; ++a)
                for (size_t b = a + 1; b < law.atoms.size() && in_gamma; ++b) {
                    SymbolicReal d0 = law.atoms[a].point[0] - law.atoms[b].point[0];
                    SymbolicReal d1 = law.atoms[a].point[1] - law.atoms[b].point[1];
                    Rational ip = v1 * d0.rational_part() + v2 * d1.rational_part();
                    if (rat_den(ip) != 1) in_gamma = false;
                }
            CHECK(in_gamma == (rat_den(v1) == 1 && rat_den(v2) == 1));
        }
}

TEST_CASE("decompose: degenerate two-point support in the plane is rejected") {
    LatticeLaw law;
    law.dim = 2;
    int s = law.symbols.add("sigma", std::sqrt(3.0) - 1.0);
    law.atoms.push_back({{SymbolicReal(0), SymbolicReal(0)}, Rational(1, 2)});
    law.atoms.push_back({{SymbolicReal(1), SymbolicReal::symbol(s)}, Rational(1, 2)});
    CHECK_THROWS_AS(decompose(law), DegenerateSupport);
}

TEST_CASE("decompose is invariant under unimodular changes of presentation") {
    Rng rng(303);
    LatticeLaw base;
    base.dim = 2;
    base.atoms.push_back({{SymbolicReal(1), SymbolicReal(1)}, Rational(1, 4)});
    base.atoms.push_back({{SymbolicReal(3), SymbolicReal(1)}, Rational(1, 4)});
    base.atoms.push_back({{SymbolicReal(1), SymbolicReal(3)}, Rational(1, 4)});
    base.atoms.push_back({{SymbolicReal(-1), SymbolicReal(-1)}, Rational(1, 4)});
    LatticeDecomposition ref = decompose(base);
    for (int trial = 0; trial < 20; ++trial) {
        IntMat k = random_unimodular(rng, 2);
        LatticeLaw law = base;
        for (auto& atom : law.atoms) {
            SymVec p(2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) p[static_cast<size_t>(i)] += Rational(k(i, j)) * atom.point[static_cast<size_t>(j)];
            atom.point = p;
        }
        LatticeDecomposition dec = decompose(law);
        CHECK(dec.r == ref.r);
        CHECK(dec.nu == ref.nu);
        CHECK(dec.q == ref.q);
    }
}

TEST_CASE("is_aperiodic: pinned examples") {
    AperiodicityReport walk = is_aperiodic({{Int(-1)}, {Int(1)}});
    CHECK(walk.aperiodic);
    CHECK_FALSE(walk.strongly_aperiodic);
    CHECK(walk.q == 2);
    CHECK(walk.p == 1);
    // core support {-1, 0}
    REQUIRE(walk.core_support.size() == 2);
    std::vector<Int> vals{walk.core_support[0][0], walk.core_support[1][0]};
    std::sort(vals.begin(), vals.end());
    CHECK(vals[0] == -1);
    CHECK(vals[1] == 0);

    AperiodicityReport step = is_aperiodic({{Int(0)}, {Int(1)}});
    CHECK(step.aperiodic);
    CHECK(step.strongly_aperiodic);
    CHECK(step.q == 1);

    AperiodicityReport even = is_aperiodic({{Int(-2)}, {Int(2)}});
    CHECK_FALSE(even.aperiodic);
    REQUIRE(even.failing_t.size() == 1);
    CHECK(rat_den(even.failing_t[0]) == 2);  // t = odd/2 certifies periodicity
}

TEST_CASE("is_aperiodic roundtrip recovers q") {
    Rng rng(404);
    for (int trial = 0; trial < 60; ++trial) {
        int nu = 1 + static_cast<int>(rng.below(4));
        // strongly aperiodic core: 0, the unit vectors, and noise points
        std::vector<std::vector<Int>> zeta;
        zeta.emplace_back(static_cast<size_t>(nu), Int(0));
        for (int i = 0; i < nu; ++i) {
            std::vector<Int> e(static_cast<size_t>(nu), Int(0));
            e[static_cast<size_t>(i)] = 1;
            zeta.push_back(std::move(e));
        }
        for (int extra = 0; extra < 2; ++extra) {
            std::vector<Int> v(static_cast<size_t>(nu));
            for (auto& c : v) c = Int(static_cast<long long>(rng.below(7))) - 3;
            if (std::find(zeta.begin(), zeta.end(), v) == zeta.end()) zeta.push_back(std::move(v));
        }
        Int q = Int(1 + static_cast<long long>(rng.below(7)));
        Int p(0);
        if (q > 1) {
            do {
                p = Int(static_cast<long long>(rng.below(q.convert_to<uint64_t>())));
            } while (boost::multiprecision::gcd(p == 0 ? q : p, q) != 1);
        }
        IntMat k = random_unimodular(rng, nu);
        IntMat kinv = unimodular_inverse(k);
        std::vector<std::vector<Int>> xi;
        for (const auto& z : zeta) {
            std::vector<Int> v = z;
            v[static_cast<size_t>(nu - 1)] = p + q * v[static_cast<size_t>(nu - 1)];
            std::vector<Int> x(static_cast<size_t>(nu), Int(0));
            for (int i = 0; i < nu; ++i)
                for (int j = 0; j < nu; ++j) x[static_cast<size_t>(i)] += kinv(i, j) * v[static_cast<size_t>(j)];
            if (std::find(xi.begin(), xi.end(), x) == xi.end()) xi.push_back(std::move(x));
        }
        AperiodicityReport rep = is_aperiodic(xi);
        CHECK(rep.aperiodic);
        CHECK(rep.q == q);
    }
}

TEST_CASE("lattice law JSON round trip") {
    LatticeLaw law;
    law.dim = 2;
    int s = law.symbols.add("sigma", 0.5772156649015329);
    law.atoms.push_back({{SymbolicReal(Rational(1, 2)), SymbolicReal::symbol(s)}, Rational(1, 2)});
    law.atoms.push_back(
        {{SymbolicReal(Rational(-1, 2)), SymbolicReal::symbol(s) + SymbolicReal(1)}, Rational(1, 2)});
    CHECK_THROWS(law.validate());  // two points in the plane: degenerate

    law.atoms[1].mass = Rational(1, 4);
    law.atoms.push_back({{SymbolicReal(Rational(1, 2)), SymbolicReal::symbol(s) + SymbolicReal(2)}, Rational(1, 4)});
    law.validate();

    std::string text = lattice_law_to_json(law);
    LatticeLaw back = lattice_law_from_json(text);
    REQUIRE(back.atoms.size() == law.atoms.size());
    for (size_t i = 0; i < law.atoms.size(); ++i) {
        CHECK(back.atoms[i].mass == law.atoms[i].mass);
        CHECK(back.atoms[i].point == law.atoms[i].point);
    }
}
