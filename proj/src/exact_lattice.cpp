#include "renewalkit/exact_lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace renewalkit::lattice {

namespace {

using json = nlohmann::json;

// Extended gcd with the Bezout pair minimized in |a| first, then |b|.
// Returns (g, a, b) with a*x + b*y = g, g = gcd(x,y) >= 0.
std::tuple<Int, Int, Int> ext_gcd(Int x, Int y) {
    Int a0 = 1, b0 = 0, a1 = 0, b1 = 1;
    Int r0 = x, r1 = y;
    while (r1 != 0) {
        Int qt = r0 / r1;
        std::tie(r0, r1) = std::make_tuple(r1, r0 - qt * r1);
        std::tie(a0, a1) = std::make_tuple(a1, a0 - qt * a1);
        std::tie(b0, b1) = std::make_tuple(b1, b0 - qt * b1);
    }
    if (r0 < 0) {
        r0 = -r0;
        a0 = -a0;
        b0 = -b0;
    }
    if (r0 != 0 && y != 0) {
        // shift a by multiples of y/g to minimize |a|
        Int step = boost::multiprecision::abs(y / r0);
        if (step != 0) {
            Int k = a0 / step;
            for (Int cand = k - 1; cand <= k + 1; ++cand) {
                Int a = a0 - cand * step;
                Int b = (r0 - a * x) / y;
                if (boost::multiprecision::abs(a) < boost::multiprecision::abs(a0) ||
                    (boost::multiprecision::abs(a) == boost::multiprecision::abs(a0) &&
                     boost::multiprecision::abs(b) < boost::multiprecision::abs(b0))) {
                    a0 = a;
                    b0 = b;
                }
            }
        }
    }
    return {r0, a0, b0};
}

void apply_row_op(IntMat& k, SymVec& z, int i, int j, const Int& gii, const Int& gij, const Int& gji,
                  const Int& gjj) {
    // rows (i,j) <- G * rows (i,j) with G = [[gii,gij],[gji,gjj]]
    for (int c = 0; c < k.cols(); ++c) {
        Int ki = k(i, c), kj = k(j, c);
        k(i, c) = gii * ki + gij * kj;
        k(j, c) = gji * ki + gjj * kj;
    }
    SymbolicReal zi = z[static_cast<size_t>(i)], zj = z[static_cast<size_t>(j)];
    z[static_cast<size_t>(i)] = Rational(gii) * zi + Rational(gij) * zj;
    z[static_cast<size_t>(j)] = Rational(gji) * zi + Rational(gjj) * zj;
}

void negate_row(IntMat& k, SymVec& z, int i) {
    for (int c = 0; c < k.cols(); ++c) k(i, c) = -k(i, c);
    z[static_cast<size_t>(i)] = -z[static_cast<size_t>(i)];
}

void swap_rows(IntMat& k, SymVec& z, int i, int j) {
    if (i == j) return;
    k.swap_rows(i, j);
    std::swap(z[static_cast<size_t>(i)], z[static_cast<size_t>(j)]);
}

// Lattice generated by the rows of an integer matrix, as a basis matrix with
// columns spanning it. Empty optional when the rank falls short of dim.
std::optional<IntMat> row_lattice_basis(const IntMat& rows, int dim) {
    IntMat basis = column_lattice_basis(rows.transposed());
    if (basis.cols() < dim) return std::nullopt;
    return basis;
}

IntMat pairwise_difference_rows(const std::vector<std::vector<Int>>& support, int dim) {
    size_t m = support.size();
    IntMat rows(static_cast<int>(m * (m - 1) / 2), dim);
    int r = 0;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            for (int c = 0; c < dim; ++c) rows(r, c) = support[i][static_cast<size_t>(c)] - support[j][static_cast<size_t>(c)];
            ++r;
        }
    return rows;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Int>& b) {
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
    return s;
}

}  // namespace

void LatticeLaw::validate() const {
    if (dim < 1) throw std::invalid_argument("LatticeLaw: dimension must be >= 1");
    if (atoms.empty()) throw std::invalid_argument("LatticeLaw: no atoms");
    Rational total(0);
    for (const auto& a : atoms) {
        if (static_cast<int>(a.point.size()) != dim) throw std::invalid_argument("LatticeLaw: point dimension mismatch");
        if (a.mass <= 0) throw std::invalid_argument("LatticeLaw: nonpositive mass");
        total += a.mass;
    }
    if (total != 1) throw std::invalid_argument("LatticeLaw: masses must sum to 1 exactly");
    for (size_t i = 0; i < atoms.size(); ++i)
        for (size_t j = i + 1; j < atoms.size(); ++j)
            if (atoms[i].point == atoms[j].point) throw std::invalid_argument("LatticeLaw: duplicate support point");
    // Affine hull via numeric rank of the differences; the exact path in
    // decompose() re-checks rationally.
    std::vector<std::vector<double>> diffs;
    for (size_t i = 1; i < atoms.size(); ++i) {
        std::vector<double> d(static_cast<size_t>(dim));
        for (int c = 0; c < dim; ++c)
            d[static_cast<size_t>(c)] =
                (atoms[i].point[static_cast<size_t>(c)] - atoms[0].point[static_cast<size_t>(c)]).evaluate(symbols);
        diffs.push_back(std::move(d));
    }
    int rank = 0;
    for (int c = 0; c < dim && rank < static_cast<int>(diffs.size()); ++c) {
        int piv = -1;
        double best = 1e-9;
        for (int r = rank; r < static_cast<int>(diffs.size()); ++r)
            if (std::abs(diffs[static_cast<size_t>(r)][static_cast<size_t>(c)]) > best) {
                best = std::abs(diffs[static_cast<size_t>(r)][static_cast<size_t>(c)]);
                piv = r;
            }
        if (piv < 0) continue;
        std::swap(diffs[static_cast<size_t>(piv)], diffs[static_cast<size_t>(rank)]);
        for (int r = 0; r < static_cast<int>(diffs.size()); ++r) {
            if (r == rank) continue;
            double f = diffs[static_cast<size_t>(r)][static_cast<size_t>(c)] / diffs[static_cast<size_t>(rank)][static_cast<size_t>(c)];
            for (int cc = 0; cc < dim; ++cc) diffs[static_cast<size_t>(r)][static_cast<size_t>(cc)] -= f * diffs[static_cast<size_t>(rank)][static_cast<size_t>(cc)];
        }
        ++rank;
    }
    if (rank < dim) throw DegenerateSupport("LatticeLaw: affine hull has dimension " + std::to_string(rank));
}

NormalizeResult normalize_vector(const SymVec& y, const SymbolTable& table) {
    int r = static_cast<int>(y.size());
    NormalizeResult res;
    res.K = IntMat::identity(r);
    res.z = y;
    if (r == 0) return res;

    // Symbol coefficients as an integer matrix (rows = coordinates).
    std::vector<int> sym_ids;
    for (const auto& c : y)
        for (const auto& [id, coeff] : c.irrational_part())
            if (std::find(sym_ids.begin(), sym_ids.end(), id) == sym_ids.end()) sym_ids.push_back(id);
    std::sort(sym_ids.begin(), sym_ids.end());
    int ns = static_cast<int>(sym_ids.size());

    int rho = 0;  // rank of the symbol-coefficient block
    if (ns > 0) {
        Int den(1);
        for (const auto& c : y)
            for (const auto& [id, coeff] : c.irrational_part()) den = boost::multiprecision::lcm(den, rat_den(coeff));
        IntMat b(r, ns);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < ns; ++j) {
                auto it = y[static_cast<size_t>(i)].irrational_part().find(sym_ids[static_cast<size_t>(j)]);
                if (it != y[static_cast<size_t>(i)].irrational_part().end())
                    b(i, j) = rat_num(it->second) * (den / rat_den(it->second));
            }
        SmithResult snf = smith_normal_form(b);
        int k = std::min(r, ns);
        for (int i = 0; i < k; ++i)
            if (snf.s(i, i) != 0) ++rho;
        // Rows of U past the rank span the left kernel of b; putting them first
        // makes the leading block of z rational.
        IntMat k0(r, r);
        for (int i = 0; i < r - rho; ++i)
            for (int j = 0; j < r; ++j) k0(i, j) = snf.u(rho + i, j);
        for (int i = 0; i < rho; ++i)
            for (int j = 0; j < r; ++j) k0(r - rho + i, j) = snf.u(i, j);
        res.K = k0;
        res.z = SymVec(static_cast<size_t>(r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) res.z[static_cast<size_t>(i)] += Rational(k0(i, j)) * y[static_cast<size_t>(j)];
    }
    int g = r - rho;  // rational slots
    res.nu = g;

    // Fold the nonzero rationals pairwise: combined slot value gcd/lcm.
    int acc = -1;
    for (int i = 0; i < g; ++i) {
        const SymbolicReal& zi = res.z[static_cast<size_t>(i)];
        if (!zi.is_rational()) throw std::logic_error("normalize_vector: internal rational-block failure");
        if (zi.is_zero()) continue;
        if (acc < 0) {
            acc = i;
            continue;
        }
        Rational y1 = res.z[static_cast<size_t>(acc)].rational_part();
        Rational y2 = res.z[static_cast<size_t>(i)].rational_part();
        Int p1 = rat_num(y1), q1 = rat_den(y1);
        Int p2 = rat_num(y2), q2 = rat_den(y2);
        Int gp = boost::multiprecision::gcd(boost::multiprecision::abs(p1), boost::multiprecision::abs(p2));
        Int gq = boost::multiprecision::gcd(q1, q2);
        Int p1s = p1 / gp, p2s = p2 / gp;
        Int q1s = q1 / gq, q2s = q2 / gq;
        auto [gg, a, b] = ext_gcd(p1s * q2s, p2s * q1s);
        if (gg != 1) throw std::logic_error("normalize_vector: Bezout failure");
        // det [[a, b], [-p2s*q1s, p1s*q2s]] = a*p1s*q2s + b*p2s*q1s = 1
        apply_row_op(res.K, res.z, acc, i, a, b, -p2s * q1s, p1s * q2s);
    }
    if (acc >= 0) {
        if (res.z[static_cast<size_t>(acc)].rational_part() < 0) negate_row(res.K, res.z, acc);
        swap_rows(res.K, res.z, acc, g - 1);
    }
    // Positive sign convention for the irrational block.
    for (int i = g; i < r; ++i) {
        double v = res.z[static_cast<size_t>(i)].evaluate(table);
        if (v < 0) {
            negate_row(res.K, res.z, i);
        } else if (v == 0) {
            const auto& irr = res.z[static_cast<size_t>(i)].irrational_part();
            if (!irr.empty() && irr.begin()->second < 0) negate_row(res.K, res.z, i);
        }
    }

    Int dk = det(res.K);
    if (dk != 1 && dk != -1) throw std::logic_error("normalize_vector: det K != +-1");
    return res;
}

AperiodicityReport is_aperiodic(const std::vector<std::vector<Int>>& support) {
    if (support.empty()) throw std::invalid_argument("is_aperiodic: empty support");
    int nu = static_cast<int>(support[0].size());
    for (const auto& p : support)
        if (static_cast<int>(p.size()) != nu) throw std::invalid_argument("is_aperiodic: ragged support");

    AperiodicityReport rep;
    rep.K = IntMat::identity(nu);

    IntMat diff_rows = pairwise_difference_rows(support, nu);
    auto diff_basis = row_lattice_basis(diff_rows, nu);
    if (!diff_basis) throw DegenerateSupport("is_aperiodic: support differences do not span");

    // Aperiodic iff the support points generate Z^nu.
    IntMat pts(static_cast<int>(support.size()), nu);
    for (size_t i = 0; i < support.size(); ++i)
        for (int c = 0; c < nu; ++c) pts(static_cast<int>(i), c) = support[i][static_cast<size_t>(c)];
    SmithResult psnf = smith_normal_form(pts.transposed());
    bool ap = true;
    int bad = -1;
    for (int i = 0; i < nu; ++i)
        if (psnf.s(i, i) != 1) {
            ap = false;
            bad = i;
            break;
        }
    rep.aperiodic = ap;
    if (!ap) {
        // t = (row `bad` of U) / s_bad satisfies <t, x> in Z for all support x.
        rep.failing_t.assign(static_cast<size_t>(nu), Rational(0));
        Int sbad = psnf.s(bad, bad);
        if (sbad == 0) sbad = 2;  // rank-deficient direction: any dual vector outside Z^nu
        for (int j = 0; j < nu; ++j) rep.failing_t[static_cast<size_t>(j)] = Rational(psnf.u(bad, j), sbad);
        return rep;
    }

    // Witness: Gamma = dual(difference lattice), refreshed basis M with
    // Z^nu = M * diag(n_i) * Z^nu, then K = D*M', b = D*s, q = n_nu, p = b_nu mod q.
    RatMat m0 = inverse(to_rat(diff_basis->transposed()));  // columns u_i
    IntMat w = diff_basis->transposed();                    // M0^{-1}
    SmithResult wsnf = smith_normal_form(w);
    RatMat m = matmul(m0, to_rat(unimodular_inverse(wsnf.u)));
    std::vector<Int> n(static_cast<size_t>(nu));
    for (int i = 0; i < nu; ++i) n[static_cast<size_t>(i)] = wsnf.s(i, i);
    for (int i = 0; i + 1 < nu; ++i)
        if (n[static_cast<size_t>(i)] != 1) throw std::logic_error("is_aperiodic: unexpected invariant factor for aperiodic law");
    rep.q = n[static_cast<size_t>(nu - 1)];
    rep.strongly_aperiodic = (rep.q == 1);

    // K = D * M' (integral with det +-1 because columns n_i*u_i generate Z^nu).
    RatMat kq(nu, nu);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nu; ++j) kq(i, j) = Rational(n[static_cast<size_t>(i)]) * m(j, i);
    rep.K = to_int(kq);
    Int dk = det(rep.K);
    if (dk != 1 && dk != -1) throw std::logic_error("is_aperiodic: witness K not unimodular");

    // b = D*s from the residues of <u_i, x> over the support.
    std::vector<Rational> s(static_cast<size_t>(nu));
    for (int i = 0; i < nu; ++i) {
        std::vector<Rational> ui(static_cast<size_t>(nu));
        for (int j = 0; j < nu; ++j) ui[static_cast<size_t>(j)] = m(j, i);
        Rational r0 = rat_frac(dot(ui, support[0]));
        for (const auto& x : support)
            if (rat_frac(dot(ui, x)) != r0) throw std::logic_error("is_aperiodic: inconsistent lattice residues");
        s[static_cast<size_t>(i)] = r0;
    }
    std::vector<Int> b(static_cast<size_t>(nu));
    for (int i = 0; i < nu; ++i) {
        Rational bi = Rational(n[static_cast<size_t>(i)]) * s[static_cast<size_t>(i)];
        if (rat_den(bi) != 1) throw std::logic_error("is_aperiodic: b not integral");
        b[static_cast<size_t>(i)] = rat_num(bi);
    }
    Int q = rep.q;
    Int p = b[static_cast<size_t>(nu - 1)] % q;
    if (p < 0) p += q;
    rep.p = p;
    if (boost::multiprecision::gcd(p == 0 ? q : p, q) != 1 && q != 1)
        throw std::logic_error("is_aperiodic: p, q not coprime");

    // zeta = D^{-1} (K x - p e_nu)
    for (const auto& x : support) {
        std::vector<Int> kx(static_cast<size_t>(nu), Int(0));
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nu; ++j) kx[static_cast<size_t>(i)] += rep.K(i, j) * x[static_cast<size_t>(j)];
        kx[static_cast<size_t>(nu - 1)] -= p;
        if (kx[static_cast<size_t>(nu - 1)] % q != 0) throw std::logic_error("is_aperiodic: zeta not integral");
        kx[static_cast<size_t>(nu - 1)] /= q;
        rep.core_support.push_back(std::move(kx));
    }
    // zeta must be strongly aperiodic: its differences generate Z^nu.
    IntMat zdiff = pairwise_difference_rows(rep.core_support, nu);
    SmithResult zsnf = smith_normal_form(zdiff.transposed());
    for (int i = 0; i < nu; ++i)
        if (zsnf.s(i, i) != 1) throw std::logic_error("is_aperiodic: core not strongly aperiodic");
    return rep;
}

LatticeDecomposition decompose(const LatticeLaw& law) {
    law.validate();
    int d = law.dim;
    size_t m = law.atoms.size();

    // Pairwise differences; the aligned-frame restriction demands they are rational.
    std::vector<std::vector<Rational>> diffs;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            std::vector<Rational> row(static_cast<size_t>(d));
            for (int c = 0; c < d; ++c) {
                SymbolicReal delta = law.atoms[i].point[static_cast<size_t>(c)] - law.atoms[j].point[static_cast<size_t>(c)];
                if (!delta.is_rational())
                    throw UnsupportedPresentation(
                        "decompose: support differences carry irrational symbols; transform the law into the aligned frame first");
                row[static_cast<size_t>(c)] = delta.rational_part();
            }
            diffs.push_back(std::move(row));
        }
    Int den(1);
    for (const auto& row : diffs)
        for (const auto& v : row) den = boost::multiprecision::lcm(den, rat_den(v));
    IntMat a(static_cast<int>(diffs.size()), d);
    for (size_t i = 0; i < diffs.size(); ++i)
        for (int c = 0; c < d; ++c) {
            Rational scaled = diffs[i][static_cast<size_t>(c)] * Rational(den);
            a(static_cast<int>(i), c) = rat_num(scaled);
        }

    IntMat diff_lattice = column_lattice_basis(a.transposed());
    if (diff_lattice.cols() < d) throw DegenerateSupport("decompose: support differences do not span R^d");

    // Gamma = {v : <v, diff> in Z for all differences} = den * dual(diff lattice).
    RatMat gamma = inverse(to_rat(diff_lattice)).transposed();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) gamma(i, j) *= Rational(den);

    LatticeDecomposition dec;
    dec.r = d;
    dec.gamma_basis = gamma;

    // Offset in Gamma coordinates, then unimodular reduction.
    SymVec y(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) y[static_cast<size_t>(i)] += gamma(j, i) * law.atoms[0].point[static_cast<size_t>(j)];
    NormalizeResult norm = normalize_vector(y, law.symbols);
    dec.alignment = norm.K;
    dec.nu = norm.nu;

    dec.beta.resize(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        const SymbolicReal& zi = norm.z[static_cast<size_t>(i)];
        if (zi.is_rational()) {
            dec.beta[static_cast<size_t>(i)] = SymbolicReal(rat_frac(zi.rational_part()));
        } else {
            double v = zi.evaluate(law.symbols);
            dec.beta[static_cast<size_t>(i)] = zi - SymbolicReal(Rational(Int(static_cast<long long>(std::floor(v)))));
        }
    }
    if (dec.nu > 0) {
        Rational beta_nu = dec.beta[static_cast<size_t>(dec.nu - 1)].rational_part();
        dec.q = rat_den(beta_nu);
        dec.p = rat_num(beta_nu);
        if (dec.p < 0) throw std::logic_error("decompose: negative beta_nu");
    } else {
        dec.q = 1;
        dec.p = 0;
    }
    dec.D.assign(static_cast<size_t>(dec.nu), Int(1));
    if (dec.nu > 0) dec.D[static_cast<size_t>(dec.nu - 1)] = dec.q;

    // Witness K for D*L via Prop-1.4-style classification of the integerized
    // rational block.
    dec.K = IntMat::identity(dec.nu);
    if (dec.nu > 0) {
        std::vector<std::vector<Int>> dl;
        for (const auto& atom : law.atoms) {
            SymVec z(static_cast<size_t>(d));
            for (int i = 0; i < d; ++i) {
                SymbolicReal acc;
                for (int j = 0; j < d; ++j) acc += gamma(j, i) * atom.point[static_cast<size_t>(j)];
                z[static_cast<size_t>(i)] = acc;
            }
            SymVec w(static_cast<size_t>(d));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) w[static_cast<size_t>(i)] += Rational(norm.K(i, j)) * z[static_cast<size_t>(j)];
            std::vector<Int> point(static_cast<size_t>(dec.nu));
            for (int i = 0; i < dec.nu; ++i) {
                SymbolicReal li = w[static_cast<size_t>(i)];
                if (!li.is_rational()) throw std::logic_error("decompose: rational block not rational");
                Rational scaled = li.rational_part() * Rational(dec.D[static_cast<size_t>(i)]);
                if (rat_den(scaled) != 1) throw std::logic_error("decompose: D*L not integral");
                point[static_cast<size_t>(i)] = rat_num(scaled);
            }
            if (std::find(dl.begin(), dl.end(), point) == dl.end()) dl.push_back(std::move(point));
        }
        if (dl.size() >= 2) {
            AperiodicityReport ap = is_aperiodic(dl);
            if (!ap.aperiodic) throw std::logic_error("decompose: D*L not aperiodic");
            dec.K = ap.K;
        }
    }
    return dec;
}

namespace {

SymbolicReal point_entry_from_json(const json& j, SymbolTable& table) {
    if (j.is_string()) return SymbolicReal(parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return SymbolicReal(Rational(j.get<long long>()));
    if (!j.is_object()) throw std::invalid_argument("lattice_law_from_json: bad point entry");
    SymbolicReal v;
    if (j.contains("rat")) v += SymbolicReal(parse_rational(j["rat"].get<std::string>()));
    if (j.contains("irr"))
        for (auto it = j["irr"].begin(); it != j["irr"].end(); ++it) {
            int id = table.find(it.key());
            if (id < 0) throw std::invalid_argument("lattice_law_from_json: unknown symbol " + it.key());
            v += SymbolicReal::symbol(id, parse_rational(it.value().get<std::string>()));
        }
    return v;
}

}  // namespace

LatticeLaw lattice_law_from_json(const std::string& text) {
    json j = json::parse(text);
    LatticeLaw law;
    law.dim = j.at("dim").get<int>();
    if (j.contains("symbols"))
        for (auto it = j["symbols"].begin(); it != j["symbols"].end(); ++it)
            law.symbols.add(it.key(), it.value().get<double>());
    for (const auto& ja : j.at("atoms")) {
        LatticeLaw::Atom atom;
        for (const auto& jp : ja.at("point")) atom.point.push_back(point_entry_from_json(jp, law.symbols));
        atom.mass = parse_rational(ja.at("mass").get<std::string>());
        law.atoms.push_back(std::move(atom));
    }
    law.validate();
    return law;
}

std::string lattice_law_to_json(const LatticeLaw& law) {
    json j;
    j["dim"] = law.dim;
    if (law.symbols.size() > 0) {
        json syms = json::object();
        for (int i = 0; i < law.symbols.size(); ++i) syms[law.symbols.name(i)] = law.symbols.value(i);
        j["symbols"] = syms;
    }
    j["atoms"] = json::array();
    for (const auto& atom : law.atoms) {
        json ja;
        ja["point"] = json::array();
        for (const auto& c : atom.point) {
            if (c.is_rational()) {
                ja["point"].push_back(to_string(c.rational_part()));
            } else {
                json je;
                je["rat"] = to_string(c.rational_part());
                json irr = json::object();
                for (const auto& [id, coeff] : c.irrational_part()) irr[law.symbols.name(id)] = to_string(coeff);
                je["irr"] = irr;
                ja["point"].push_back(je);
            }
        }
        ja["mass"] = to_string(atom.mass);
        j["atoms"].push_back(ja);
    }
    return j.dump(2);
}

std::string decomposition_to_json(const LatticeDecomposition& dec, const SymbolTable& symbols) {
    json j;
    j["r"] = dec.r;
    j["nu"] = dec.nu;
    j["q"] = dec.q.str();
    j["p"] = dec.p.str();
    j["beta"] = json::array();
    for (const auto& b : dec.beta) j["beta"].push_back(b.str(&symbols));
    auto mat_to_json = [](const IntMat& m) {
        json rows = json::array();
        for (int i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c).str());
            rows.push_back(row);
        }
        return rows;
    };
    j["K"] = mat_to_json(dec.K);
    json dd = json::array();
    for (const auto& v : dec.D) dd.push_back(v.str());
    j["D"] = dd;
    json gb = json::array();
    for (int i = 0; i < dec.gamma_basis.rows(); ++i) {
        json row = json::array();
        for (int c = 0; c < dec.gamma_basis.cols(); ++c) row.push_back(to_string(dec.gamma_basis(i, c)));
        gb.push_back(row);
    }
    j["gamma_basis"] = gb;
    j["alignment"] = mat_to_json(dec.alignment);
    return j.dump(2);
}

}  // namespace renewalkit::lattice
