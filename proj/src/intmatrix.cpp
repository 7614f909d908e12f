#include "renewalkit/intmatrix.hpp"

#include <stdexcept>

namespace renewalkit {

namespace {

template <class T>
T det_gauss(Mat<T> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    int n = m.rows();
    if constexpr (std::is_same_v<T, Rational>) {
        Rational d(1);
        for (int c = 0; c < n; ++c) {
            int piv = -1;
            for (int r = c; r < n; ++r)
                if (m(r, c) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return Rational(0);
            if (piv != c) {
                m.swap_rows(piv, c);
                d = -d;
            }
            d *= m(c, c);
            for (int r = c + 1; r < n; ++r) {
                if (m(r, c) == 0) continue;
                Rational f = m(r, c) / m(c, c);
                for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
            }
        }
        return d;
    } else {
        // Bareiss fraction-free elimination.
        T prev(1);
        int sign = 1;
        for (int c = 0; c < n - 1; ++c) {
            int piv = -1;
            for (int r = c; r < n; ++r)
                if (m(r, c) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return T(0);
            if (piv != c) {
                m.swap_rows(piv, c);
                sign = -sign;
            }
            for (int r = c + 1; r < n; ++r)
                for (int j = c + 1; j < n; ++j) m(r, j) = (m(c, c) * m(r, j) - m(r, c) * m(c, j)) / prev;
            prev = m(c, c);
        }
        T d = m(n - 1, n - 1);
        return sign > 0 ? d : T(-d);
    }
}

}  // namespace

Int det(const IntMat& m) { return det_gauss(m); }
Rational det(const RatMat& m) { return det_gauss(m); }

RatMat inverse(const RatMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    int n = m.rows();
    RatMat a = m;
    RatMat inv = RatMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (a(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::invalid_argument("inverse: singular matrix");
        if (piv != c) {
            a.swap_rows(piv, c);
            inv.swap_rows(piv, c);
        }
        Rational p = a(c, c);
        for (int j = 0; j < n; ++j) {
            a(c, j) /= p;
            inv(c, j) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            Rational f = a(r, c);
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

IntMat unimodular_inverse(const IntMat& k) {
    Int d = det(k);
    if (d != 1 && d != -1) throw std::invalid_argument("unimodular_inverse: determinant is not +-1");
    RatMat inv = inverse(to_rat(k));
    return to_int(inv);
}

IntMat to_int(const RatMat& m) {
    IntMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (rat_den(m(i, j)) != 1) throw std::invalid_argument("to_int: non-integer entry");
            r(i, j) = rat_num(m(i, j));
        }
    return r;
}

RatMat to_rat(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

namespace {

// Row/column reduction step helpers that keep U*M0*V = M invariant.
struct SnfState {
    IntMat u, m, v;
};

bool reduce_once(SnfState& st, int t) {
    IntMat& m = st.m;
    int rows = m.rows(), cols = m.cols();
    while (true) {
        // re-pick the global minimum pivot every pass: the pivot magnitude
        // strictly decreases between passes, which keeps coefficient growth
        // tame on adversarial inputs
        int pi = -1, pj = -1;
        Int best(0);
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (m(i, j) == 0) continue;
                Int a = boost::multiprecision::abs(m(i, j));
                if (pi < 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) return false;  // trailing block all zero
        if (pi != t) {
            m.swap_rows(pi, t);
            st.u.swap_rows(pi, t);
        }
        if (pj != t) {
            m.swap_cols(pj, t);
            st.v.swap_cols(pj, t);
        }
        bool clean = true;
        for (int i = t + 1; i < rows; ++i) {
            if (m(i, t) == 0) continue;
            Int q = m(i, t) / m(t, t);
            if (q != 0) {
                for (int j = 0; j < cols; ++j) m(i, j) -= q * m(t, j);
                for (int j = 0; j < rows; ++j) st.u(i, j) -= q * st.u(t, j);
            }
            if (m(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < cols; ++j) {
            if (m(t, j) == 0) continue;
            Int q = m(t, j) / m(t, t);
            if (q != 0) {
                for (int i = 0; i < rows; ++i) m(i, j) -= q * m(i, t);
                for (int i = 0; i < cols; ++i) st.v(i, j) -= q * st.v(i, t);
            }
            if (m(t, j) != 0) clean = false;
        }
        if (clean) return true;
    }
}

}  // namespace

IntMat column_lattice_basis(const IntMat& a0) {
    IntMat a = a0;
    int dim = a.rows(), m = a.cols();
    int pc = 0;
    std::vector<int> pivot_row;
    for (int r = 0; r < dim && pc < m; ++r) {
        int nz = -1;
        for (int j = pc; j < m; ++j)
            if (a(r, j) != 0) {
                nz = j;
                break;
            }
        if (nz < 0) continue;
        if (nz != pc) a.swap_cols(nz, pc);
        for (int j = pc + 1; j < m; ++j) {
            if (a(r, j) == 0) continue;
            // two-column gcd fold: pivot column gets gcd, column j gets 0 in row r
            Int x = a(r, pc), y = a(r, j);
            Int g = boost::multiprecision::gcd(boost::multiprecision::abs(x), boost::multiprecision::abs(y));
            Int xs = x / g, ys = y / g;
            Int u0 = 1, v0 = 0, u1 = 0, v1 = 1, r0 = xs, r1 = ys;
            while (r1 != 0) {
                Int qt = r0 / r1;
                Int tmp;
                tmp = r0 - qt * r1;
                r0 = r1;
                r1 = tmp;
                tmp = u0 - qt * u1;
                u0 = u1;
                u1 = tmp;
                tmp = v0 - qt * v1;
                v0 = v1;
                v1 = tmp;
            }
            if (r0 < 0) {
                u0 = -u0;
                v0 = -v0;
            }
            // u0*xs + v0*ys = 1; columns (pc, j) <- (u0*pc + v0*j, -ys*pc + xs*j)
            for (int i = 0; i < dim; ++i) {
                Int cp = a(i, pc), cj = a(i, j);
                a(i, pc) = u0 * cp + v0 * cj;
                a(i, j) = -ys * cp + xs * cj;
            }
        }
        if (a(r, pc) < 0)
            for (int i = 0; i < dim; ++i) a(i, pc) = -a(i, pc);
        // size-reduce earlier pivot columns against the new pivot
        for (size_t k = 0; k < pivot_row.size(); ++k) {
            Int piv = a(r, pc);
            if (piv == 0) break;
            Int q = a(r, static_cast<int>(k));
            Int f = q / piv;
            if (q % piv < 0) f -= 1;  // floored reduction keeps remainders in [0, piv)
            if (f == 0) continue;
            for (int i = 0; i < dim; ++i) a(i, static_cast<int>(k)) -= f * a(i, pc);
        }
        pivot_row.push_back(r);
        ++pc;
    }
    IntMat basis(dim, pc);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < pc; ++j) basis(i, j) = a(i, j);
    return basis;
}

SmithResult smith_normal_form(const IntMat& m0) {
    SnfState st{IntMat::identity(m0.rows()), m0, IntMat::identity(m0.cols())};
    int k = std::min(m0.rows(), m0.cols());
    for (int t = 0; t < k; ++t) {
        if (!reduce_once(st, t)) break;
        if (st.m(t, t) < 0) {
            for (int j = 0; j < st.m.cols(); ++j) st.m(t, j) = -st.m(t, j);
            for (int j = 0; j < st.m.rows(); ++j) st.u(t, j) = -st.u(t, j);
        }
    }
    // Enforce the divisibility chain: if s_t does not divide s_{t+1}, fold
    // column t+1 into column t and re-reduce from position t.
    for (int t = 0; t + 1 < k; ++t) {
        if (st.m(t, t) == 0) continue;
        if (st.m(t + 1, t + 1) % st.m(t, t) == 0) continue;
        for (int i = 0; i < st.m.rows(); ++i) st.m(i, t) += st.m(i, t + 1);
        for (int i = 0; i < st.v.rows(); ++i) st.v(i, t) += st.v(i, t + 1);
        for (int back = t; back < k; ++back) {
            if (!reduce_once(st, back)) break;
            if (st.m(back, back) < 0) {
                for (int j = 0; j < st.m.cols(); ++j) st.m(back, j) = -st.m(back, j);
                for (int j = 0; j < st.m.rows(); ++j) st.u(back, j) = -st.u(back, j);
            }
        }
        t = -1;  // restart the divisibility scan
    }
    return {st.u, st.m, st.v};
}

}  // namespace renewalkit
