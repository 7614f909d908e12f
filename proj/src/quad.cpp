#include "renewalkit/util/quad.hpp"

namespace renewalkit {

GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<size_t>(i)] = x;
        rule.weights[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, const GaussRule& rule) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

namespace {

struct SimpsonCtx {
    const std::function<double(double)>& f;
    double abs_tol, rel_tol;
    long max_evals;
    long evals = 0;
    double err = 0.0;

    double eval(double x) {
        if (++evals > max_evals) throw QuadratureBudgetExceeded("adaptive_simpson: evaluation budget exceeded");
        return f(x);
    }

    double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        double flm = eval(lm), frm = eval(rm);
        double h = b - a;
        double left = h / 12.0 * (fa + 4.0 * flm + fm);
        double right = h / 12.0 * (fm + 4.0 * frm + fb);
        double delta = left + right - whole;
        if (depth > 52 || std::abs(delta) <= 15.0 * tol) {
            err += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

AdaptiveResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                double rel_tol, long max_evals) {
    SimpsonCtx ctx{f, abs_tol, rel_tol, max_evals};
    if (a == b) return {0.0, 0.0, 0};
    double fa = ctx.eval(a), fb = ctx.eval(b), fm = ctx.eval(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double tol = std::max(abs_tol, std::abs(whole) * rel_tol);
    double v = ctx.recurse(a, b, fa, fm, fb, whole, tol, 0);
    return {v, ctx.err, ctx.evals};
}

}  // namespace renewalkit
