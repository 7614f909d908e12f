#include "renewalkit/renewal.hpp"

#include "renewalkit/util/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace renewalkit::renewal {

namespace {

long long next_pow2(double x) {
    long long g = 64;
    while (g < x && g < (1LL << 40)) g *= 2;
    return g;
}

}  // namespace

TargetCell TargetCell::lattice(int d, int nu, long long q, IntMat k_block) {
    TargetCell c;
    c.d = d;
    c.nu = nu;
    c.q = q;
    c.k = std::move(k_block);
    if (c.k.rows() != nu || c.k.cols() != nu) throw std::invalid_argument("TargetCell: K must be nu x nu");
    RatMat kinv = inverse(to_rat(c.k));
    c.kinv_d.assign(static_cast<size_t>(nu) * nu, 0.0);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nu; ++j) {
            double dj = (j == nu - 1) ? static_cast<double>(q) : 1.0;
            c.kinv_d[static_cast<size_t>(i) * nu + j] = rat_to_double(kinv(i, j)) * dj;
        }
    return c;
}

bool TargetCell::contains(std::span<const double> y) const {
    // lattice block: K^{-1} D y_{1..nu} in [0,1)^nu
    for (int i = 0; i < nu; ++i) {
        double acc = 0.0;
        for (int j = 0; j < nu; ++j) acc += kinv_d[static_cast<size_t>(i) * nu + j] * y[static_cast<size_t>(j)];
        if (acc < 0.0 || acc >= 1.0) return false;
    }
    for (int i = nu; i < d; ++i)
        if (y[static_cast<size_t>(i)] < 0.0 || y[static_cast<size_t>(i)] >= h) return false;
    return true;
}

std::vector<std::vector<long long>> TargetCell::integer_points(std::span<const double> x) const {
    // enumerate the integer points of x + Delta_h coordinate-box-wise, then
    // filter through the exact membership test
    std::vector<std::pair<long long, long long>> ranges(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        double lo = x[static_cast<size_t>(i)];
        double hi = x[static_cast<size_t>(i)] + (i < nu ? 1.0 : h);  // bounding box of the cell
        ranges[static_cast<size_t>(i)] = {static_cast<long long>(std::ceil(lo)) - 1,
                                          static_cast<long long>(std::floor(hi)) + 1};
    }
    std::vector<std::vector<long long>> out;
    std::vector<long long> pt(static_cast<size_t>(d));
    std::vector<double> y(static_cast<size_t>(d));
    std::function<void(int)> rec = [&](int i) {
        if (i == d) {
            for (int j = 0; j < d; ++j)
                y[static_cast<size_t>(j)] = static_cast<double>(pt[static_cast<size_t>(j)]) - x[static_cast<size_t>(j)];
            if (contains(y)) out.push_back(pt);
            return;
        }
        for (long long c = ranges[static_cast<size_t>(i)].first; c <= ranges[static_cast<size_t>(i)].second; ++c) {
            pt[static_cast<size_t>(i)] = c;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

namespace {

struct McAccum {
    std::vector<double> count;   // per omega: sum over paths of window visit counts
    std::vector<double> count2;  // squared per-path counts
    long paths = 0;
};

std::vector<RenewalEstimate> mc_window(const models::StepDistribution& model, const TargetCell& cell, double s,
                                       const std::vector<std::vector<double>>& omegas, double n_lo, double n_hi,
                                       const RenewalConfig& cfg) {
    int d = model.dim();
    size_t nw = omegas.size();
    long n_max = static_cast<long>(std::ceil(n_hi)) - 1;
    if (n_max < 1) n_max = 0;
    const long block_size = 512;
    long n_blocks = (cfg.paths + block_size - 1) / block_size;

    auto run_block = [&](long b) {
        McAccum acc;
        acc.count.assign(nw, 0.0);
        acc.count2.assign(nw, 0.0);
        Rng rng(cfg.seed, 0x100000 + static_cast<uint64_t>(b));
        std::vector<double> pos(static_cast<size_t>(d));
        std::vector<double> step(static_cast<size_t>(d));
        std::vector<double> rel(static_cast<size_t>(d));
        std::vector<double> visits(nw);
        long in_block = std::min<long>(block_size, cfg.paths - b * block_size);
        for (long p = 0; p < in_block; ++p) {
            std::fill(pos.begin(), pos.end(), 0.0);
            std::fill(visits.begin(), visits.end(), 0.0);
            for (long n = 1; n <= n_max; ++n) {
                model.sample(rng, step);
                for (int i = 0; i < d; ++i) pos[static_cast<size_t>(i)] += step[static_cast<size_t>(i)];
                if (static_cast<double>(n) < n_lo || static_cast<double>(n) >= n_hi) continue;
                for (size_t w = 0; w < nw; ++w) {
                    for (int i = 0; i < d; ++i)
                        rel[static_cast<size_t>(i)] = pos[static_cast<size_t>(i)] - s * omegas[w][static_cast<size_t>(i)];
                    if (cell.contains(rel)) visits[w] += 1.0;
                }
            }
            for (size_t w = 0; w < nw; ++w) {
                acc.count[w] += visits[w];
                acc.count2[w] += visits[w] * visits[w];
            }
            ++acc.paths;
        }
        return acc;
    };
    auto merge = [&](McAccum& a, const McAccum& b) {
        if (a.count.empty()) {
            a = b;
            return;
        }
        for (size_t w = 0; w < nw; ++w) {
            a.count[w] += b.count[w];
            a.count2[w] += b.count2[w];
        }
        a.paths += b.paths;
    };
    McAccum acc = parallel_blocks<McAccum>(n_blocks, cfg.threads, run_block, merge);

    const auto& a = model.norming();
    double pref = std::pow(s, d) / a(s);
    std::vector<RenewalEstimate> out;
    for (size_t w = 0; w < nw; ++w) {
        RenewalEstimate e;
        e.s = s;
        e.omega = omegas[w];
        e.h = cell.h;
        e.n_lo = n_lo;
        e.n_hi = n_hi;
        e.method = "monte-carlo";
        double mean = acc.count[w] / static_cast<double>(acc.paths);
        double var = std::max(0.0, acc.count2[w] / static_cast<double>(acc.paths) - mean * mean);
        e.value = pref * mean;
        e.stderr_or_bound = pref * std::sqrt(var / static_cast<double>(acc.paths));
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<RenewalEstimate> exact_window(const models::StepDistribution& model, const TargetCell& cell,
                                          double s, const std::vector<std::vector<double>>& omegas, double n_lo,
                                          double n_hi, const RenewalConfig& cfg) {
    if (!model.is_lattice()) throw std::invalid_argument("renewal exact path: lattice model required");
    if (!model.symmetric()) throw std::invalid_argument("renewal exact path: symmetric model required");
    int d = model.dim();
    const auto& a = model.norming();
    double a_max = a.a_n(std::max(1.0, n_hi));
    long long g = cfg.grid_override > 0 ? cfg.grid_override : next_pow2(std::max(3.0 * a_max, 2.5 * s + 8.0));
    double cells = std::pow(static_cast<double>(g), d);
    if (cells > static_cast<double>(cfg.max_cells))
        throw BudgetExceeded("renewal exact path: torus grid " + std::to_string(g) + "^d too large");

    TorusConvolver conv(d, static_cast<int>(g), [&](std::span<const long long> x) {
        static thread_local std::vector<long long> tmp;
        tmp.assign(x.begin(), x.end());
        return model.pmf(tmp);
    });
    std::vector<double> table = conv.window_table(n_lo, n_hi);
    double wrap = conv.boundary_level(table);

    double pref = std::pow(s, d) / a(s);
    std::vector<RenewalEstimate> out;
    std::vector<double> x(static_cast<size_t>(d));
    for (const auto& w : omegas) {
        RenewalEstimate e;
        e.s = s;
        e.omega = w;
        e.h = cell.h;
        e.n_lo = n_lo;
        e.n_hi = n_hi;
        e.method = "exact-convolution";
        for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] = s * w[static_cast<size_t>(i)];
        double p = 0.0;
        for (const auto& pt : cell.integer_points(x)) p += conv.lookup(table, pt);
        e.value = pref * p;
        e.stderr_or_bound = pref * wrap + conv.fold_deficit() * (n_hi - n_lo) * pref;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

std::vector<RenewalEstimate> renewal_sum_batch(const models::StepDistribution& model, const TargetCell& cell,
                                               double s, const std::vector<std::vector<double>>& omegas,
                                               double delta, double m_cut, const std::string& method,
                                               const RenewalConfig& cfg) {
    if (model.dim() <= model.alpha()) throw std::invalid_argument("renewal_sum: requires d > alpha");
    if (delta <= 0) throw std::invalid_argument("renewal_sum: delta must be positive");
    if (m_cut <= std::max(delta, 1.0)) throw std::invalid_argument("renewal_sum: M must exceed max(delta, 1)");
    const auto& a = model.norming();
    double n_lo = std::ceil(a(delta * s));
    double n_hi = std::ceil(a(m_cut * s));
    std::vector<RenewalEstimate> out = method == "exact-convolution"
                                           ? exact_window(model, cell, s, omegas, n_lo, n_hi, cfg)
                                           : mc_window(model, cell, s, omegas, n_lo, n_hi, cfg);
    double d = model.dim(), al = model.alpha();
    for (auto& e : out) {
        e.delta = delta;
        e.m_cut = m_cut;
        e.remainder_bound = std::pow(m_cut, al - d) / (d - al);
    }
    return out;
}

RenewalEstimate renewal_sum(const models::StepDistribution& model, const TargetCell& cell, double s,
                            const std::vector<double>& omega, double delta, double m_cut,
                            const std::string& method, const RenewalConfig& cfg) {
    return renewal_sum_batch(model, cell, s, {omega}, delta, m_cut, method, cfg)[0];
}

SmallNResult small_n_sum(const models::StepDistribution& model, const TargetCell& cell, double s,
                         const std::vector<std::vector<double>>& omegas, double delta,
                         const std::string& method, const RenewalConfig& cfg) {
    if (delta <= 0) throw std::invalid_argument("small_n_sum: delta must be positive");
    const auto& a = model.norming();
    double n_hi = std::ceil(a(delta * s));  // window [1, A(delta s)), ceil boundary as in the big-n split
    SmallNResult res;
    if (n_hi <= 1.0) {
        for (const auto& w : omegas) {
            RenewalEstimate e;
            e.s = s;
            e.omega = w;
            e.h = cell.h;
            e.delta = delta;
            e.n_lo = 1;
            e.n_hi = n_hi;
            e.method = method;
            res.per_omega.push_back(std::move(e));
        }
        return res;  // empty n-range: zero
    }
    res.per_omega = method == "exact-convolution" ? exact_window(model, cell, s, omegas, 1.0, n_hi, cfg)
                                                  : mc_window(model, cell, s, omegas, 1.0, n_hi, cfg);
    for (auto& e : res.per_omega) {
        e.delta = delta;
        res.sup_value = std::max(res.sup_value, e.value);
    }
    return res;
}

LltReport llt_check(const models::StepDistribution& model, const std::vector<double>& n_grid,
                    long long class_period, double radius_factor,
                    const std::function<double(const std::vector<double>&)>& psi_in, const RenewalConfig& cfg) {
    if (!model.is_lattice()) throw std::invalid_argument("llt_check: lattice model required");
    int d = model.dim();
    const auto& a = model.norming();
    std::function<double(const std::vector<double>&)> psi = psi_in;
    if (!psi) {
        stable::StableLaw limit = model.limit_law();
        if (limit.alpha != 2.0)
            throw std::invalid_argument("llt_check: supply psi for non-Gaussian limits");
        psi = [limit](const std::vector<double>& u) { return limit.gaussian_density(u); };
    }

    LltReport rep;
    double n_max = *std::max_element(n_grid.begin(), n_grid.end());
    long long g = cfg.grid_override > 0 ? cfg.grid_override
                                        : next_pow2(std::max(3.0 * radius_factor * a.a_n(n_max), 64.0));
    double cells = std::pow(static_cast<double>(g), d);
    if (cells > static_cast<double>(cfg.max_cells)) throw BudgetExceeded("llt_check: torus grid too large");
    TorusConvolver conv(d, static_cast<int>(g), [&](std::span<const long long> x) {
        static thread_local std::vector<long long> tmp;
        tmp.assign(x.begin(), x.end());
        return model.pmf(tmp);
    });

    for (double n : n_grid) {
        std::vector<double> table = conv.power_table(n);
        double an = a.a_n(n);
        double and_ = std::pow(an, d);
        long long r = static_cast<long long>(std::ceil(radius_factor * an));
        double gap = 0.0;
        std::vector<long long> y(static_cast<size_t>(d), -r);
        std::vector<double> u(static_cast<size_t>(d));
        double noise_floor = 1e-13 / and_;
        while (true) {
            double p = conv.lookup(table, y);
            bool in_class = p > noise_floor || class_period == 1;
            if (in_class) {
                for (int i = 0; i < d; ++i) u[static_cast<size_t>(i)] = static_cast<double>(y[static_cast<size_t>(i)]) / an;
                double want = static_cast<double>(class_period) * psi(u);
                gap = std::max(gap, std::abs(and_ * p - want));
            }
            int i = 0;
            for (; i < d; ++i) {
                if (y[static_cast<size_t>(i)] < r) {
                    ++y[static_cast<size_t>(i)];
                    break;
                }
                y[static_cast<size_t>(i)] = -r;
            }
            if (i == d) break;
        }
        rep.n_grid.push_back(n);
        rep.sup_gap.push_back(gap);
    }
    rep.decreasing = true;
    for (size_t i = 0; i + 1 < rep.sup_gap.size(); ++i)
        if (rep.sup_gap[i + 1] > rep.sup_gap[i]) rep.decreasing = false;
    return rep;
}

}  // namespace renewalkit::renewal
