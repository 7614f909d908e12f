#include "renewalkit/concentration.hpp"

#include "renewalkit/convolution.hpp"
#include "renewalkit/util/directions.hpp"
#include "renewalkit/util/parallel.hpp"
#include "renewalkit/util/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace renewalkit::concentration {

namespace {

double kernel_f0(double y) {
    if (y == 0.0) return 3.0 / (8.0 * M_PI);
    double u = std::sin(0.25 * y) / (0.25 * y);
    return 3.0 / (8.0 * M_PI) * u * u * u * u;
}

}  // namespace

double concentration_constant(int d) {
    // sup of 1/f over the half-cell by coarse grid plus golden-section
    // refinement along the diagonal (f decreases away from 0)
    double worst = 0.0;
    int grid = 17;
    for (int i = 0; i < grid; ++i) {
        double y = 0.5 * i / (grid - 1);
        worst = std::max(worst, 1.0 / kernel_f0(y));
    }
    double lo = 0.45, hi = 0.5;
    for (int it = 0; it < 60; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (1.0 / kernel_f0(m1) < 1.0 / kernel_f0(m2))
            lo = m1;
        else
            hi = m2;
    }
    worst = std::max(worst, 1.0 / kernel_f0(0.5 * (lo + hi)));
    double per_dim = worst / (2.0 * M_PI);
    // cross-check against the corner value of the monotone kernel
    double corner = 1.0 / (2.0 * M_PI * kernel_f0(0.5));
    if (std::abs(per_dim - corner) > 1e-8 * corner)
        throw std::logic_error("concentration_constant: refinement and corner value disagree");
    return std::pow(per_dim, d);
}

QEstimate concentration_function(const models::StepDistribution& model, double h, long mc_samples,
                                 uint64_t seed) {
    int d = model.dim();
    QEstimate q;
    if (model.is_lattice()) {
        // enumerate the support out to a radius holding all but ~1e-5 mass
        double radius = 1.0;
        while (model.tail(radius) > 1e-5 && radius < 4096) radius *= 2.0;
        std::vector<std::pair<std::vector<long long>, double>> pts;
        std::vector<long long> x(static_cast<size_t>(d), static_cast<long long>(-radius));
        double in_mass = 0.0;
        while (true) {
            double p = model.pmf(x);
            if (p > 0) {
                pts.push_back({x, p});
                in_mass += p;
            }
            int i = 0;
            for (; i < d; ++i) {
                if (x[static_cast<size_t>(i)] < static_cast<long long>(radius)) {
                    ++x[static_cast<size_t>(i)];
                    break;
                }
                x[static_cast<size_t>(i)] = static_cast<long long>(-radius);
            }
            if (i == d) break;
        }
        q.slack = std::max(0.0, 1.0 - in_mass);
        // sliding window: the sup is attained with a window whose closed lower
        // face touches support coordinates; scan anchor combinations
        std::vector<std::vector<long long>> anchors(static_cast<size_t>(d));
        for (const auto& [p, w] : pts)
            for (int i = 0; i < d; ++i) anchors[static_cast<size_t>(i)].push_back(p[static_cast<size_t>(i)]);
        for (auto& av : anchors) {
            std::sort(av.begin(), av.end());
            av.erase(std::unique(av.begin(), av.end()), av.end());
        }
        double best = 0.0;
        std::vector<size_t> idx(static_cast<size_t>(d), 0);
        std::vector<long long> base(static_cast<size_t>(d));
        while (true) {
            for (int i = 0; i < d; ++i) base[static_cast<size_t>(i)] = anchors[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
            double mass = 0.0;
            for (const auto& [p, w] : pts) {
                bool inside = true;
                for (int i = 0; i < d; ++i) {
                    double rel = static_cast<double>(p[static_cast<size_t>(i)] - base[static_cast<size_t>(i)]);
                    if (rel < 0.0 || rel >= h) inside = false;
                }
                if (inside) mass += w;
            }
            best = std::max(best, mass);
            int i = 0;
            for (; i < d; ++i) {
                if (++idx[static_cast<size_t>(i)] < anchors[static_cast<size_t>(i)].size()) break;
                idx[static_cast<size_t>(i)] = 0;
            }
            if (i == d) break;
        }
        q.value = best;
        return q;
    }
    // nonlattice: shifted-grid histogram; the histogram maximum under-counts
    // the sup by at most the shift resolution, folded into the slack with the
    // binomial error
    Rng rng(seed, 0xC0);
    std::vector<double> x(static_cast<size_t>(d));
    double best = 0.0;
    const int shifts = 3;
    std::vector<std::map<std::vector<long long>, long>> hist(shifts);
    for (long it = 0; it < mc_samples; ++it) {
        model.sample(rng, x);
        for (int sft = 0; sft < shifts; ++sft) {
            std::vector<long long> cell(static_cast<size_t>(d));
            for (int i = 0; i < d; ++i)
                cell[static_cast<size_t>(i)] = static_cast<long long>(
                    std::floor((x[static_cast<size_t>(i)] + h * sft / shifts) / h));
            ++hist[static_cast<size_t>(sft)][cell];
        }
    }
    for (const auto& hmap : hist)
        for (const auto& [cell, count] : hmap) best = std::max(best, static_cast<double>(count) / mc_samples);
    q.value = best;
    q.slack = 4.0 * std::sqrt(best * (1.0 - best) / static_cast<double>(mc_samples)) + 0.1 * best;
    return q;
}

ConcentrationCheck check_concentration(const models::StepDistribution& model, double h, double a,
                                       long mc_samples, uint64_t seed) {
    int d = model.dim();
    ConcentrationCheck chk;
    chk.model = model.name();
    chk.h = h;
    chk.a = a;
    QEstimate q = concentration_function(model, h, mc_samples, seed);
    chk.lhs = q.value;
    chk.lhs_slack = q.slack;

    // integral of |phi| over the sup-norm box by composite Gauss panels
    double integral = 0.0;
    GaussRule rule = gauss_legendre(12);
    int panels = std::max(8, static_cast<int>(std::ceil(4.0 * a)));
    if (d == 1) {
        for (int p = 0; p < panels; ++p) {
            double lo = -a + 2.0 * a * p / panels, hi = -a + 2.0 * a * (p + 1) / panels;
            for (size_t m = 0; m < rule.nodes.size(); ++m) {
                double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[m];
                integral += 0.5 * (hi - lo) * rule.weights[m] * std::abs(model.cf({t}));
            }
        }
    } else if (d == 2) {
        panels = std::min(panels, 48);
        for (int p1 = 0; p1 < panels; ++p1)
            for (int p2 = 0; p2 < panels; ++p2)
                for (size_t m1 = 0; m1 < rule.nodes.size(); ++m1)
                    for (size_t m2 = 0; m2 < rule.nodes.size(); ++m2) {
                        double w = a / panels * rule.weights[m1] * a / panels * rule.weights[m2];
                        double t1 = -a + a * (2.0 * p1 + 1.0 + rule.nodes[m1]) / panels;
                        double t2 = -a + a * (2.0 * p2 + 1.0 + rule.nodes[m2]) / panels;
                        integral += w * std::abs(model.cf({t1, t2}));
                    }
    } else {
        throw std::invalid_argument("check_concentration: wired for d <= 2");
    }
    double cd = concentration_constant(d);
    chk.rhs = cd * std::pow(std::max(1.0 / a, h), d) * integral;
    chk.margin = chk.rhs - (chk.lhs + chk.lhs_slack);
    chk.holds = chk.margin >= 0.0;
    return chk;
}

std::vector<ConcentrationCheck> check_concentration(const models::StepDistribution& model,
                                                    const std::vector<double>& h_list,
                                                    const std::vector<double>& a_list) {
    std::vector<ConcentrationCheck> out;
    for (double h : h_list)
        for (double a : a_list) out.push_back(check_concentration(model, h, a));
    return out;
}

LdpRay check_local_ldp_ray(const models::StepDistribution& model, double n, double s,
                           const std::vector<double>& omega, const std::vector<double>& rho_grid,
                           const LdpConfig& cfg) {
    int d = model.dim();
    LdpRay ray;
    ray.omega = omega;
    ray.n = n;
    ray.s = s;
    ray.rho = rho_grid;
    long n_steps = static_cast<long>(n);
    if (n_steps == 0) {
        // P(S_0 in x + h I_d, .) = 1{-x in h I_d}: exact, no sampling
        for (double rho : rho_grid) {
            bool hit = true;
            for (int i = 0; i < d; ++i) {
                double xi = -rho * omega[static_cast<size_t>(i)];
                if (xi < 0.0 || xi >= cfg.h) hit = false;
            }
            ray.log_prob.push_back(hit ? 0.0 : -std::numeric_limits<double>::infinity());
            ray.stderr_log.push_back(0.0);
        }
        return ray;
    }

    struct Acc {
        std::vector<long> hits;
        long paths = 0;
    };
    const long block = 4096;
    long n_blocks = (cfg.paths + block - 1) / block;
    size_t nr = rho_grid.size();
    auto run = [&](long b) {
        Acc acc;
        acc.hits.assign(nr, 0);
        Rng rng(cfg.seed, 0x7D0000 + static_cast<uint64_t>(b));
        std::vector<double> pos(static_cast<size_t>(d)), step(static_cast<size_t>(d));
        long in_block = std::min<long>(block, cfg.paths - b * block);
        for (long p = 0; p < in_block; ++p) {
            std::fill(pos.begin(), pos.end(), 0.0);
            bool alive = true;
            for (long k = 0; k < n_steps; ++k) {
                model.sample(rng, step);
                double r = norm2(step);
                if (r > s) {
                    alive = false;
                    // burn the rest of the stream deterministically
                    for (long k2 = k + 1; k2 < n_steps; ++k2) model.sample(rng, step);
                    break;
                }
                for (int i = 0; i < d; ++i) pos[static_cast<size_t>(i)] += step[static_cast<size_t>(i)];
            }
            ++acc.paths;
            if (!alive) continue;
            for (size_t j = 0; j < nr; ++j) {
                bool hit = true;
                for (int i = 0; i < d; ++i) {
                    double rel = pos[static_cast<size_t>(i)] - rho_grid[j] * omega[static_cast<size_t>(i)];
                    if (rel < 0.0 || rel >= cfg.h) hit = false;
                }
                if (hit) ++acc.hits[j];
            }
        }
        return acc;
    };
    auto merge = [&](Acc& a, const Acc& b) {
        if (a.hits.empty()) {
            a = b;
            return;
        }
        for (size_t j = 0; j < nr; ++j) a.hits[j] += b.hits[j];
        a.paths += b.paths;
    };
    Acc acc = parallel_blocks<Acc>(n_blocks, cfg.threads, run, merge);

    ray.min_count = *std::min_element(acc.hits.begin(), acc.hits.end());
    if (ray.min_count < 10)
        throw models::MonteCarloBudget("check_local_ldp_ray: fewer than 10 hits at the far cell");
    std::vector<double> xs, ys;
    for (size_t j = 0; j < nr; ++j) {
        double p = static_cast<double>(acc.hits[j]) / static_cast<double>(acc.paths);
        ray.log_prob.push_back(std::log(p));
        ray.stderr_log.push_back(std::sqrt((1.0 - p) / (p * static_cast<double>(acc.paths))));
        xs.push_back(rho_grid[j] / s);
        ys.push_back(std::log(p));
    }
    LineFit fit = least_squares(xs, ys);
    ray.slope = fit.slope;
    ray.r_squared = fit.r_squared;
    return ray;
}

double sup_cell_probability(const models::StepDistribution& model, double n, long long grid) {
    if (!model.is_lattice() || !model.symmetric())
        throw std::invalid_argument("sup_cell_probability: symmetric lattice walks only");
    int d = model.dim();
    const auto& a = model.norming();
    if (grid <= 0) {
        grid = 64;
        while (grid < 6.0 * a.a_n(n)) grid *= 2;
    }
    renewal::TorusConvolver conv(d, static_cast<int>(grid), [&](std::span<const long long> x) {
        std::vector<long long> v(x.begin(), x.end());
        return model.pmf(v);
    });
    auto table = conv.power_table(n);
    double mx = 0.0;
    for (double v : table) mx = std::max(mx, v);
    return mx;
}

}  // namespace renewalkit::concentration
