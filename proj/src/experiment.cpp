#include "renewalkit/experiment.hpp"

#include "renewalkit/concentration.hpp"
#include "renewalkit/criteria.hpp"
#include "renewalkit/exact_lattice.hpp"
#include "renewalkit/io.hpp"
#include "renewalkit/renewal.hpp"
#include "renewalkit/stable_law.hpp"
#include "renewalkit/step_models.hpp"
#include "renewalkit/util/directions.hpp"
#include "renewalkit/util/fit.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <sstream>

namespace renewalkit::experiment {

namespace {

using json = nlohmann::json;

stable::StableLaw stable_from_json(const json& j) {
    stable::StableLaw law;
    law.d = j.at("d").get<int>();
    law.alpha = j.at("alpha").get<double>();
    law.C = j.value("C", 1.0);
    std::string kind = j.value("spectral", "isotropic");
    if (kind == "isotropic") {
        law.spectral = stable::SpectralMeasure::isotropic();
    } else if (kind == "product") {
        std::vector<std::pair<std::vector<double>, double>> atoms;
        for (int i = 0; i < law.d; ++i)
            for (double s : {1.0, -1.0}) {
                std::vector<double> e(static_cast<size_t>(law.d), 0.0);
                e[static_cast<size_t>(i)] = s;
                atoms.push_back({e, 1.0});
            }
        law.spectral = stable::SpectralMeasure::atoms(atoms);
    } else if (kind == "atoms") {
        std::vector<std::pair<std::vector<double>, double>> atoms;
        for (const auto& ja : j.at("atoms")) {
            std::vector<double> dir;
            for (const auto& c : ja.at("direction")) dir.push_back(c.get<double>());
            atoms.push_back({dir, ja.at("weight").get<double>()});
        }
        law.spectral = stable::SpectralMeasure::atoms(atoms);
    } else {
        throw SpecInvalid("stable.spectral must be isotropic | product | atoms");
    }
    if (j.contains("tau")) {
        for (const auto& c : j["tau"]) law.tau.push_back(c.get<double>());
    }
    law.validate();
    return law;
}

struct Context {
    json spec;
    std::string out_dir;
    uint64_t seed = 0;
    int threads = 1;
    long max_samples = 2'000'000;
    long max_nodes = 120'000'000;
    std::vector<std::string> artifacts;

    void emit(const std::string& name, const std::string& bytes) {
        io::write_file(out_dir + "/" + name, bytes);
        artifacts.push_back(name);
    }
    void emit(const std::string& name, const std::vector<unsigned char>& bytes) {
        io::write_file(out_dir + "/" + name, std::string(bytes.begin(), bytes.end()));
        artifacts.push_back(name);
    }
};

void run_decompose(Context& ctx) {
    lattice::LatticeLaw law = lattice::lattice_law_from_json(ctx.spec.at("law").dump());
    lattice::LatticeDecomposition dec = lattice::decompose(law);
    ctx.emit("decomposition.json", lattice::decomposition_to_json(dec, law.symbols));
}

void run_density(Context& ctx) {
    stable::StableLaw law = stable_from_json(ctx.spec.at("stable"));
    stable::DensityGridConfig cfg;
    cfg.extent = ctx.spec.value("extent", 5.0);
    cfg.spacing = ctx.spec.value("spacing", 0.25);
    cfg.max_nodes = ctx.max_nodes;
    stable::DensityGrid grid = stable::density(law, cfg);
    ctx.emit("density.csv", grid.to_csv());
    ctx.emit("density.bin", grid.to_binary());
    json meta;
    meta["d"] = grid.d;
    meta["n"] = grid.n;
    meta["spacing"] = grid.spacing;
    meta["extent"] = grid.extent;
    meta["period"] = grid.period;
    meta["period_mass"] = grid.period_mass;
    meta["truncation_error"] = grid.truncation_error;
    meta["alias_error"] = grid.alias_error;
    ctx.emit("density_meta.json", meta.dump(2));
}

void run_rho(Context& ctx) {
    stable::StableLaw law = stable_from_json(ctx.spec.at("stable"));
    long q = ctx.spec.value("q", 1);
    std::vector<double> deltas;
    for (const auto& dv : ctx.spec.at("deltas")) deltas.push_back(dv.get<double>());
    int omega_count = ctx.spec.value("omegas", 16);
    bool product_ray = ctx.spec.value("product_ray", false);
    std::unique_ptr<stable::SymStable1D> one;
    if (product_ray) one = std::make_unique<stable::SymStable1D>(law.alpha);

    auto omegas = direction_set(law.d, omega_count, ctx.seed);
    std::ostringstream csv;
    for (int i = 0; i < law.d; ++i) csv << "omega" << i + 1 << ",";
    csv << "delta,value,infinite,tail_estimate,fitted_ray_exponent\n";
    for (const auto& w : omegas) {
        std::function<double(double)> ray;
        if (product_ray) ray = [&](double u) { return one->product_ray_value(w, u); };
        for (double delta : deltas) {
            stable::RhoResult r = stable::rho(law, q, w, delta, {}, ray);
            for (double c : w) csv << io::fmt(c) << ",";
            csv << io::fmt(delta) << "," << io::fmt(r.value) << "," << (r.infinite ? 1 : 0) << ","
                << io::fmt(r.tail_estimate) << "," << io::fmt(r.fitted_ray_exponent) << "\n";
        }
    }
    ctx.emit("rho.csv", csv.str());
}

renewal::TargetCell cell_from_spec(const json& spec, const models::StepDistribution& model) {
    double h = spec.value("h", 1.0);
    std::string type = spec.contains("cell") ? spec["cell"].value("type", "lattice") : "lattice";
    if (type == "cube" || !model.is_lattice()) return renewal::TargetCell::cube(model.dim(), h);
    renewal::TargetCell cell =
        renewal::TargetCell::lattice(model.dim(), model.dim(), 1, IntMat::identity(model.dim()));
    cell.h = h;
    return cell;
}

void run_renewal(Context& ctx) {
    auto model = models::model_from_json(ctx.spec.at("model").dump());
    renewal::TargetCell cell = cell_from_spec(ctx.spec, *model);
    double delta = ctx.spec.at("delta").get<double>();
    double m_cut = ctx.spec.at("M").get<double>();
    std::string method = ctx.spec.value("method", "exact-convolution");
    int omega_count = ctx.spec.value("omegas", 16);
    bool predict = ctx.spec.value("predict", false);
    auto omegas = direction_set(model->dim(), omega_count, ctx.seed);

    renewal::RenewalConfig rcfg;
    rcfg.seed = ctx.seed;
    rcfg.threads = ctx.threads;
    rcfg.paths = ctx.max_samples;
    rcfg.max_cells = ctx.max_nodes;

    stable::StableLaw limit = model->limit_law();
    std::ostringstream jsonl, csv;
    csv << "s,omega_idx,value,stderr_or_bound,remainder_bound,method";
    if (predict) csv << ",prediction,ratio";
    csv << "\n";
    for (const auto& sv : ctx.spec.at("s_list")) {
        double s = sv.get<double>();
        auto est = renewal::renewal_sum_batch(*model, cell, s, omegas, delta, m_cut, method, rcfg);
        for (size_t i = 0; i < est.size(); ++i) {
            json row;
            row["s"] = est[i].s;
            row["omega"] = est[i].omega;
            row["h"] = est[i].h;
            row["delta"] = est[i].delta;
            row["M"] = est[i].m_cut;
            row["value"] = est[i].value;
            row["stderr_or_truncation_bound"] = est[i].stderr_or_bound;
            row["remainder_bound"] = est[i].remainder_bound;
            row["n_range"] = {est[i].n_lo, est[i].n_hi};
            row["method"] = est[i].method;
            jsonl << row.dump() << "\n";
            csv << io::fmt(s) << "," << i << "," << io::fmt(est[i].value) << ","
                << io::fmt(est[i].stderr_or_bound) << "," << io::fmt(est[i].remainder_bound) << "," << method;
            if (predict) {
                stable::RhoResult rd = stable::rho(limit, 1, omegas[i], delta);
                stable::RhoResult rm = stable::rho(limit, 1, omegas[i], m_cut);
                double pred = rd.value - rm.value;
                csv << "," << io::fmt(pred) << "," << io::fmt(est[i].value / pred);
            }
            csv << "\n";
        }
    }
    ctx.emit("renewal.jsonl", jsonl.str());
    ctx.emit("renewal_sweep.csv", csv.str());
}

void run_small_n(Context& ctx) {
    auto model = models::model_from_json(ctx.spec.at("model").dump());
    renewal::TargetCell cell = cell_from_spec(ctx.spec, *model);
    std::string method = ctx.spec.value("method", "monte-carlo");
    int omega_count = ctx.spec.value("omegas", 16);
    auto omegas = direction_set(model->dim(), omega_count, ctx.seed);
    renewal::RenewalConfig rcfg;
    rcfg.seed = ctx.seed;
    rcfg.threads = ctx.threads;
    rcfg.paths = ctx.max_samples;
    rcfg.max_cells = ctx.max_nodes;

    std::ostringstream csv;
    csv << "delta,s,sup_value\n";
    for (const auto& dv : ctx.spec.at("deltas"))
        for (const auto& sv : ctx.spec.at("s_list")) {
            double delta = dv.get<double>(), s = sv.get<double>();
            renewal::SmallNResult r = renewal::small_n_sum(*model, cell, s, omegas, delta, method, rcfg);
            csv << io::fmt(delta) << "," << io::fmt(s) << "," << io::fmt(r.sup_value) << "\n";
        }
    ctx.emit("small_n.csv", csv.str());
}

void run_criterion(Context& ctx, const std::string& artifact_prefix = "criterion") {
    auto model = models::model_from_json(ctx.spec.at("model").dump());
    criteria::CriterionConfig cfg;
    if (ctx.spec.contains("theta")) cfg.theta = ctx.spec["theta"].get<double>();
    if (ctx.spec.contains("eta")) cfg.eta = ctx.spec["eta"].get<double>();
    cfg.chi = ctx.spec.value("chi", 1.0);
    cfg.h = ctx.spec.value("h", 1.0);
    if (ctx.spec.contains("deltas")) {
        cfg.deltas.clear();
        for (const auto& dv : ctx.spec["deltas"]) cfg.deltas.push_back(dv.get<double>());
    }
    if (ctx.spec.contains("s_ladder")) {
        cfg.s_ladder.clear();
        for (const auto& sv : ctx.spec["s_ladder"]) cfg.s_ladder.push_back(sv.get<double>());
    }
    cfg.directions = ctx.spec.value("directions", 16);
    criteria::CriterionReport rep = criteria::criterion_sum(*model, cfg);

    std::ostringstream csv;
    csv << "delta,s,normalized\n";
    for (size_t di = 0; di < cfg.deltas.size(); ++di)
        for (size_t si = 0; si < cfg.s_ladder.size(); ++si)
            csv << io::fmt(cfg.deltas[di]) << "," << io::fmt(cfg.s_ladder[si]) << ","
                << io::fmt(rep.normalized[di][si]) << "\n";
    ctx.emit(artifact_prefix + "_sweep.csv", csv.str());

    json out;
    out["model"] = model->name();
    out["exponent"] = rep.exponent;
    out["exponent_stderr"] = rep.exponent_stderr;
    out["exponent_per_s"] = rep.exponent_per_s;
    out["bounded_in_s"] = rep.bounded_in_s;
    out["verdict"] = rep.verdict;
    out["theta"] = rep.config.theta;
    out["eta"] = rep.config.eta;
    out["chi"] = rep.config.chi;
    ctx.emit(artifact_prefix + ".json", out.dump(2));
}

int run_concentration(Context& ctx) {
    json out = json::array();
    bool violated = false;
    auto record = [&](const concentration::ConcentrationCheck& chk) {
        json row;
        row["model"] = chk.model;
        row["h"] = chk.h;
        row["a"] = chk.a;
        row["lhs"] = chk.lhs;
        row["lhs_slack"] = chk.lhs_slack;
        row["rhs"] = chk.rhs;
        row["margin"] = chk.margin;
        row["holds"] = chk.holds;
        out.push_back(row);
        violated = violated || !chk.holds;
    };
    if (ctx.spec.contains("model")) {
        auto model = models::model_from_json(ctx.spec.at("model").dump());
        for (const auto& hv : ctx.spec.at("h_list"))
            for (const auto& av : ctx.spec.at("a_list"))
                record(concentration::check_concentration(*model, hv.get<double>(), av.get<double>(),
                                                          ctx.max_samples, ctx.seed));
    }
    int random_cases = ctx.spec.value("random_cases", 0);
    Rng rng(ctx.seed, 0xCC);
    for (int i = 0; i < random_cases; ++i) {
        int d = 1 + static_cast<int>(rng.below(2));
        std::vector<std::pair<std::vector<long long>, double>> atoms;
        int m = 2 + static_cast<int>(rng.below(6));
        for (int k = 0; k < m; ++k) {
            std::vector<long long> p(static_cast<size_t>(d));
            for (auto& c : p) c = static_cast<long long>(rng.below(9)) - 4;
            double w = 0.05 + rng.uniform();
            bool dup = false;
            for (auto& [q, wq] : atoms)
                if (q == p) {
                    wq += w;
                    dup = true;
                }
            if (!dup) atoms.push_back({p, w});
        }
        models::FiniteLattice law(d, atoms, "random" + std::to_string(i));
        double h = 0.5 + rng.uniform() * 2.5;
        double a = 0.2 + rng.uniform() * 5.0;
        record(concentration::check_concentration(law, h, a));
    }
    ctx.emit("concentration.json", out.dump(2));
    return violated ? 4 : 0;
}

void run_ldp(Context& ctx) {
    auto model = models::model_from_json(ctx.spec.at("model").dump());
    concentration::LdpConfig cfg;
    cfg.h = ctx.spec.value("h", 1.0);
    cfg.paths = ctx.max_samples;
    cfg.threads = ctx.threads;
    cfg.seed = ctx.seed;
    std::vector<double> rho;
    for (const auto& rv : ctx.spec.at("rho_grid")) rho.push_back(rv.get<double>());
    int ray_count = ctx.spec.value("rays", 4);
    auto omegas = direction_set(model->dim(), ray_count, ctx.seed);
    double n = ctx.spec.at("n").get<double>();

    json out = json::array();
    std::ostringstream csv;
    csv << "ray,s,rho,log_prob,stderr_log\n";
    for (const auto& sv : ctx.spec.at("s_list")) {
        double s = sv.get<double>();
        for (size_t w = 0; w < omegas.size(); ++w) {
            concentration::LdpRay ray = concentration::check_local_ldp_ray(*model, n, s, omegas[w], rho, cfg);
            json row;
            row["omega"] = ray.omega;
            row["n"] = ray.n;
            row["s"] = ray.s;
            row["slope"] = ray.slope;
            row["r_squared"] = ray.r_squared;
            row["min_count"] = ray.min_count;
            out.push_back(row);
            for (size_t j = 0; j < rho.size(); ++j)
                csv << w << "," << io::fmt(s) << "," << io::fmt(rho[j]) << "," << io::fmt(ray.log_prob[j])
                    << "," << io::fmt(ray.stderr_log[j]) << "\n";
        }
    }
    ctx.emit("ldp.json", out.dump(2));
    ctx.emit("ldp_rays.csv", csv.str());
}

int run_example21(Context& ctx) {
    int d = ctx.spec.value("d", 2);
    criteria::CriterionConfig base;
    base.chi = ctx.spec.value("chi", 1.0);
    base.deltas = {ctx.spec.value("delta", 0.25)};
    base.s_ladder.clear();
    if (ctx.spec.contains("s_ladder"))
        for (const auto& sv : ctx.spec["s_ladder"]) base.s_ladder.push_back(sv.get<double>());
    else
        base.s_ladder = {1e3, 3e3, 1e4, 3e4, 1e5, 3e5};
    base.directions = ctx.spec.value("directions", 8);

    models::WilliamsonModified log_model(d, models::BkSpec{models::BkSpec::Kind::Log});
    models::WilliamsonModified logsq_model(d, models::BkSpec{models::BkSpec::Kind::LogSq});
    criteria::CriterionReport rep_log = criteria::criterion_sum(log_model, base);
    criteria::CriterionReport rep_logsq = criteria::criterion_sum(logsq_model, base);

    std::ostringstream csv;
    csv << "s,normalized_bk_log,normalized_bk_logsq\n";
    bool ordering = true;
    for (size_t si = 0; si < base.s_ladder.size(); ++si) {
        double a = rep_log.normalized[0][si], b = rep_logsq.normalized[0][si];
        if (base.s_ladder[si] >= 1e3 && b >= a) ordering = false;
        csv << io::fmt(base.s_ladder[si]) << "," << io::fmt(a) << "," << io::fmt(b) << "\n";
    }
    ctx.emit("example21.csv", csv.str());

    // trend of the (ln k)^2 curve along s: slope of log-normalized vs log-s
    std::vector<double> lx, ly, lz;
    for (size_t si = 0; si < base.s_ladder.size(); ++si) {
        lx.push_back(std::log(base.s_ladder[si]));
        ly.push_back(std::log(rep_logsq.normalized[0][si]));
        lz.push_back(std::log(rep_log.normalized[0][si]));
    }
    LineFit fit_sq = least_squares(lx, ly);
    LineFit fit_log = least_squares(lx, lz);
    json out;
    out["bk_logsq_slope"] = fit_sq.slope;
    out["bk_log_slope"] = fit_log.slope;
    out["bk_logsq_trending_zero"] = fit_sq.slope < -0.01;
    out["ordering_strict"] = ordering;
    ctx.emit("example21.json", out.dump(2));
    return (fit_sq.slope < -0.01 && ordering) ? 0 : 4;
}

int run_example22(Context& ctx) {
    double alpha = ctx.spec.value("alpha", 1.5);
    int d = ctx.spec.value("d", 2);
    json model_spec{{"family", "product_stable"}, {"d", d}, {"alpha", alpha}};
    ctx.spec["model"] = model_spec;
    if (!ctx.spec.contains("eta")) ctx.spec["eta"] = 1.0 / 6.0;
    if (!ctx.spec.contains("deltas")) ctx.spec["deltas"] = {0.003, 0.006, 0.012, 0.024};
    if (!ctx.spec.contains("s_ladder")) ctx.spec["s_ladder"] = {6000.0, 20000.0};
    run_criterion(ctx, "example22");
    // annotate with the predicted exponent
    json rep = json::parse(io::read_file(ctx.out_dir + "/example22.json"));
    double expected = 2.0 * alpha - d + 1.0;
    rep["expected_exponent"] = expected;
    rep["exponent_gap"] = std::abs(rep["exponent"].get<double>() - expected);
    io::write_file(ctx.out_dir + "/example22.json", rep.dump(2));
    return rep["exponent_gap"].get<double>() < 0.15 ? 0 : 4;
}

}  // namespace

RunResult run(const std::string& spec_text, const std::string& out_dir) {
    RunResult res;
    json spec;
    Context ctx;
    try {
        spec = json::parse(spec_text);
        if (!spec.contains("scenario")) throw SpecInvalid("spec needs a scenario");
        if (!spec.contains("seed")) throw SpecInvalid("spec needs a seed (reproducibility)");
        ctx.spec = spec;
        ctx.out_dir = out_dir;
        ctx.seed = spec["seed"].get<uint64_t>();
        ctx.threads = spec.value("threads", 1);
        if (spec.contains("budget")) {
            ctx.max_samples = spec["budget"].value("max_samples", ctx.max_samples);
            ctx.max_nodes = spec["budget"].value("max_nodes", ctx.max_nodes);
        }
        std::filesystem::create_directories(out_dir);
    } catch (const std::exception& e) {
        res.exit_code = 2;
        res.status = "spec-error";
        res.message = e.what();
        return res;
    }

    std::string scenario = spec["scenario"].get<std::string>();
    int verdict_code = 0;
    try {
        if (scenario == "decompose")
            run_decompose(ctx);
        else if (scenario == "density")
            run_density(ctx);
        else if (scenario == "rho")
            run_rho(ctx);
        else if (scenario == "renewal")
            run_renewal(ctx);
        else if (scenario == "small-n")
            run_small_n(ctx);
        else if (scenario == "criterion")
            run_criterion(ctx);
        else if (scenario == "concentration")
            verdict_code = run_concentration(ctx);
        else if (scenario == "ldp")
            run_ldp(ctx);
        else if (scenario == "example-2.1")
            verdict_code = run_example21(ctx);
        else if (scenario == "example-2.2")
            verdict_code = run_example22(ctx);
        else
            throw SpecInvalid("unknown scenario " + scenario);
        res.status = verdict_code == 0 ? "ok" : "verdict-failure";
        res.exit_code = verdict_code;
    } catch (const SpecInvalid& e) {
        res.exit_code = 2;
        res.status = "spec-error";
        res.message = e.what();
        return res;
    } catch (const QuadratureBudgetExceeded& e) {
        res.exit_code = 3;
        res.status = "budget";
        res.message = e.what();
    } catch (const models::MonteCarloBudget& e) {
        res.exit_code = 3;
        res.status = "budget";
        res.message = e.what();
    } catch (const renewal::BudgetExceeded& e) {
        res.exit_code = 3;
        res.status = "budget";
        res.message = e.what();
    }

    // manifest with digests, always written (partial artifacts kept on errors)
    json manifest;
    manifest["tool"] = "renewalkit";
    manifest["version"] = "0.1.0";
    manifest["scenario"] = scenario;
    manifest["seed"] = ctx.seed;
    manifest["spec"] = spec;
    manifest["spec_sha256"] = io::sha256_hex(spec.dump());
    manifest["status"] = res.status;
    manifest["message"] = res.message;
    auto now = std::chrono::system_clock::now().time_since_epoch();
    manifest["created_unix_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    json arts = json::array();
    for (const auto& name : ctx.artifacts) {
        std::string bytes = io::read_file(out_dir + "/" + name);
        json a;
        a["path"] = name;
        a["sha256"] = io::sha256_hex(bytes);
        a["bytes"] = bytes.size();
        arts.push_back(a);
    }
    manifest["artifacts"] = arts;
    res.manifest_path = out_dir + "/manifest.json";
    io::write_file(res.manifest_path, manifest.dump(2));
    res.artifacts = ctx.artifacts;
    return res;
}

ReplayResult replay(const std::string& manifest_path, const std::string& spec_override_text) {
    ReplayResult res;
    json manifest = json::parse(io::read_file(manifest_path));
    std::string dir = std::filesystem::path(manifest_path).parent_path().string();
    if (dir.empty()) dir = ".";

    for (const auto& a : manifest.at("artifacts")) {
        std::string path = dir + "/" + a.at("path").get<std::string>();
        std::string want = a.at("sha256").get<std::string>();
        std::string got = io::sha256_file(path);
        if (got != want)
            throw DigestMismatch("digest mismatch for " + a.at("path").get<std::string>() + ": recorded " +
                                 want + ", found " + got);
    }

    json spec = manifest.at("spec");
    if (!spec_override_text.empty()) {
        json over = json::parse(spec_override_text);
        if (over.value("seed", ~spec["seed"].get<uint64_t>()) != spec["seed"].get<uint64_t>()) {
            res.comparable = false;
            res.message = "override spec uses a different seed: streams are not comparable";
            return res;
        }
        spec = over;
    }

    std::string tmp = dir + "/.replay_tmp";
    std::filesystem::remove_all(tmp);
    RunResult rerun = run(spec.dump(), tmp);
    for (const auto& a : manifest.at("artifacts")) {
        std::string name = a.at("path").get<std::string>();
        std::string fresh = tmp + "/" + name;
        if (!std::filesystem::exists(fresh))
            throw DigestMismatch("replay did not regenerate " + name);
        if (io::sha256_file(fresh) != a.at("sha256").get<std::string>())
            throw DigestMismatch("replay produced different bytes for " + name);
    }
    std::filesystem::remove_all(tmp);
    res.message = "all artifacts verified and reproduced bit-exact";
    (void)rerun;
    return res;
}

std::string schema_text() {
    json s;
    s["scenario"] = "decompose | density | rho | renewal | small-n | criterion | concentration | ldp | "
                    "example-2.1 | example-2.2";
    s["seed"] = "uint64, required: master seed for every random stream";
    s["threads"] = "int, default 1; results are identical for any value";
    s["budget"] = {{"max_samples", "long, Monte Carlo path budget"},
                   {"max_nodes", "long, quadrature / grid node budget"},
                   {"wall_clock_hint_s", "advisory only"}};
    s["model"] = {{"family", "williamson | product_stable | pareto_lattice | finite_lattice | pareto_density"},
                  {"d", "dimension"},
                  {"alpha", "stable exponent where applicable"},
                  {"b_k", "{kind: const|log|log_sq, value}"},
                  {"atoms", "finite_lattice: [{point:[..], mass}]"}};
    s["law"] = "decompose: {dim, symbols:{name:value}, atoms:[{point:[rat or {rat,irr}], mass:\"p/q\"}]}";
    s["stable"] = {{"d", "dimension"},
                   {"alpha", "(0,2]"},
                   {"C", "scale"},
                   {"spectral", "isotropic | product | atoms"},
                   {"atoms", "[{direction:[..], weight}]"}};
    s["density"] = {{"extent", "grid covers |x_i| <= extent"}, {"spacing", "output spacing bound"}};
    s["rho"] = {{"q", "lattice period factor"}, {"deltas", "ladder; 0 = improper"}, {"omegas", "direction count"},
                {"product_ray", "bool: product-law fast path"}};
    s["renewal"] = {{"s_list", "[s]"}, {"delta", "window start"}, {"M", "window end"},
                    {"method", "exact-convolution | monte-carlo"}, {"predict", "bool: compare against the radial limit"}};
    s["small-n"] = {{"s_list", "[s]"}, {"deltas", "[delta]"}, {"method", "as above"}};
    s["criterion"] = {{"theta", "0 < theta < 1/kappa (auto)"}, {"eta", "slab parameter (auto)"},
                      {"chi", "tilt constant, default 1"}, {"deltas", "ladder"}, {"s_ladder", "ladder"}};
    s["concentration"] = {{"h_list", "[h]"}, {"a_list", "[a]"}, {"random_cases", "extra randomized laws"}};
    s["ldp"] = {{"n", "steps"}, {"s_list", "truncation levels"}, {"rho_grid", "|x| along rays"}, {"rays", "count"}};
    s["exit_codes"] = {{"0", "ok"}, {"2", "spec error"}, {"3", "budget exhausted"}, {"4", "verdict failure"}};
    return s.dump(2);
}

}  // namespace renewalkit::experiment
