#include "renewalkit/concentration.hpp"
#include "renewalkit/criteria.hpp"
#include "renewalkit/exact_lattice.hpp"
#include "renewalkit/experiment.hpp"
#include "renewalkit/renewal.hpp"
#include "renewalkit/stable_law.hpp"
#include "renewalkit/step_models.hpp"
#include "renewalkit/util/directions.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace renewalkit;

namespace {

stable::StableLaw make_isotropic(int d, double alpha, double c) { return stable::isotropic_law(d, alpha, c); }

std::unique_ptr<models::StepDistribution> make_model(const std::string& json_text) {
    return models::model_from_json(json_text);
}

}  // namespace

PYBIND11_MODULE(_renewalkit, m) {
    m.doc() = "Lattice decomposition, stable laws, and renewal-sum estimation";

    // ---- exact lattice ----
    m.def(
        "decompose",
        [](const std::string& law_json) {
            lattice::LatticeLaw law = lattice::lattice_law_from_json(law_json);
            lattice::LatticeDecomposition dec = lattice::decompose(law);
            return lattice::decomposition_to_json(dec, law.symbols);
        },
        py::arg("law_json"), "Canonical lattice decomposition of a finitely presented law (JSON in/out)");

    m.def(
        "smith_normal_form",
        [](const std::vector<std::vector<long long>>& rows) {
            if (rows.empty()) throw std::invalid_argument("empty matrix");
            IntMat mat(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
            for (size_t i = 0; i < rows.size(); ++i)
                for (size_t j = 0; j < rows[i].size(); ++j) mat(static_cast<int>(i), static_cast<int>(j)) = Int(rows[i][j]);
            SmithResult r = smith_normal_form(mat);
            auto to_py = [](const IntMat& a) {
                std::vector<std::vector<long long>> out(static_cast<size_t>(a.rows()));
                for (int i = 0; i < a.rows(); ++i)
                    for (int j = 0; j < a.cols(); ++j) out[static_cast<size_t>(i)].push_back(a(i, j).convert_to<long long>());
                return out;
            };
            return py::make_tuple(to_py(r.u), to_py(r.s), to_py(r.v));
        },
        py::arg("matrix"), "U, S, V with U*M*V = S diagonal in a divisibility chain");

    m.def(
        "is_aperiodic",
        [](const std::vector<std::vector<long long>>& support) {
            std::vector<std::vector<Int>> pts;
            for (const auto& p : support) {
                std::vector<Int> v;
                for (long long c : p) v.push_back(Int(c));
                pts.push_back(std::move(v));
            }
            lattice::AperiodicityReport rep = lattice::is_aperiodic(pts);
            py::dict out;
            out["aperiodic"] = rep.aperiodic;
            out["strongly_aperiodic"] = rep.strongly_aperiodic;
            out["q"] = rep.q.convert_to<long long>();
            out["p"] = rep.p.convert_to<long long>();
            if (!rep.failing_t.empty()) {
                std::vector<std::string> t;
                for (const auto& c : rep.failing_t) t.push_back(to_string(c));
                out["failing_t"] = t;
            }
            return out;
        },
        py::arg("support"), "Aperiodicity of a Z^nu-supported law with the constructive witness");

    // ---- stable laws ----
    py::class_<stable::StableLaw>(m, "StableLaw")
        .def_readonly("alpha", &stable::StableLaw::alpha)
        .def_readonly("C", &stable::StableLaw::C)
        .def_readonly("d", &stable::StableLaw::d)
        .def("cf",
             [](const stable::StableLaw& law, const std::vector<double>& t) {
                 auto v = law.cf(t);
                 return py::make_tuple(v.real(), v.imag());
             })
        .def("gaussian_density", &stable::StableLaw::gaussian_density);

    m.def("isotropic_law", &make_isotropic, py::arg("d"), py::arg("alpha"), py::arg("C") = 1.0);

    m.def(
        "density_grid",
        [](const stable::StableLaw& law, double extent, double spacing) {
            stable::DensityGridConfig cfg;
            cfg.extent = extent;
            cfg.spacing = spacing;
            stable::DensityGrid g = stable::density(law, cfg);
            py::dict out;
            out["n"] = g.n;
            out["spacing"] = g.spacing;
            out["extent"] = g.extent;
            out["values"] = g.values;
            out["error_estimate"] = g.error_estimate();
            out["period_mass"] = g.period_mass;
            return out;
        },
        py::arg("law"), py::arg("extent") = 5.0, py::arg("spacing") = 0.25);

    m.def(
        "rho",
        [](const stable::StableLaw& law, long q, const std::vector<double>& omega, double delta) {
            stable::RhoResult r = stable::rho(law, q, omega, delta);
            py::dict out;
            out["value"] = r.value;
            out["infinite"] = r.infinite;
            out["tail_estimate"] = r.tail_estimate;
            return out;
        },
        py::arg("law"), py::arg("q"), py::arg("omega"), py::arg("delta"),
        "Partial-radial limit: (alpha/q) * integral of psi(u omega) u^{d-alpha-1} on (0, 1/delta]");

    // ---- models and renewal sums ----
    py::class_<models::StepDistribution>(m, "StepDistribution")
        .def("name", &models::StepDistribution::name)
        .def("dim", &models::StepDistribution::dim)
        .def("alpha", &models::StepDistribution::alpha)
        .def("tail", &models::StepDistribution::tail)
        .def("is_lattice", &models::StepDistribution::is_lattice)
        .def("pmf", [](const models::StepDistribution& mdl, const std::vector<long long>& x) { return mdl.pmf(x); })
        .def("a_n", [](const models::StepDistribution& mdl, double n) { return mdl.norming().a_n(n); })
        .def("limit_law", &models::StepDistribution::limit_law);

    m.def("model_from_json", &make_model, py::arg("json_text"));

    m.def(
        "renewal_sum",
        [](const models::StepDistribution& model, double s, const std::vector<double>& omega, double delta,
           double m_cut, const std::string& method, uint64_t seed, long paths) {
            renewal::TargetCell cell =
                model.is_lattice()
                    ? renewal::TargetCell::lattice(model.dim(), model.dim(), 1, IntMat::identity(model.dim()))
                    : renewal::TargetCell::cube(model.dim(), 1.0);
            renewal::RenewalConfig cfg;
            cfg.seed = seed;
            cfg.paths = paths;
            renewal::RenewalEstimate e = renewal::renewal_sum(model, cell, s, omega, delta, m_cut, method, cfg);
            py::dict out;
            out["value"] = e.value;
            out["stderr_or_bound"] = e.stderr_or_bound;
            out["remainder_bound"] = e.remainder_bound;
            out["n_lo"] = e.n_lo;
            out["n_hi"] = e.n_hi;
            out["method"] = e.method;
            return out;
        },
        py::arg("model"), py::arg("s"), py::arg("omega"), py::arg("delta"), py::arg("M"),
        py::arg("method") = "exact-convolution", py::arg("seed") = 0x5eed, py::arg("paths") = 200000);

    m.def(
        "llt_check",
        [](const models::StepDistribution& model, const std::vector<double>& n_grid, long long class_period) {
            renewal::LltReport rep = renewal::llt_check(model, n_grid, class_period);
            py::dict out;
            out["n_grid"] = rep.n_grid;
            out["sup_gap"] = rep.sup_gap;
            out["decreasing"] = rep.decreasing;
            return out;
        },
        py::arg("model"), py::arg("n_grid"), py::arg("class_period") = 1);

    // ---- criteria ----
    m.def("kappa", &criteria::kappa, py::arg("d"), py::arg("alpha"), "floor(d/alpha), exact for decimal alphas");
    m.def(
        "k_integral",
        [](const models::StepDistribution& model, const std::vector<double>& t, double a, double eta, double h) {
            return criteria::k_integral(model, t, a, eta, h);
        },
        py::arg("model"), py::arg("t"), py::arg("a"), py::arg("eta"), py::arg("h"));
    m.def(
        "a_tilde",
        [](const models::StepDistribution& model, double beta, double s) {
            criteria::ATildeResult r = criteria::a_tilde(model, beta, s);
            py::dict out;
            out["value"] = r.value;
            out["regime_prediction"] = r.regime_prediction;
            out["regime_bounded"] = r.regime_bounded;
            return out;
        },
        py::arg("model"), py::arg("beta"), py::arg("s"));
    m.def(
        "criterion_sum",
        [](const models::StepDistribution& model, const std::vector<double>& deltas,
           const std::vector<double>& s_ladder, double chi, double eta) {
            criteria::CriterionConfig cfg;
            cfg.deltas = deltas;
            cfg.s_ladder = s_ladder;
            cfg.chi = chi;
            if (eta > 0) cfg.eta = eta;
            criteria::CriterionReport rep = criteria::criterion_sum(model, cfg);
            py::dict out;
            out["normalized"] = rep.normalized;
            out["exponent"] = rep.exponent;
            out["verdict"] = rep.verdict;
            return out;
        },
        py::arg("model"), py::arg("deltas"), py::arg("s_ladder"), py::arg("chi") = 1.0, py::arg("eta") = 0.0);

    // ---- concentration ----
    m.def(
        "check_concentration",
        [](const models::StepDistribution& model, double h, double a) {
            concentration::ConcentrationCheck chk = concentration::check_concentration(model, h, a);
            py::dict out;
            out["lhs"] = chk.lhs;
            out["rhs"] = chk.rhs;
            out["margin"] = chk.margin;
            out["holds"] = chk.holds;
            return out;
        },
        py::arg("model"), py::arg("h"), py::arg("a"));

    // ---- experiments ----
    m.def(
        "run_experiment",
        [](const std::string& spec_json, const std::string& out_dir) {
            experiment::RunResult r = experiment::run(spec_json, out_dir);
            py::dict out;
            out["exit_code"] = r.exit_code;
            out["status"] = r.status;
            out["message"] = r.message;
            out["manifest"] = r.manifest_path;
            out["artifacts"] = r.artifacts;
            return out;
        },
        py::arg("spec_json"), py::arg("out_dir"));
    m.def("replay_experiment",
          [](const std::string& manifest_path) {
              experiment::ReplayResult r = experiment::replay(manifest_path);
              py::dict out;
              out["exit_code"] = r.exit_code;
              out["comparable"] = r.comparable;
              out["message"] = r.message;
              return out;
          },
          py::arg("manifest_path"));
    m.def("spec_schema", &experiment::schema_text);
}
