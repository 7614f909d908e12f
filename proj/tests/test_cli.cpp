#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "renewalkit/experiment.hpp"
#include "renewalkit/io.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace renewalkit;
using json = nlohmann::json;

namespace {

std::string tmp_dir(const std::string& tag) {
    std::string dir = std::string("/tmp/renewalkit_test_") + tag;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
#ifdef RENEWALKIT_CLI_PATH
    std::string cmd = std::string(RENEWALKIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
#else
    (void)args;
    return -1;
#endif
}

}  // namespace

TEST_CASE("decompose scenario reproduces the +-1 walk structure") {
    std::string dir = tmp_dir("decompose");
    json spec;
    spec["scenario"] = "decompose";
    spec["seed"] = 7;
    spec["law"] = {{"dim", 1},
                   {"atoms", json::array({json{{"point", {"-1"}}, {"mass", "1/2"}},
                                          json{{"point", {"1"}}, {"mass", "1/2"}}})}};
    experiment::RunResult res = experiment::run(spec.dump(), dir);
    CHECK(res.exit_code == 0);
    json dec = json::parse(io::read_file(dir + "/decomposition.json"));
    CHECK(dec["r"] == 1);
    CHECK(dec["nu"] == 1);
    CHECK(dec["q"] == "2");
    CHECK(dec["p"] == "1");
}

TEST_CASE("density scenario emits grid artifacts that match the Gaussian") {
    std::string dir = tmp_dir("density");
    json spec;
    spec["scenario"] = "density";
    spec["seed"] = 7;
    spec["stable"] = {{"d", 2}, {"alpha", 2.0}, {"C", 2.0}, {"spectral", "isotropic"}};
    spec["extent"] = 2.0;
    spec["spacing"] = 0.5;
    experiment::RunResult res = experiment::run(spec.dump(), dir);
    CHECK(res.exit_code == 0);
    json meta = json::parse(io::read_file(dir + "/density_meta.json"));
    CHECK(std::abs(meta["period_mass"].get<double>() - 1.0) < 1e-8);
    // binary artifact carries the documented header
    std::string bin = io::read_file(dir + "/density.bin");
    CHECK(bin.substr(0, 7) == "RKGRID1");
    int32_t d = 0, n = 0;
    std::memcpy(&d, bin.data() + 8, 4);
    std::memcpy(&n, bin.data() + 12, 4);
    CHECK(d == 2);
    CHECK(n == meta["n"].get<int>());
    CHECK(bin.size() == 8 + 4 + 4 + 8 + 8 + static_cast<size_t>(n) * n * 8);
    // center value from the csv equals the Gaussian closed form (cf e^{-r^2})
    double want = 1.0 / (4.0 * M_PI);
    std::string csv = io::read_file(dir + "/density.csv");
    bool found = false;
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("0,0,", 0) == 0 || line.rfind("-0,-0,", 0) == 0) {
            double v = std::stod(line.substr(line.rfind(',') + 1));
            CHECK(v == doctest::Approx(want).epsilon(1e-6));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("run + replay round trip is green, tampering is caught, seeds gate comparability") {
    std::string dir = tmp_dir("replay");
    json spec;
    spec["scenario"] = "small-n";
    spec["seed"] = 99;
    spec["model"] = {{"family", "pareto_lattice"}, {"d", 2}, {"alpha", 1.5}, {"box", 512}};
    spec["s_list"] = {10.0};
    spec["deltas"] = {0.5};
    spec["method"] = "monte-carlo";
    spec["omegas"] = 4;
    spec["budget"] = {{"max_samples", 20000}};
    experiment::RunResult res = experiment::run(spec.dump(), dir);
    REQUIRE(res.exit_code == 0);

    experiment::ReplayResult rep = experiment::replay(dir + "/manifest.json");
    CHECK(rep.exit_code == 0);
    CHECK(rep.comparable);

    // corrupt one byte of the csv: replay must name the file
    {
        std::string path = dir + "/small_n.csv";
        std::string bytes = io::read_file(path);
        bytes[bytes.size() / 2] = bytes[bytes.size() / 2] == '1' ? '2' : '1';
        io::write_file(path, bytes);
        CHECK_THROWS_WITH_AS(experiment::replay(dir + "/manifest.json"),
                             doctest::Contains("small_n.csv"), experiment::DigestMismatch);
        // restore
        experiment::RunResult again = experiment::run(spec.dump(), dir);
        REQUIRE(again.exit_code == 0);
    }

    // a different seed is flagged non-comparable, not a failure
    json other = spec;
    other["seed"] = 100;
    experiment::ReplayResult nc = experiment::replay(dir + "/manifest.json", other.dump());
    CHECK(nc.exit_code == 0);
    CHECK_FALSE(nc.comparable);
}

TEST_CASE("determinism: same seed, different thread counts, identical bytes") {
    json spec;
    spec["scenario"] = "small-n";
    spec["seed"] = 31337;
    spec["model"] = {{"family", "pareto_lattice"}, {"d", 2}, {"alpha", 1.5}, {"box", 512}};
    spec["s_list"] = {12.0};
    spec["deltas"] = {0.5, 1.0};
    spec["method"] = "monte-carlo";
    spec["omegas"] = 4;
    spec["budget"] = {{"max_samples", 30000}};

    std::string d1 = tmp_dir("threads1"), d4 = tmp_dir("threads4");
    spec["threads"] = 1;
    REQUIRE(experiment::run(spec.dump(), d1).exit_code == 0);
    spec["threads"] = 4;
    REQUIRE(experiment::run(spec.dump(), d4).exit_code == 0);
    CHECK(io::read_file(d1 + "/small_n.csv") == io::read_file(d4 + "/small_n.csv"));
}

TEST_CASE("spec errors exit with code 2") {
    std::string dir = tmp_dir("badspec");
    CHECK(experiment::run("{\"scenario\":\"density\"}", dir).exit_code == 2);  // missing seed
    CHECK(experiment::run("{\"seed\":1,\"scenario\":\"nope\"}", dir).exit_code == 2);
    CHECK(experiment::run("not json at all", dir).exit_code == 2);
}

TEST_CASE("verdict failures exit with code 4 but keep artifacts") {
    // a concentration check with an absurd h forces rhs < lhs? the bound is a
    // theorem, so instead drive the verdict path through example-2.1 with a
    // ladder too short to resolve the trend: slope fit on two equal points
    std::string dir = tmp_dir("verdict");
    json spec;
    spec["scenario"] = "concentration";
    spec["seed"] = 5;
    spec["model"] = {{"family", "finite_lattice"},
                     {"d", 1},
                     {"atoms", json::array({json{{"point", {0}}, {"mass", 1.0}}})}};
    spec["h_list"] = {1.0};
    spec["a_list"] = {1.0};
    experiment::RunResult res = experiment::run(spec.dump(), dir);
    CHECK(res.exit_code == 0);  // the theorem holds even for the point mass
    CHECK(std::filesystem::exists(dir + "/concentration.json"));
}

TEST_CASE("verdict failure exits 4: a ladder too short to resolve the dichotomy") {
    std::string dir = tmp_dir("verdict4");
    json spec;
    spec["scenario"] = "example-2.1";
    spec["seed"] = 8;
    spec["s_ladder"] = {1000.0, 1200.0};  // no room for any trend
    spec["directions"] = 4;
    experiment::RunResult res = experiment::run(spec.dump(), dir);
    CHECK(res.exit_code == 4);
    CHECK(std::filesystem::exists(dir + "/example21.csv"));
    CHECK(std::filesystem::exists(dir + "/manifest.json"));
}

TEST_CASE("OP replay: budget exhaustion exits 3 and still writes the manifest") {
    std::string dir = tmp_dir("budget");
    json spec;
    spec["scenario"] = "ldp";
    spec["seed"] = 11;
    spec["model"] = {{"family", "pareto_lattice"}, {"d", 1}, {"alpha", 0.8}};
    spec["n"] = 12;
    spec["s_list"] = {100.0};
    spec["rho_grid"] = {0.0, 90.0};
    spec["rays"] = 1;
    spec["budget"] = {{"max_samples", 500}};
    experiment::RunResult res = experiment::run(spec.dump(), dir);
    CHECK(res.exit_code == 3);
    CHECK(std::filesystem::exists(dir + "/manifest.json"));
    json man = json::parse(io::read_file(dir + "/manifest.json"));
    CHECK(man["status"] == "budget");
}

TEST_CASE("cli binary: print-schema, run, replay") {
    if (run_cli("--help") == -1) return;  // binary path not wired in this build
    CHECK(run_cli("print-schema") == 0);

    std::string dir = tmp_dir("clirun");
    json spec;
    spec["scenario"] = "decompose";
    spec["seed"] = 3;
    spec["law"] = {{"dim", 1},
                   {"atoms", json::array({json{{"point", {"0"}}, {"mass", "1/2"}},
                                          json{{"point", {"1"}}, {"mass", "1/2"}}})}};
    io::write_file(dir + "/spec.json", spec.dump());
    CHECK(run_cli("run " + dir + "/spec.json --output-dir " + dir + "/out") == 0);
    CHECK(run_cli("replay " + dir + "/out/manifest.json") == 0);
}
