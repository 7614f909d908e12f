#include "renewalkit/experiment.hpp"
#include "renewalkit/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"renewalkit: renewal-sum, lattice-structure, and stable-law experiments"};
    app.require_subcommand(1);

    std::string spec_path, out_dir, manifest_path, spec_override;
    int threads = 0;

    CLI::App* run = app.add_subcommand("run", "run an experiment spec and write artifacts + manifest");
    run->add_option("spec", spec_path, "experiment spec (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--output-dir", out_dir, "artifact directory (default: spec's output_dir or 'out')");
    run->add_option("--threads", threads, "worker threads (results are thread-count independent)");

    CLI::App* replay = app.add_subcommand("replay", "verify a manifest's artifacts and reproduce them");
    replay->add_option("manifest", manifest_path, "manifest.json from a previous run")
        ->required()
        ->check(CLI::ExistingFile);
    replay->add_option("--spec", spec_override, "optional spec to compare against the recorded one")
        ->check(CLI::ExistingFile);

    app.add_subcommand("print-schema", "print the experiment spec schema");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("print-schema")) {
            std::cout << renewalkit::experiment::schema_text() << "\n";
            return 0;
        }
        if (app.got_subcommand("run")) {
            std::string text = renewalkit::io::read_file(spec_path);
            if (out_dir.empty()) {
                auto pos = text.find("\"output_dir\"");
                out_dir = "out";
                if (pos != std::string::npos) {
                    auto q1 = text.find('"', text.find(':', pos));
                    auto q2 = text.find('"', q1 + 1);
                    if (q1 != std::string::npos && q2 != std::string::npos) out_dir = text.substr(q1 + 1, q2 - q1 - 1);
                }
            }
            if (threads > 0) {
                // thread override folds into the spec before hashing so the
                // manifest records what actually ran
                auto spec = nlohmann::json::parse(text);
                spec["threads"] = threads;
                text = spec.dump();
            }
            renewalkit::experiment::RunResult res = renewalkit::experiment::run(text, out_dir);
            std::cout << "status: " << res.status;
            if (!res.message.empty()) std::cout << " (" << res.message << ")";
            std::cout << "\n";
            for (const auto& a : res.artifacts) std::cout << "artifact: " << out_dir << "/" << a << "\n";
            if (!res.manifest_path.empty()) std::cout << "manifest: " << res.manifest_path << "\n";
            return res.exit_code;
        }
        if (app.got_subcommand("replay")) {
            std::string override_text;
            if (!spec_override.empty()) override_text = renewalkit::io::read_file(spec_override);
            renewalkit::experiment::ReplayResult res =
                renewalkit::experiment::replay(manifest_path, override_text);
            std::cout << (res.comparable ? "replay: " : "replay (non-comparable): ") << res.message << "\n";
            return res.exit_code;
        }
    } catch (const renewalkit::experiment::DigestMismatch& e) {
        std::cerr << "digest mismatch: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
