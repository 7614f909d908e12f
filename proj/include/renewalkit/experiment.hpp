#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace renewalkit::experiment {

struct SpecInvalid : std::runtime_error {
    explicit SpecInvalid(const std::string& what) : std::runtime_error(what) {}
};
struct DigestMismatch : std::runtime_error {
    explicit DigestMismatch(const std::string& what) : std::runtime_error(what) {}
};

// exit codes: 0 ok, 2 spec error, 3 budget exhausted, 4 verdict failure
struct RunResult {
    int exit_code = 0;
    std::string status;  // ok | budget | verdict-failure
    std::string message;
    std::string manifest_path;
    std::vector<std::string> artifacts;
};

RunResult run(const std::string& spec_text, const std::string& out_dir);

struct ReplayResult {
    int exit_code = 0;
    bool comparable = true;
    std::string message;
};

// Verifies the artifact digests recorded in a manifest, then re-runs the
// embedded spec and compares the regenerated artifacts bit for bit. A spec
// override with a different seed marks the runs non-comparable instead of
// failing.
ReplayResult replay(const std::string& manifest_path, const std::string& spec_override_text = "");

std::string schema_text();

}  // namespace renewalkit::experiment
