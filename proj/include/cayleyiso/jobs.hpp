#pragma once

#include "cayleyiso/group.hpp"
#include "cayleyiso/report.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cayleyiso {

/// Schema violations in a job config; run_job maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct JobConfig {
    Json raw;
    std::optional<Group> group;
    std::vector<SymmetricSet> sets;
    std::vector<Json> set_descriptors;  // echo
    std::vector<std::string> tasks;
    Json params;        // per-task parameter objects
    uint64_t seed = 1;
    int threads = 1;
    std::string output_dir;
};

Group group_from_json(const Json& j);
SymmetricSet set_from_json(const Group& g, const Json& j);
JobConfig parse_job_config_json(const Json& j);
JobConfig parse_job_config(const std::string& path);

struct JobResult {
    Json report;
    std::vector<CheckResult> checks;
    bool all_pass = true;
};

/// Executes the configured tasks in order; writes nothing (see run_job for
/// the file-emitting entry point). Deterministic for fixed (config, seed).
JobResult execute_job(const JobConfig& cfg);

/// CLI entry point: parse, execute, write report + CSVs.
/// Exit codes: 0 ok, 1 assertion failure, 2 schema violation, 3 I/O failure.
int run_job(const std::string& config_path, const std::string& out_override,
            std::optional<int> threads_override, std::optional<uint64_t> seed_override,
            std::ostream& log);

/// The full invariant battery over the built-in instance zoo; prints one
/// pass/fail line per (instance, check). Nonzero on any failure.
int selfcheck(std::ostream& out);

/// Assertion battery for one instance, keyed by stable check identifiers.
std::vector<CheckResult> verify_instance(const Group& g, const SymmetricSet& s,
                                         uint64_t seed);

} // namespace cayleyiso
