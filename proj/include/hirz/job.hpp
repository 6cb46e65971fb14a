#pragma once
// Job description, dispatch and the JSON result document behind the CLI.

#include "hirz/errors.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hirz {

using Json = nlohmann::ordered_json;

struct JobSpec {
    std::string task; // resolution-class | strata | motivic-class | csm | schubert-csm | orbit | chi-genus
    std::optional<std::string> family, space, group, model;
    std::optional<int> n, p, truncation;
    std::optional<std::vector<int>> q, lambda;
    std::optional<std::string> z;     // one-line word or cycles
    std::optional<std::string> y;     // rational; absent means generic y
    std::string output = "json";      // json | text
    std::optional<std::string> cache_dir;
    bool no_cache = false;
    // orbit only: expand the class over these involutions, and check the
    // claimed coefficients when given
    std::vector<std::string> candidates;
    std::vector<std::string> coefficients;
};

/// Unknown keys and wrong types are InvalidSpec errors.
JobSpec job_from_json(const Json &j);
/// Echo written into every result (only the fields that are set).
Json job_to_json(const JobSpec &job);

/// Settings that may come from a config file or the environment.
struct Defaults {
    std::optional<int> truncation;
    std::optional<std::string> cache_dir, output;
};
Defaults defaults_from_env();
/// JSON object with optional keys truncation, cache_dir, output.
Defaults defaults_from_file(const std::string &path);
/// Fills the unset fields of `job` from `d`.
void apply_defaults(JobSpec &job, const Defaults &d);

/// Result document {job, result, diagnostics}. Deterministic: no timings,
/// terms in a fixed order, rationals as "num/den".
Json run_job(const JobSpec &job);

/// {"error": {kind, code, message}}
Json error_document(const Error &e);
/// 2 invalid specification, 3 non-vexillary, 4 inconsistency
int exit_code(ErrorKind k);

/// Human-readable rendering of a result or error document.
std::string render_text(const Json &doc);

} // namespace hirz
