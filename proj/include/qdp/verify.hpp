#pragma once

#include <string>
#include <vector>

#include "qdp/analysis.hpp"

namespace qdp {

// Invariant suites behind the `verify` command: each returns one record per
// check with the compared values, so a failure is diagnosable from the JSON
// report alone. `fault` optionally perturbs internal tables before checking
// (regression hook: a perturbed character table must trip the orthogonality
// suite).

struct VerifyOptions {
    std::string fault;  // "" or "char-table"
};

std::vector<CheckRecord> suite_field(const VerifyOptions& opt = {});
std::vector<CheckRecord> suite_codes();
std::vector<CheckRecord> suite_spectral();
std::vector<CheckRecord> suite_noise();
std::vector<CheckRecord> suite_analysis();
std::vector<CheckRecord> suite_pgm();
std::vector<CheckRecord> suite_sampler();

// All suites whose name starts with `filter` (empty = all).
std::vector<CheckRecord> run_suites(const std::string& filter,
                                    const VerifyOptions& opt = {});

std::string checks_to_json(const std::vector<CheckRecord>& checks);
bool all_pass(const std::vector<CheckRecord>& checks);

}  // namespace qdp
