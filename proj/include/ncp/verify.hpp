#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ncp {

struct SuiteResult {
    std::string name;
    int n = 0;
    long long checks = 0;
    std::vector<std::string> failures;  // first few witnesses
    long long failure_count = 0;
    std::map<std::string, long long> counts;

    bool ok() const { return failure_count == 0; }
};

struct VerifyOptions {
    int cap_override = 0;  // 0 keeps the per-suite defaults
    std::uint64_t seed = 1;
};

/// adjacency, compat, assoc, cubical, links, cells, relators.
const std::vector<std::string>& suite_names();

/// Largest n a suite accepts under `options`.
int suite_cap(const std::string& suite, const VerifyOptions& options);

/// Runs one named suite exhaustively at size n. Throws UsageError for an
/// unknown suite or n outside 1..cap.
SuiteResult run_suite(const std::string& suite, int n, const VerifyOptions& options);

/// Morphism counts by rank over all of the category at size n.
std::map<int, long long> morphism_counts(int n);

}  // namespace ncp
