#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace swirlmhd {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteReport {
    std::string name;
    std::vector<CheckResult> checks;
    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Names accepted by run_suite, in report order.
const std::vector<std::string>& suite_names();

/// Runs one named verification suite (exponents | operators | elliptic |
/// conservation | structure | smalldata | lp | duhamel). The seed feeds
/// every randomized corpus, so reports are reproducible byte for byte.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

/// Runs every suite in order; `verify all` is exactly this conjunction.
std::vector<SuiteReport> run_all_suites(std::uint64_t seed);

/// Plain-text report: one [PASS]/[FAIL] line per check plus suite and
/// overall summaries. Deterministic for fixed inputs.
std::string render_report(const std::vector<SuiteReport>& reports);

}  // namespace swirlmhd
