#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fockq {

struct VerifyOptions {
    std::size_t n_max_dense = 200;
    std::uint64_t seed = 1;
    /// Test hook: scales one off-diagonal entry of every Q_N used by the spectral checks.
    bool inject_fault = false;
};

struct CheckResult {
    std::string name;
    bool passed = true;
    double worst = 0.0;  ///< worst observed deviation or margin
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool ok() const;
    std::vector<std::string> failures() const;
};

VerifyReport run_verification(const VerifyOptions& opts);

}  // namespace fockq
