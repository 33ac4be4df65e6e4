#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qadder {

struct SuiteResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    double worst = 0;    ///< largest deviation seen (0 if none was positive)
    std::string detail;  ///< first failure, empty when the suite passes

    bool passed() const { return failed == 0; }
    bool operator==(const SuiteResult &) const = default;
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    /// Test hook: flips the sign in Psi- so the Bell suite has something to catch.
    bool corrupt_psi_minus = false;
};

/// Runs every invariant suite in a fixed order:
///   measurement_entropy  H(rho) <= H(lambda) + sum lambda_i H(sigma_i), 1000 instances each on 2x2 and 2x4
///   pair_mixture         closed form vs eigendecomposition, 500 pairs
///   entropy_sandwich     101-point grid, with the middle term checked against a state
///   bell_invariance      orthonormality, flip phases, fixed points of the permuter, 200 Bell-diagonal states
///   adder_idempotence    200 states each for L = 2, 3
///   pinching_identity    200 states
///   schur_oracle         L = 1..4
///   ghz_lift_error       50 random small codes
std::vector<SuiteResult> run_verification(const VerifyOptions &options);

bool all_passed(const std::vector<SuiteResult> &results);

}  // namespace qadder
