// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#ifndef JACOBIHEAT_VERIFY_HPP
#define JACOBIHEAT_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "envelopes.hpp"
#include "kernels.hpp"

namespace jacobiheat::verify {

using envelopes::EnvelopeConstants;
using kernels::HeatPoint;
using specfun::JacobiParams;

/// Outcome of one named check. pass is equivalent to
/// worst_metric <= threshold; details carry named diagnostic numbers in a
/// stable order.
struct CheckResult {
    std::string check_name;
    std::string claim;  // one-line statement of the verified property
    std::optional<JacobiParams> params;
    bool pass = false;
    double worst_metric = 0.0;
    double threshold = 0.0;
    HeatPoint worst_point{0.0, 0.0, 1.0};
    std::string worst_note;
    std::vector<std::pair<std::string, double>> details;
};

struct VerifyOptions {
    bool fast = false;  // reduced grids for smoke tests and golden files
};

constexpr std::uint64_t kDefaultSeed = 20260810;

/// The four standard parameter pairs: point-mass measures, Legendre, a
/// half-integer mixed pair, and a generic non-dyadic pair.
std::vector<JacobiParams> default_params();

struct CheckInfo {
    std::string name;
    std::string claim;
    bool per_params;  // runs once per parameter pair (vs once per suite)
};

/// All registered checks, in execution order.
const std::vector<CheckInfo>& check_registry();

/// The documented coverage list; the suite is audited against it in tests.
std::vector<std::string> documented_check_names();

CheckResult check_mass(const JacobiParams& p, const VerifyOptions& opts);
CheckResult check_semigroup(const JacobiParams& p, const VerifyOptions& opts);
CheckResult check_reduction(const JacobiParams& p, std::uint64_t seed, const VerifyOptions& opts);
CheckResult check_sphere_transfer(const VerifyOptions& opts);
CheckResult check_comparison(const JacobiParams& p, const VerifyOptions& opts);
CheckResult check_envelope(const JacobiParams& p, const VerifyOptions& opts);
CheckResult check_endpoint(const VerifyOptions& opts);
CheckResult check_bessel_laplace(const VerifyOptions& opts);
CheckResult check_iteration(const VerifyOptions& opts);
CheckResult check_pi_integral_bracket(std::uint64_t seed, const VerifyOptions& opts);
CheckResult check_poisson(const JacobiParams& p, const VerifyOptions& opts);
CheckResult check_poisson_consistency(const JacobiParams& p, const VerifyOptions& opts);
CheckResult check_kernel_relation(const JacobiParams& p, const VerifyOptions& opts);
CheckResult check_rough(const JacobiParams& p, const VerifyOptions& opts);
CheckResult check_large_time(const JacobiParams& p, const VerifyOptions& opts);

/// Runs every registered check: per-pair checks once per parameter pair,
/// suite-level checks once. An empty parameter list yields an empty report.
/// Deterministic for a fixed seed.
std::vector<CheckResult> run_all(const std::vector<JacobiParams>& params_list,
                                 std::uint64_t seed = kDefaultSeed,
                                 const VerifyOptions& opts = {});

/// Same, restricted to a subset of check names. Unknown names are rejected.
std::vector<CheckResult> run_checks(const std::vector<std::string>& names,
                                    const std::vector<JacobiParams>& params_list,
                                    std::uint64_t seed = kDefaultSeed,
                                    const VerifyOptions& opts = {});

}  // namespace jacobiheat::verify

#endif
