// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file selftest.hpp
 * @brief Embedded invariant suite behind the `selftest` command.
 */

#pragma once

#include <string>
#include <vector>

namespace hexrg::selftest {

/// Deliberate defects for exercising the suite's sensitivity.
enum class Fault { none, sign_convention };

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_pass = false;
};

/// Runs every invariant group. With a fault injected, the corresponding
/// check must fail.
Report run(Fault fault = Fault::none);

}  // namespace hexrg::selftest
