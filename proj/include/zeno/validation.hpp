#pragma once

#include <string>
#include <vector>

namespace zeno {

struct CheckResult {
    std::string name;
    bool passed = false;
    /// false for diagnostics that are reported but do not decide the exit status
    bool gating = true;
    std::string detail;
};

/// Oracle cross-checks between the independent engines: closed-form versus
/// propagator survival, propagator versus memory-kernel and master-equation
/// solvers, quadrature versus residue overlaps, perturbative versus exact
/// interval maps, and the classical-correlation optimizer versus the closed form.
std::vector<CheckResult> run_validation();

}  // namespace zeno
