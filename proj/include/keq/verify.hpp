#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace keq {

struct SuiteResult {
    std::string name;
    bool pass = true;
    double max_residual = 0.0;  // worst deviation seen, suite-specific units
    int checks = 0;
    std::string note;
};

// Equilibrium output equals the direct output maximum, per solver family
// (baseline, general over all compute regimes, two-type over all cases),
// `instances` seeded draws each, relative tolerance 1e-8.
// inject_fault perturbs the bottom-automation wage candidate by 1e-3 on the
// solver side; the suite must then fail (harness self-test).
SuiteResult welfare_suite(std::uint64_t seed, int instances, bool inject_fault = false);

// Analytic labor-income gradient vs central differences (step 1e-5, rel
// 1e-5) plus the sign pattern, at `points` interior points of Rb/Rt for both
// synergy modes.
SuiteResult gradient_suite(std::uint64_t seed, int points);

// No spurious price jumps across region boundaries under abundant machines;
// exactly one co-located w-down/r-up jump across the compute-sufficiency
// boundary in the scarce reference economy.
SuiteResult continuity_suite(std::uint64_t seed);

// Two-type total-labor sign conditions on the heterogeneity-figure grid.
SuiteResult sign_suite(std::uint64_t seed);

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int instances,
                                        bool inject_fault = false);

}  // namespace keq
