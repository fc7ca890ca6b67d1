#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "keq/baseline.hpp"

namespace keq {

// Equilibrium structure for arbitrary compute supply mu >= 1/n(h).
// RbK/RbMixed/RbScarce partition Rb by whether machine supply covers
// full bottom-automation and, if not, which fallback absorbs the humans.
enum class GeneralRegion { Rs, Rt, RbK, RbMixed, RbScarce, HumansAbundant };

std::string_view to_string(GeneralRegion r);

// mu >= n(m): enough machines for every human to run a bottom-automated firm
// (the set K).
bool compute_sufficient(const Economy& econ);

// w_b - w_s <= n(m) n(h) (w_t - w_s): reallocating scarce machines toward
// top-automated firms beats falling back to unassisted humans (the set R_m).
bool mixing_dominates(const Economy& econ);

struct GeneralEquilibrium {
    GeneralRegion region = GeneralRegion::Rs;
    double w_star = 0.0;
    // Unset when humans are abundant (mu < 1/n(h)): the rental rate is not
    // pinned down by zero profits there, and we refuse to guess.
    std::optional<double> r_star;
    std::optional<Alloc> alpha;
    std::optional<Alloc> mu_alloc;
    std::optional<double> output;
};

GeneralEquilibrium solve_general(const Economy& econ);

struct ScanRow {
    double t = 0.0;
    Point m;
    GeneralRegion region = GeneralRegion::Rs;
    double w_star = 0.0;
    std::optional<double> r_star;
};

struct Jump {
    int step = 0;        // jump between rows[step] and rows[step+1]
    double t_lo = 0.0;
    double t_hi = 0.0;
    double delta = 0.0;  // value after minus value before
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::vector<Jump> w_jumps;
    std::vector<Jump> r_jumps;
};

// Prices along the segment from `from` to `to` (steps+1 rows). A step is
// flagged as a jump when its price change exceeds jump_factor times the
// largest change among nearby steps (the local grid-Lipschitz estimate).
ScanResult discontinuity_scan(const Economy& base, Point from, Point to, int steps,
                              double jump_factor = 10.0);

// Smallest mu for which K covers all of Rb: sup of n(m) over the closure of
// Rb, by grid search plus golden-section refinement.
double compute_K_coverage_mu(const ProblemDist& dist, Knowledge h, double c);

}  // namespace keq
