#pragma once

#include "keq/dist.hpp"
#include "keq/point.hpp"

namespace keq {

// Parameter bundle for the one-type economy.
//
// synergy=true: a matched human/machine pair solves everything below the
// componentwise max of their knowledge. synergy=false: a problem must be
// solvable by one of them alone.
struct Economy {
    DistPtr dist;
    Knowledge h;           // human knowledge, strictly inside (0,1)^2
    Knowledge m;           // machine knowledge, in [0,1]^2
    double c = 0.5;        // communication cost per assist, in (0,1)
    double mu = 0.0;       // compute supply (machines), > 0
    bool synergy = true;
};

// Throws std::domain_error if the bundle violates its invariants.
void check_economy(const Economy& econ);

// Highest zero-profit wages per firm type at machine rental r = F(m).
struct WageCandidates {
    double w_s = 0.0;  // single-layer non-automated
    double w_b = 0.0;  // bottom-automated (machines produce, human solves)
    double w_t = 0.0;  // top-automated (humans produce, machine solves)

    double max() const { return std::max(w_s, std::max(w_b, w_t)); }
};

enum class FirmType { SingleNonAuto, SingleAuto, Bottom, Top };

// Producers one solver of knowledge k can support: n(k) = 1/(c(1-F(k))).
// Returns +infinity when F(k) = 1; callers must handle (wage_candidates does).
double span(const ProblemDist& dist, Knowledge k, double c);
double span(const Economy& econ, Knowledge k);

// Success probability of a matched human/machine pair:
// F(m OR h) with synergy, F(m)+F(h)-F(m AND h) without.
double effective_success(const Economy& econ);

// Zero-profit wage bounds (Economy's synergy flag selects the success rule).
// Convention: F(m) = 1 gives w_b = 0; assistance is worthless there.
WageCandidates wage_candidates(const Economy& econ);

double profit(FirmType type, const Economy& econ, double w, double r);

// mu exceeds the two-layer machine demand for every m in [0,1]^2:
// mu > max{ n(1,h2), n(h1,1) }.
bool abundance_holds(const Economy& econ);

}  // namespace keq
