#pragma once

#include <string_view>
#include <vector>

#include "keq/baseline.hpp"

namespace keq {

// Two human types sharing one machine pool; machines assumed abundant.
struct TwoTypeEconomy {
    DistPtr dist;
    Knowledge hA;
    Knowledge hB;
    double phiA = 0.5;  // mass of type A, in (0,1); type B has 1 - phiA
    Knowledge m;
    double c = 0.5;
};

void check_two_type(const TwoTypeEconomy& econ);

// Marginal products of each type in all-human two-layer firms, priced at the
// other type's outside option. BA = B solves for A workers; AB the reverse.
struct MatchMargins {
    double mBA_A = 0.0;  // type A as worker in BA
    double mAB_A = 0.0;  // type A as solver in AB
    double mBA_B = 0.0;  // type B as solver in BA
    double mAB_B = 0.0;  // type B as worker in AB
};

// Equilibrium case labels.
enum class TwoTypeCase {
    NoMatching,       // 1: nobody gains from human-human firms
    AScarce,          // 2a: all of A matches; B's wage pinned by outside option
    BothPreferBA,     // 2b-i
    BothPreferAB,     // 2b-ii
    FullMatching,     // 2b-iii: everyone in BA or AB firms
    BScarce,          // 2c
};

std::string_view to_string(TwoTypeCase c);

// Masses of one human type over the possible roles. Sums to the type's phi.
struct TypeAllocation {
    double s = 0.0;          // independent production
    double b = 0.0;          // solver in a bottom-automated firm
    double t = 0.0;          // worker in a top-automated firm
    double ba_worker = 0.0;  // only type A takes this role
    double ba_solver = 0.0;  // only type B
    double ab_worker = 0.0;  // only type B
    double ab_solver = 0.0;  // only type A

    double total() const { return s + b + t + ba_worker + ba_solver + ab_worker + ab_solver; }
};

struct TwoTypeEquilibrium {
    double wA = 0.0;
    double wB = 0.0;
    double r_star = 0.0;   // F(m)
    double total_w = 0.0;  // phiA*wA + phiB*wB
    TwoTypeCase label = TwoTypeCase::NoMatching;
    TypeAllocation allocA;
    TypeAllocation allocB;
    // Machine demand of two-layer automated firms, per type.
    double machines_b_A = 0.0, machines_t_A = 0.0;
    double machines_b_B = 0.0, machines_t_B = 0.0;
};

struct PerTypeCandidates {
    WageCandidates A;
    WageCandidates B;
    double wbarA = 0.0;  // max over A's three candidates
    double wbarB = 0.0;
};

PerTypeCandidates per_type_candidates(const TwoTypeEconomy& econ);

MatchMargins match_margins(const TwoTypeEconomy& econ);

TwoTypeEquilibrium solve_two_type(const TwoTypeEconomy& econ);

// No human touches a machine in this equilibrium (the set R_h); read off the
// allocations rather than a closed form.
bool humans_avoid_machines(const TwoTypeEquilibrium& eq);

struct SurfaceRow {
    Point m;
    double wA = 0.0, wB = 0.0, total_w = 0.0;
    TwoTypeCase label = TwoTypeCase::NoMatching;
    bool in_Rh = false;
};

// Per-cell equilibrium over a resolution x resolution grid of m, row-major.
std::vector<SurfaceRow> total_labor_surface(const TwoTypeEconomy& base, int resolution,
                                            int threads = 1);

struct LaborMaxSearch {
    int grid_n = 200;
    int top_k = 5;
    double tol = 1e-7;       // simplex size in m
    double vertex_eps = 1e-6;
};

struct LaborMax {
    Point m;
    double value = 0.0;
    bool is_vertex = false;
};

// Global maximum of total labor income over m: exhaustive coarse grid plus
// Nelder-Mead refinement from the best cells. The four corners are always
// among the candidates.
LaborMax find_max_total_labor(const TwoTypeEconomy& base, LaborMaxSearch cfg = {});

// Corner maximum of one type's own wage; valid type-by-type because a
// machine can replicate the other type at no extra cost.
VertexMax per_type_labor_max(const TwoTypeEconomy& base, char type);

}  // namespace keq
