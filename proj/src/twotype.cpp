#include "keq/twotype.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "keq/parallel.hpp"

namespace keq {

namespace {

Economy type_view(const TwoTypeEconomy& econ, Knowledge h) {
    // mu is irrelevant for candidates/regions; machines are abundant by
    // assumption here.
    return Economy{econ.dist, h, econ.m, econ.c, 1.0, true};
}

void assign_baseline_roles(TypeAllocation& alloc, const Economy& view, double mass) {
    mass = std::max(mass, 0.0);
    if (mass == 0.0) return;
    switch (classify(view)) {
        case Region::Rs: alloc.s += mass; break;
        case Region::Rb: alloc.b += mass; break;
        case Region::Rt: alloc.t += mass; break;
    }
}

}  // namespace

void check_two_type(const TwoTypeEconomy& econ) {
    if (!econ.dist) throw std::domain_error("two-type economy: missing distribution");
    if (!in_open_unit_square(econ.hA) || !in_open_unit_square(econ.hB)) {
        throw std::domain_error("two-type economy: human knowledge must be inside (0,1)^2");
    }
    if (!in_unit_square(econ.m)) {
        throw std::domain_error("two-type economy: machine knowledge must be in [0,1]^2");
    }
    if (!(econ.phiA > 0.0 && econ.phiA < 1.0)) {
        throw std::domain_error("two-type economy: phiA must be in (0,1)");
    }
    if (!(econ.c > 0.0 && econ.c < 1.0)) {
        throw std::domain_error("two-type economy: c must be in (0,1)");
    }
}

std::string_view to_string(TwoTypeCase c) {
    switch (c) {
        case TwoTypeCase::NoMatching: return "1";
        case TwoTypeCase::AScarce: return "2a";
        case TwoTypeCase::BothPreferBA: return "2b-i";
        case TwoTypeCase::BothPreferAB: return "2b-ii";
        case TwoTypeCase::FullMatching: return "2b-iii";
        case TwoTypeCase::BScarce: return "2c";
    }
    return "?";
}

PerTypeCandidates per_type_candidates(const TwoTypeEconomy& econ) {
    check_two_type(econ);
    PerTypeCandidates out;
    out.A = wage_candidates(type_view(econ, econ.hA));
    out.B = wage_candidates(type_view(econ, econ.hB));
    out.wbarA = out.A.max();
    out.wbarB = out.B.max();
    return out;
}

MatchMargins match_margins(const TwoTypeEconomy& econ) {
    const PerTypeCandidates cand = per_type_candidates(econ);
    const double joint = econ.dist->cdf(join(econ.hA, econ.hB));
    const double nA = span(*econ.dist, econ.hA, econ.c);
    const double nB = span(*econ.dist, econ.hB, econ.c);
    MatchMargins mm;
    mm.mBA_A = joint - cand.wbarB / nA;
    mm.mAB_A = nB * (joint - cand.wbarB);
    mm.mBA_B = nA * (joint - cand.wbarA);
    mm.mAB_B = joint - cand.wbarA / nB;
    return mm;
}

TwoTypeEquilibrium solve_two_type(const TwoTypeEconomy& econ) {
    const PerTypeCandidates cand = per_type_candidates(econ);
    const MatchMargins mm = match_margins(econ);
    const double nA = span(*econ.dist, econ.hA, econ.c);
    const double nB = span(*econ.dist, econ.hB, econ.c);
    const double phiA = econ.phiA;
    const double phiB = 1.0 - phiA;
    const Economy viewA = type_view(econ, econ.hA);
    const Economy viewB = type_view(econ, econ.hB);

    TwoTypeEquilibrium eq;
    eq.r_star = econ.dist->cdf(econ.m);

    // By the margin identities, sign(mBA_A - wbarA) = sign(mBA_B - wbarB) and
    // likewise for AB, so checking type A decides whether anyone matches.
    if (std::max(mm.mBA_A, mm.mAB_A) <= cand.wbarA) {
        eq.label = TwoTypeCase::NoMatching;
        eq.wA = cand.wbarA;
        eq.wB = cand.wbarB;
        assign_baseline_roles(eq.allocA, viewA, phiA);
        assign_baseline_roles(eq.allocB, viewB, phiB);
    } else if (phiA <= 1.0 / (1.0 + nB)) {
        // Type A scarce: every A matches with humans; B keeps its outside wage.
        eq.label = TwoTypeCase::AScarce;
        eq.wB = cand.wbarB;
        if (mm.mBA_A >= mm.mAB_A) {
            eq.wA = mm.mBA_A;
            eq.allocA.ba_worker = phiA;
            eq.allocB.ba_solver = phiA / nA;
            assign_baseline_roles(eq.allocB, viewB, phiB - phiA / nA);
        } else {
            eq.wA = mm.mAB_A;
            eq.allocA.ab_solver = phiA;
            eq.allocB.ab_worker = phiA * nB;
            assign_baseline_roles(eq.allocB, viewB, phiB - phiA * nB);
        }
    } else if (phiA >= nA / (1.0 + nA)) {
        // Type B scarce; mirror of 2a.
        eq.label = TwoTypeCase::BScarce;
        eq.wA = cand.wbarA;
        if (mm.mBA_B >= mm.mAB_B) {
            eq.wB = mm.mBA_B;
            eq.allocB.ba_solver = phiB;
            eq.allocA.ba_worker = phiB * nA;
            assign_baseline_roles(eq.allocA, viewA, phiA - phiB * nA);
        } else {
            eq.wB = mm.mAB_B;
            eq.allocB.ab_worker = phiB;
            eq.allocA.ab_solver = phiB / nB;
            assign_baseline_roles(eq.allocA, viewA, phiA - phiB / nB);
        }
    } else if (mm.mAB_A <= mm.mBA_A && mm.mAB_B <= mm.mBA_B) {
        eq.label = TwoTypeCase::BothPreferBA;
        eq.wA = mm.mBA_A;
        eq.wB = cand.wbarB;
        eq.allocA.ba_worker = phiA;
        eq.allocB.ba_solver = phiA / nA;
        assign_baseline_roles(eq.allocB, viewB, phiB - phiA / nA);
    } else if (mm.mBA_A <= mm.mAB_A && mm.mBA_B <= mm.mAB_B) {
        // Zero profit of AB firms at wA = wbarA pins wB at B's AB margin.
        eq.label = TwoTypeCase::BothPreferAB;
        eq.wA = cand.wbarA;
        eq.wB = mm.mAB_B;
        eq.allocB.ab_worker = phiB;
        eq.allocA.ab_solver = phiB / nB;
        assign_baseline_roles(eq.allocA, viewA, phiA - phiB / nB);
    } else {
        // mBA_A < mAB_A and mBA_B > mAB_B: both firm shapes break even and
        // every human matches with another human.
        eq.label = TwoTypeCase::FullMatching;
        const double coupling = nA * nB - 1.0;
        eq.wA = cand.wbarA + (nB / coupling) * (mm.mBA_B - mm.mAB_B);
        eq.wB = cand.wbarB + (nA / coupling) * (mm.mAB_A - mm.mBA_A);
        const double ba_a = (nA / coupling) * (nB * phiA - phiB);
        const double ab_b = (nB / coupling) * (nA * phiB - phiA);
        eq.allocA.ba_worker = ba_a;
        eq.allocA.ab_solver = phiA - ba_a;
        eq.allocB.ab_worker = ab_b;
        eq.allocB.ba_solver = phiB - ab_b;
    }

    eq.total_w = phiA * eq.wA + phiB * eq.wB;
    const double n_m = span(*econ.dist, econ.m, econ.c);
    eq.machines_b_A = eq.allocA.b * n_m;
    eq.machines_b_B = eq.allocB.b * n_m;
    eq.machines_t_A = eq.allocA.t / nA;
    eq.machines_t_B = eq.allocB.t / nB;
    return eq;
}

bool humans_avoid_machines(const TwoTypeEquilibrium& eq) {
    return eq.allocA.b == 0.0 && eq.allocA.t == 0.0 && eq.allocB.b == 0.0 &&
           eq.allocB.t == 0.0;
}

std::vector<SurfaceRow> total_labor_surface(const TwoTypeEconomy& base, int resolution,
                                            int threads) {
    if (resolution < 2) throw std::domain_error("total_labor_surface: resolution >= 2");
    check_two_type(base);
    const std::size_t n = static_cast<std::size_t>(resolution) * resolution;
    std::vector<SurfaceRow> rows(n);
    parallel_for(n, threads, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / resolution;
        const int j = static_cast<int>(idx) % resolution;
        TwoTypeEconomy econ = base;
        econ.m = {static_cast<double>(i) / (resolution - 1),
                  static_cast<double>(j) / (resolution - 1)};
        const TwoTypeEquilibrium eq = solve_two_type(econ);
        rows[idx] = {econ.m, eq.wA, eq.wB, eq.total_w, eq.label, humans_avoid_machines(eq)};
    });
    return rows;
}

namespace {

struct Candidate {
    Point m;
    double value;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.m.x1 != b.m.x1) return a.m.x1 < b.m.x1;
    return a.m.x2 < b.m.x2;
}

Point clamp_unit(Point p) {
    return {std::clamp(p.x1, 0.0, 1.0), std::clamp(p.x2, 0.0, 1.0)};
}

// Nelder-Mead on the unit square, maximizing.
Candidate nelder_mead(const std::function<double(Point)>& f, Point start, double tol) {
    const double h0 = 0.05;
    Candidate simplex[3] = {
        {clamp_unit(start), 0.0},
        {clamp_unit({start.x1 + h0, start.x2}), 0.0},
        {clamp_unit({start.x1, start.x2 + h0}), 0.0},
    };
    // Degenerate starts on the upper edges step inward instead.
    if (simplex[1].m.x1 == simplex[0].m.x1) simplex[1].m.x1 = simplex[0].m.x1 - h0;
    if (simplex[2].m.x2 == simplex[0].m.x2) simplex[2].m.x2 = simplex[0].m.x2 - h0;
    for (auto& c : simplex) c.value = f(c.m);

    for (int iter = 0; iter < 500; ++iter) {
        std::sort(simplex, simplex + 3, better);
        const double size = std::max(
            std::max(std::abs(simplex[0].m.x1 - simplex[2].m.x1),
                     std::abs(simplex[0].m.x2 - simplex[2].m.x2)),
            std::max(std::abs(simplex[0].m.x1 - simplex[1].m.x1),
                     std::abs(simplex[0].m.x2 - simplex[1].m.x2)));
        if (size < tol) break;

        const Point centroid = {0.5 * (simplex[0].m.x1 + simplex[1].m.x1),
                                0.5 * (simplex[0].m.x2 + simplex[1].m.x2)};
        auto eval = [&](double coef) {
            Candidate c;
            c.m = clamp_unit({centroid.x1 + coef * (centroid.x1 - simplex[2].m.x1),
                              centroid.x2 + coef * (centroid.x2 - simplex[2].m.x2)});
            c.value = f(c.m);
            return c;
        };
        const Candidate reflected = eval(1.0);
        if (better(reflected, simplex[0])) {
            const Candidate expanded = eval(2.0);
            simplex[2] = better(expanded, reflected) ? expanded : reflected;
        } else if (better(reflected, simplex[1])) {
            simplex[2] = reflected;
        } else {
            const Candidate contracted = eval(-0.5);
            if (better(contracted, simplex[2])) {
                simplex[2] = contracted;
            } else {
                // Shrink toward the best point.
                for (int i = 1; i < 3; ++i) {
                    simplex[i].m = clamp_unit({0.5 * (simplex[i].m.x1 + simplex[0].m.x1),
                                               0.5 * (simplex[i].m.x2 + simplex[0].m.x2)});
                    simplex[i].value = f(simplex[i].m);
                }
            }
        }
    }
    std::sort(simplex, simplex + 3, better);
    return simplex[0];
}

}  // namespace

LaborMax find_max_total_labor(const TwoTypeEconomy& base, LaborMaxSearch cfg) {
    check_two_type(base);
    if (cfg.grid_n < 2) throw std::domain_error("find_max_total_labor: grid_n >= 2");
    auto objective = [&](Point m) {
        TwoTypeEconomy econ = base;
        econ.m = m;
        return solve_two_type(econ).total_w;
    };

    // Coarse grid plus the four corners as starting points.
    std::vector<Candidate> cells;
    cells.reserve(static_cast<std::size_t>(cfg.grid_n) * cfg.grid_n);
    for (int i = 0; i < cfg.grid_n; ++i) {
        for (int j = 0; j < cfg.grid_n; ++j) {
            const Point m = {static_cast<double>(i) / (cfg.grid_n - 1),
                             static_cast<double>(j) / (cfg.grid_n - 1)};
            cells.push_back({m, objective(m)});
        }
    }
    std::sort(cells.begin(), cells.end(), better);

    Candidate best = cells.front();
    const int starts = std::min<int>(cfg.top_k, static_cast<int>(cells.size()));
    for (int i = 0; i < starts; ++i) {
        const Candidate refined = nelder_mead(objective, cells[static_cast<std::size_t>(i)].m, cfg.tol);
        if (better(refined, best)) best = refined;
    }
    const Point corners[4] = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
    for (const Point& v : corners) {
        const Candidate c = {v, objective(v)};
        if (better(c, best)) best = c;
    }

    LaborMax out;
    out.m = best.m;
    out.value = best.value;
    out.is_vertex = false;
    for (const Point& v : corners) {
        if (std::abs(best.m.x1 - v.x1) <= cfg.vertex_eps &&
            std::abs(best.m.x2 - v.x2) <= cfg.vertex_eps) {
            out.is_vertex = true;
        }
    }
    return out;
}

VertexMax per_type_labor_max(const TwoTypeEconomy& base, char type) {
    check_two_type(base);
    if (type != 'A' && type != 'B') {
        throw std::domain_error("per_type_labor_max: type must be 'A' or 'B'");
    }
    return labor_max_vertex(*base.dist, type == 'A' ? base.hA : base.hB, base.c);
}

}  // namespace keq
