#include "doctest.h"

#include <cmath>
#include <set>

#include "keq/oracle.hpp"
#include "keq/rng.hpp"
#include "keq/twotype.hpp"

using namespace keq;

namespace {

// Example-1 economy of the heterogeneity analysis.
TwoTypeEconomy example1() {
    return TwoTypeEconomy{uniform_dist(), {0.375, 0.475}, {0.625, 0.725}, 0.8, {0.29, 0.7}, 0.5};
}

// Economy whose total labor income peaks away from the corners.
TwoTypeEconomy complementary() {
    return TwoTypeEconomy{uniform_dist(), {0.05, 0.05}, {0.05, 0.8}, 2.0 / 3.0, {1.0, 0.08}, 0.5};
}

TwoTypeEconomy random_two_type(Rng& rng, int style) {
    TwoTypeEconomy econ;
    econ.dist = uniform_dist();
    econ.c = rng.uniform(0.1, 0.9);
    econ.m = {rng.uniform(), rng.uniform()};
    switch (style) {
        case 0:  // unrestricted
            econ.hA = {rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
            econ.hB = {rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
            econ.phiA = rng.uniform(0.05, 0.95);
            break;
        case 1:  // complementary specialists, machines weak: human-human firms pay
            econ.hA = {rng.uniform(0.7, 0.95), rng.uniform(0.02, 0.15)};
            econ.hB = {rng.uniform(0.02, 0.15), rng.uniform(0.7, 0.95)};
            econ.phiA = rng.uniform(0.3, 0.7);
            econ.m = {rng.uniform(0.0, 0.2), rng.uniform(0.0, 0.2)};
            econ.c = rng.uniform(0.3, 0.8);
            break;
        default:  // extreme type shares
            econ.hA = {rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)};
            econ.hB = {rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)};
            econ.phiA = rng.coin() ? rng.uniform(0.02, 0.2) : rng.uniform(0.8, 0.98);
            econ.m = {rng.uniform(0.0, 0.3), rng.uniform(0.0, 0.3)};
            break;
    }
    return econ;
}

void check_market_clearing(const TwoTypeEconomy& econ, const TwoTypeEquilibrium& eq) {
    CHECK(eq.allocA.total() == doctest::Approx(econ.phiA).epsilon(1e-12));
    CHECK(eq.allocB.total() == doctest::Approx(1.0 - econ.phiA).epsilon(1e-12));
    CHECK(eq.allocA.ba_solver == 0.0);
    CHECK(eq.allocA.ab_worker == 0.0);
    CHECK(eq.allocB.ba_worker == 0.0);
    CHECK(eq.allocB.ab_solver == 0.0);
    const double nA = span(*econ.dist, econ.hA, econ.c);
    const double nB = span(*econ.dist, econ.hB, econ.c);
    // Worker and solver layers of the human-human firms must be consistent.
    CHECK(eq.allocA.ba_worker == doctest::Approx(eq.allocB.ba_solver * nA).epsilon(1e-10));
    CHECK(eq.allocB.ab_worker == doctest::Approx(eq.allocA.ab_solver * nB).epsilon(1e-10));
    for (double v : {eq.allocA.s, eq.allocA.b, eq.allocA.t, eq.allocA.ba_worker,
                     eq.allocA.ab_solver, eq.allocB.s, eq.allocB.b, eq.allocB.t,
                     eq.allocB.ba_solver, eq.allocB.ab_worker}) {
        CHECK(v >= -1e-12);
    }
}

// Operating firm types earn zero; every other configuration at most zero.
void check_zero_profit(const TwoTypeEconomy& econ, const TwoTypeEquilibrium& eq) {
    const double tol = 1e-10;
    const double r = eq.r_star;
    const double joint = econ.dist->cdf(join(econ.hA, econ.hB));
    const double nA = span(*econ.dist, econ.hA, econ.c);
    const double nB = span(*econ.dist, econ.hB, econ.c);
    const double n_m = span(*econ.dist, econ.m, econ.c);

    struct Typed {
        const Knowledge h;
        double w;
        const TypeAllocation& alloc;
    };
    const Typed types[2] = {{econ.hA, eq.wA, eq.allocA}, {econ.hB, eq.wB, eq.allocB}};
    for (const Typed& ty : types) {
        const double es = econ.dist->cdf(join(econ.m, ty.h));
        const double fm = econ.dist->cdf(econ.m);
        const double pi_s = econ.dist->cdf(ty.h) - ty.w;
        const double pi_b = std::isfinite(n_m) ? n_m * (es - r) - ty.w : -ty.w;
        const double pi_t = span(*econ.dist, ty.h, econ.c) * (es - ty.w) - r;
        CHECK(pi_s <= tol);
        CHECK(pi_b <= tol);
        CHECK(pi_t <= tol);
        if (ty.alloc.s > 1e-12) CHECK(std::abs(pi_s) <= tol);
        if (ty.alloc.b > 1e-12) CHECK(std::abs(pi_b) <= tol);
        if (ty.alloc.t > 1e-12) CHECK(std::abs(pi_t) <= tol);
        (void)fm;
    }
    const double pi_ba = nA * (joint - eq.wA) - eq.wB;
    const double pi_ab = nB * (joint - eq.wB) - eq.wA;
    CHECK(pi_ba <= tol);
    CHECK(pi_ab <= tol);
    if (eq.allocA.ba_worker > 1e-12) CHECK(std::abs(pi_ba) <= tol);
    if (eq.allocB.ab_worker > 1e-12) CHECK(std::abs(pi_ab) <= tol);
}

}  // namespace

TEST_CASE("per-type candidates and margins for the Example-1 economy") {
    const TwoTypeEconomy econ = example1();
    const PerTypeCandidates cand = per_type_candidates(econ);
    CHECK(std::abs(cand.A.w_s - 0.178) < 5e-4);
    CHECK(std::abs(cand.A.w_b - 0.149) < 5e-4);
    CHECK(std::abs(cand.A.w_t - 0.179) < 5e-4);
    CHECK(std::abs(cand.B.w_s - 0.453) < 5e-4);
    CHECK(std::abs(cand.B.w_b - 0.628) < 5e-4);
    // Zero-profit formula value; the 0.397 in the reference table truncates it.
    CHECK(std::abs(cand.B.w_t - 0.3976171875) < 5e-4);
    CHECK(cand.wbarA == cand.A.w_t);
    CHECK(cand.wbarB == cand.B.w_b);

    const MatchMargins mm = match_margins(econ);
    CHECK(std::abs(mm.mBA_A - 0.195) < 5e-4);
    CHECK(std::abs(mm.mAB_A - (-0.638)) < 5e-4);
    CHECK(std::abs(mm.mBA_B - 0.667) < 5e-4);
    CHECK(std::abs(mm.mAB_B - 0.404) < 5e-4);
}

TEST_CASE("margin identities") {
    Rng rng(2718);
    for (int i = 0; i < 200; ++i) {
        const TwoTypeEconomy econ = random_two_type(rng, i % 3);
        const PerTypeCandidates cand = per_type_candidates(econ);
        const MatchMargins mm = match_margins(econ);
        const double nA = span(*econ.dist, econ.hA, econ.c);
        const double nB = span(*econ.dist, econ.hB, econ.c);
        CHECK(std::abs(nA * (mm.mBA_A - cand.wbarA) - (mm.mBA_B - cand.wbarB)) <= 1e-12 * nA);
        CHECK(std::abs(nB * (mm.mAB_B - cand.wbarB) - (mm.mAB_A - cand.wbarA)) <= 1e-12 * nB);
    }
}

TEST_CASE("equal types never match with each other") {
    TwoTypeEconomy econ{uniform_dist(), {0.4, 0.6}, {0.4, 0.6}, 0.35, {0.3, 0.2}, 0.5};
    const TwoTypeEquilibrium eq = solve_two_type(econ);
    CHECK(eq.label == TwoTypeCase::NoMatching);
    const Economy one{econ.dist, econ.hA, econ.m, econ.c, 1.0, true};
    CHECK(eq.wA == doctest::Approx(wage_candidates(one).max()).epsilon(1e-14));
    CHECK(eq.wA == eq.wB);
    CHECK(eq.total_w == doctest::Approx(eq.wA).epsilon(1e-14));

    // Machines identical to the (single) human profile: everyone stands alone.
    econ.m = econ.hA;
    const TwoTypeEquilibrium at_h = solve_two_type(econ);
    const PerTypeCandidates cand = per_type_candidates(econ);
    CHECK(cand.wbarA == doctest::Approx(0.24).epsilon(1e-14));
    CHECK(cand.wbarB == doctest::Approx(0.24).epsilon(1e-14));
    CHECK(at_h.total_w == doctest::Approx(0.24).epsilon(1e-14));
}

TEST_CASE("Example-1 equilibrium: case 2c") {
    const TwoTypeEconomy econ = example1();
    const TwoTypeEquilibrium eq = solve_two_type(econ);
    CHECK(to_string(eq.label) == "2c");
    CHECK(std::abs(eq.wA - 0.179) < 5e-4);
    CHECK(std::abs(eq.wB - 0.667) < 5e-4);
    CHECK(eq.r_star == doctest::Approx(0.203).epsilon(1e-12));
    // All of B solves in BA firms; 0.487 of A works under them; the rest of A
    // works in top-automated firms.
    CHECK(eq.allocB.ba_solver == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(std::abs(eq.allocA.ba_worker - 0.487) < 5e-4);
    CHECK(std::abs(eq.allocA.t - 0.313) < 5e-4);
    CHECK(eq.allocA.s == 0.0);
    CHECK(eq.allocA.b == 0.0);
    check_market_clearing(econ, eq);
    check_zero_profit(econ, eq);
}

TEST_CASE("labor income at the probe point of the interior-max economy") {
    const TwoTypeEquilibrium eq = solve_two_type(complementary());
    CHECK(eq.label == TwoTypeCase::NoMatching);
    CHECK(std::abs(eq.wA - 0.04) < 1e-3);
    CHECK(std::abs(eq.wB - 1.5652) < 1e-3);
    CHECK(std::abs(eq.total_w - 0.5484) < 1e-3);
}

TEST_CASE("case tree totality, clearing, profits, and the welfare oracle") {
    Rng rng(987654321);
    std::set<TwoTypeCase> seen;
    for (int i = 0; i < 400; ++i) {
        const TwoTypeEconomy econ = random_two_type(rng, i % 3);
        const TwoTypeEquilibrium eq = solve_two_type(econ);
        seen.insert(eq.label);
        check_market_clearing(econ, eq);
        check_zero_profit(econ, eq);

        const TwoTypeMax lp = max_output_two_type(econ);
        CHECK(std::abs(eq.total_w - lp.labor_income) <=
              1e-8 * std::max(1.0, std::abs(lp.labor_income)));
        // The output-maximizing matching masses reproduce the equilibrium's.
        CHECK(std::abs(lp.alpha_BA_A - eq.allocA.ba_worker) <= 1e-9);
        CHECK(std::abs(lp.alpha_AB_B - eq.allocB.ab_worker) <= 1e-9);
    }
    // Every case of the analysis arises in the sample.
    CHECK(seen.count(TwoTypeCase::NoMatching) == 1);
    CHECK(seen.count(TwoTypeCase::AScarce) == 1);
    CHECK(seen.count(TwoTypeCase::BothPreferBA) == 1);
    CHECK(seen.count(TwoTypeCase::BothPreferAB) == 1);
    CHECK(seen.count(TwoTypeCase::FullMatching) == 1);
    CHECK(seen.count(TwoTypeCase::BScarce) == 1);
}

TEST_CASE("labor surface") {
    TwoTypeEconomy econ = example1();
    const auto rows = total_labor_surface(econ, 41);
    REQUIRE(rows.size() == 41u * 41u);

    // Continuity: no cell-to-cell change wildly above the neighborhood scale.
    double max_step = 0.0;
    for (int i = 0; i < 41; ++i) {
        for (int j = 0; j + 1 < 41; ++j) {
            max_step = std::max(max_step,
                                std::abs(rows[i * 41 + j + 1].total_w - rows[i * 41 + j].total_w));
        }
    }
    for (int j = 0; j < 41; ++j) {
        for (int i = 0; i + 1 < 41; ++i) {
            max_step = std::max(max_step,
                                std::abs(rows[(i + 1) * 41 + j].total_w - rows[i * 41 + j].total_w));
        }
    }
    // Total labor income is Lipschitz at the 1/c scale of the wage bounds.
    CHECK(max_step <= (1.0 / econ.c) * (1.0 / 40.0) * 2.0);

    // Sign structure as in the heterogeneity proposition, checked by finite
    // differences at cells whose stencil keeps the same case label.
    auto total_at = [&](Point m) {
        TwoTypeEconomy probe = econ;
        probe.m = m;
        return solve_two_type(probe).total_w;
    };
    const double lo1 = std::min(econ.hA.x1, econ.hB.x1), hi1 = std::max(econ.hA.x1, econ.hB.x1);
    const double lo2 = std::min(econ.hA.x2, econ.hB.x2), hi2 = std::max(econ.hA.x2, econ.hB.x2);
    int checked = 0;
    for (const auto& row : rows) {
        const Point m = row.m;
        if (m.x1 < 0.03 || m.x1 > 0.97 || m.x2 < 0.03 || m.x2 > 0.97) continue;
        const double d = 0.02;
        TwoTypeEconomy probe = econ;
        auto label_at = [&](Point p) {
            probe.m = p;
            return solve_two_type(probe).label;
        };
        const TwoTypeCase base_label = row.label;
        bool stable = label_at({m.x1 - d, m.x2}) == base_label &&
                      label_at({m.x1 + d, m.x2}) == base_label &&
                      label_at({m.x1, m.x2 - d}) == base_label &&
                      label_at({m.x1, m.x2 + d}) == base_label;
        if (!stable) continue;
        if (std::min(std::abs(m.x1 - lo1), std::abs(m.x1 - hi1)) < 0.05) continue;
        if (std::min(std::abs(m.x2 - lo2), std::abs(m.x2 - hi2)) < 0.05) continue;
        const FdGradient g = fd_gradient(total_at, m, 1e-5);
        if (row.in_Rh) {
            CHECK(std::abs(g.d1) <= 1e-9);
            CHECK(std::abs(g.d2) <= 1e-9);
        } else {
            if (m.x1 < lo1) CHECK(g.d1 <= 1e-9);
            if (m.x1 > hi1) CHECK(g.d1 >= -1e-9);
            if (m.x2 < lo2) CHECK(g.d2 <= 1e-9);
            if (m.x2 > hi2) CHECK(g.d2 >= -1e-9);
        }
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("per-type corner maxima of the interior-max economy") {
    TwoTypeEconomy econ = complementary();
    const VertexMax a = per_type_labor_max(econ, 'A');
    const VertexMax b = per_type_labor_max(econ, 'B');
    CHECK(b.m == Point{1.0, 0.0});
    CHECK(b.value == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(a.m == Point{1.0, 1.0});
    CHECK(a.value == doctest::Approx(0.50125).epsilon(1e-9));
    CHECK_THROWS_AS(per_type_labor_max(econ, 'C'), std::domain_error);
}

TEST_CASE("global labor maximum search") {
    SUBCASE("degenerate two-type economy reduces to the corner analysis") {
        TwoTypeEconomy econ{uniform_dist(), {0.5, 0.6}, {0.5, 0.6}, 0.5, {0, 0}, 0.5};
        const LaborMax got = find_max_total_labor(econ, {60, 3, 1e-7, 1e-6});
        const VertexMax expect = labor_max_vertex(*econ.dist, econ.hA, econ.c);
        CHECK(got.is_vertex);
        CHECK(got.m.x1 == doctest::Approx(expect.m.x1).epsilon(1e-6));
        CHECK(got.m.x2 == doctest::Approx(expect.m.x2).epsilon(1e-6));
        CHECK(got.value == doctest::Approx(expect.value).epsilon(1e-9));
    }
    SUBCASE("search result dominates every corner") {
        TwoTypeEconomy econ = complementary();
        const LaborMax got = find_max_total_labor(econ, {120, 5, 1e-7, 1e-6});
        for (const Point v : {Point{0, 0}, Point{0, 1}, Point{1, 0}, Point{1, 1}}) {
            TwoTypeEconomy probe = econ;
            probe.m = v;
            CHECK(got.value >= solve_two_type(probe).total_w - 1e-12);
        }
    }
}
