#include "doctest.h"

#include <cmath>

#include "keq/baseline.hpp"
#include "keq/errors.hpp"
#include "keq/general.hpp"
#include "keq/oracle.hpp"
#include "keq/rng.hpp"

using namespace keq;

namespace {

Economy uniform_econ(Point m, double mu = 6.0, bool synergy = true) {
    return Economy{uniform_dist(), {0.5, 0.6}, m, 0.5, mu, synergy};
}

double baseline_w(const Economy& base, Point m) {
    Economy e = base;
    e.m = m;
    return solve_baseline(e).w_star;
}

}  // namespace

TEST_CASE("classify") {
    CHECK(classify(uniform_econ({0.5, 0.1})) == Region::Rb);
    CHECK(classify(uniform_econ({0.5, 0.6})) == Region::Rs);
    CHECK(classify(uniform_econ({1.0, 1.0})) == Region::Rt);
}

TEST_CASE("region geometry") {
    Rng rng(555);
    for (int i = 0; i < 50; ++i) {
        const Point h = {rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)};
        const double c = rng.uniform(0.1, 0.9);
        Economy e{uniform_dist(), h, h, c, 1e9, true};
        CHECK(classify(e) == Region::Rs);  // neighborhood of h is Rs

        e.m = {rng.uniform(), 0.0};
        CHECK(classify(e) == Region::Rb);
        e.m = {0.0, rng.uniform()};
        CHECK(classify(e) == Region::Rb);

        e.m = {1.0, 1.0};
        CHECK(classify(e) == Region::Rt);

        // Rb never contains machines dominating h in both dimensions.
        e.m = {rng.uniform(h.x1, 1.0), rng.uniform(h.x2, 1.0)};
        CHECK(classify(e) != Region::Rb);
    }
}

TEST_CASE("solve_baseline in each region") {
    SUBCASE("bottom-automated") {
        const Equilibrium eq = solve_baseline(uniform_econ({0.5, 0.1}));
        CHECK(eq.region == Region::Rb);
        CHECK(eq.w_star == doctest::Approx(0.5263157894736).epsilon(1e-12));
        CHECK(eq.r_star == doctest::Approx(0.05).epsilon(1e-14));
        CHECK(eq.alpha.b == 1.0);
        CHECK(eq.alpha.s == 0.0);
        CHECK(eq.mu_alloc.b == doctest::Approx(2.105263157894).epsilon(1e-12));
        CHECK(eq.mu_alloc.s == doctest::Approx(6.0 - 2.105263157894).epsilon(1e-12));
    }
    SUBCASE("top-automated at perfect machines") {
        const Equilibrium eq = solve_baseline(uniform_econ({1.0, 1.0}));
        CHECK(eq.region == Region::Rt);
        CHECK(eq.w_star == doctest::Approx(0.65).epsilon(1e-14));
        CHECK(eq.r_star == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(eq.alpha.t == 1.0);
        CHECK(eq.mu_alloc.t == doctest::Approx(0.35).epsilon(1e-14));
    }
    SUBCASE("machines identical to humans") {
        const Equilibrium eq = solve_baseline(uniform_econ({0.5, 0.6}));
        CHECK(eq.region == Region::Rs);
        CHECK(eq.w_star == doctest::Approx(0.3).epsilon(1e-14));
        CHECK(eq.r_star == doctest::Approx(0.3).epsilon(1e-14));
        CHECK(eq.alpha.s == 1.0);
    }
    SUBCASE("abundance precondition") {
        CHECK_THROWS_AS(solve_baseline(uniform_econ({0.5, 0.1}, 4.5)), PreconditionError);
    }
    SUBCASE("output identity") {
        const Equilibrium eq = solve_baseline(uniform_econ({0.5, 0.1}));
        CHECK(eq.output == doctest::Approx(6.0 * 0.05 + eq.w_star).epsilon(1e-14));
    }
}

TEST_CASE("analytic labor-income gradient") {
    SUBCASE("flat inside Rs") {
        const Gradient g = mpl_gradient(uniform_econ({0.45, 0.55}));
        CHECK(g.d1 == 0.0);
        CHECK(g.d2 == 0.0);
    }
    SUBCASE("Rb below h in both dimensions") {
        const Gradient g = mpl_gradient(uniform_econ({0.3, 0.2}));
        CHECK(g.d1 == doctest::Approx(-0.2 * 0.7 / (0.5 * 0.94 * 0.94)).epsilon(1e-12));
        CHECK(g.d2 == doctest::Approx(-0.3 * 0.7 / (0.5 * 0.94 * 0.94)).epsilon(1e-12));
    }
    SUBCASE("Rb with m1 above h1") {
        // Frozen against the central finite difference of solve_baseline.
        const Economy e = uniform_econ({0.7, 0.2});
        const Gradient g = mpl_gradient(e);
        const FdGradient fd = fd_gradient(
            [&](Point m) { return baseline_w(e, m); }, e.m, 1e-6);
        CHECK(g.d1 == doctest::Approx(1.0816657646).epsilon(1e-9));
        CHECK(g.d1 == doctest::Approx(fd.d1).epsilon(1e-7));
        CHECK(g.d2 == doctest::Approx(fd.d2).epsilon(1e-7));
    }
    SUBCASE("kinks and boundaries rejected") {
        CHECK_THROWS_AS(mpl_gradient(uniform_econ({0.5, 0.2})), NondifferentiableError);
        CHECK_THROWS_AS(mpl_gradient(uniform_econ({0.3, 0.6})), NondifferentiableError);
        // Exact Rs/Rb boundary: for m below h it is the locus F(m) = 3/17.
        CHECK_THROWS_AS(mpl_gradient(uniform_econ({0.4, 3.0 / (17.0 * 0.4)})),
                        NondifferentiableError);
    }
}

TEST_CASE("gradient matches finite differences at random interior points") {
    Rng rng(20240917);
    for (bool synergy : {true, false}) {
        int accepted = 0;
        while (accepted < 100) {
            const Point h = {rng.uniform(0.15, 0.85), rng.uniform(0.15, 0.85)};
            const double c = rng.uniform(0.1, 0.9);
            const Point m = {rng.uniform(0.02, 0.98), rng.uniform(0.02, 0.98)};
            Economy e{uniform_dist(), h, m, c, 0.0, synergy};
            e.mu = 2.0 / (c * (1.0 - std::max(h.x1, h.x2)));  // comfortably abundant

            if (std::abs(m.x1 - h.x1) < 1e-3 || std::abs(m.x2 - h.x2) < 1e-3) continue;
            const Region region = classify(e);
            if (region == Region::Rs) continue;
            // The finite-difference stencil must stay strictly inside the region.
            bool stable = true;
            for (const double d1 : {-2e-5, 2e-5}) {
                for (const double d2 : {-2e-5, 2e-5}) {
                    Economy probe = e;
                    probe.m = {m.x1 + d1, m.x2 + d2};
                    if (classify(probe) != region) stable = false;
                }
            }
            if (!stable) continue;

            Gradient g;
            try {
                g = mpl_gradient(e);
            } catch (const NondifferentiableError&) {
                continue;
            }
            const FdGradient fd = fd_gradient([&](Point p) { return baseline_w(e, p); }, m, 1e-5);
            const double scale1 = std::max({std::abs(g.d1), std::abs(fd.d1), 1e-6});
            const double scale2 = std::max({std::abs(g.d2), std::abs(fd.d2), 1e-6});
            CHECK(std::abs(g.d1 - fd.d1) / scale1 < 1e-5);
            CHECK(std::abs(g.d2 - fd.d2) / scale2 < 1e-5);

            // Sign structure.
            if (synergy) {
                if (m.x1 < h.x1 && m.x2 > 0.0) CHECK(g.d1 < 0.0);
                if (m.x1 > h.x1) CHECK(g.d1 > 0.0);
                if (m.x2 < h.x2 && m.x1 > 0.0) CHECK(g.d2 < 0.0);
                if (m.x2 > h.x2) CHECK(g.d2 > 0.0);
            } else {
                if (m.x1 > h.x1) CHECK(g.d1 >= 0.0);
                if (m.x1 < h.x1 && m.x2 <= h.x2) CHECK(g.d1 <= 0.0);
                if (m.x2 > h.x2) CHECK(g.d2 >= 0.0);
                if (m.x2 < h.x2 && m.x1 <= h.x1) CHECK(g.d2 <= 0.0);
            }
            ++accepted;
        }
    }
}

TEST_CASE("labor income is continuous across regions") {
    Rng rng(777);
    for (int i = 0; i < 20; ++i) {
        const Point h = {rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)};
        const double c = rng.uniform(0.2, 0.8);
        Economy e{uniform_dist(), h, {0, 0}, c, 0.0, true};
        e.mu = 2.0 / (c * (1.0 - std::max(h.x1, h.x2)));
        const Point from = {rng.uniform(0.0, 0.3), rng.uniform(0.0, 0.3)};
        const Point to = {rng.uniform(0.7, 1.0), rng.uniform(0.7, 1.0)};
        const ScanResult scan = discontinuity_scan(e, from, to, 400);
        CHECK(scan.w_jumps.empty());
        CHECK(scan.r_jumps.empty());
    }
}

TEST_CASE("output and rental rise with machine knowledge") {
    Rng rng(313);
    for (int i = 0; i < 200; ++i) {
        const Point h = {rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)};
        const double c = rng.uniform(0.2, 0.8);
        Economy e{uniform_dist(), h, {rng.uniform(0.0, 0.95), rng.uniform(0.0, 0.95)}, c, 0.0, true};
        e.mu = 2.0 / (c * (1.0 - std::max(h.x1, h.x2)));
        const Equilibrium before = solve_baseline(e);
        Economy up = e;
        const double step = rng.uniform(0.01, 0.05);
        if (rng.coin()) {
            up.m.x1 = std::min(1.0, up.m.x1 + step);
        } else {
            up.m.x2 = std::min(1.0, up.m.x2 + step);
        }
        const Equilibrium after = solve_baseline(up);
        CHECK(after.output >= before.output - 1e-12);
        CHECK(after.r_star >= before.r_star - 1e-15);
        // Per-human output of two-layer firms, within a matched region.
        const double es_b = effective_success(e);
        const double es_a = effective_success(up);
        if (before.region == Region::Rb && after.region == Region::Rb) {
            CHECK(span(up, up.m) * es_a >= span(e, e.m) * es_b - 1e-12);
        }
        if (before.region == Region::Rt && after.region == Region::Rt) {
            CHECK(es_a >= es_b - 1e-12);
        }
    }
}

TEST_CASE("stronger in dimension 2") {
    auto u = uniform_dist();
    CHECK(stronger_in_dim2(*u, {0.5, 0.6}));
    CHECK_FALSE(stronger_in_dim2(*u, {0.6, 0.5}));
    CHECK(stronger_in_dim2(*u, {0.4, 0.4}));
}

TEST_CASE("labor income maxima over the corners") {
    auto u = uniform_dist();
    SUBCASE("humans strong in dimension 2 only") {
        const VertexMax v = labor_max_vertex(*u, {1.0 / 6.0, 4.0 / 5.0}, 0.5);
        CHECK(v.m == Point{1.0, 0.0});
        CHECK(v.value == doctest::Approx(1.6).epsilon(1e-12));
    }
    SUBCASE("humans weak in both dimensions") {
        const VertexMax v = labor_max_vertex(*u, {1.0 / 6.0, 1.0 / 5.0}, 0.5);
        CHECK(v.m == Point{1.0, 1.0});
        CHECK(v.value == doctest::Approx(31.0 / 60.0).epsilon(1e-12));
    }
    SUBCASE("reference economy") {
        const VertexMax v = labor_max_vertex(*u, {0.5, 0.6}, 0.5);
        CHECK(v.m == Point{1.0, 0.0});
        CHECK(v.value == doctest::Approx(1.2).epsilon(1e-12));
        CHECK(v.vertex_values[0] == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(v.vertex_values[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(v.vertex_values[2] == doctest::Approx(1.2).epsilon(1e-12));
        CHECK(v.vertex_values[3] == doctest::Approx(0.65).epsilon(1e-12));
    }
}

TEST_CASE("corner-preference thresholds") {
    auto u = uniform_dist();
    // For the uniform family: gap = 2 h2 - 1 + 0.5 (1 - h1 h2) at c = 1/2.
    CHECK(corner_gap(*u, {0.5, 0.6}, 0.5) == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(corner_gap(*u, {0.3, 0.4}, 0.5) ==
          doctest::Approx(2.0 * 0.4 - 1.0 + 0.5 * (1.0 - 0.12)).epsilon(1e-12));
    CHECK(corner_gap(*u, {0.9, 0.999}, 0.5) > 0.0);  // h2 near 1 favors (1,0)

    CHECK(lower_h2(*u, 0.37) == doctest::Approx(0.37).epsilon(1e-9));

    const ThresholdCurve curve = labor_max_thresholds(*u, 0.5, 21);
    // gap(h1, h1) = 0 at h1 = 2 - sqrt(3).
    CHECK(curve.h1_bar == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-8));
    for (const auto& s : curve.samples) {
        CHECK(s.h2_lo == doctest::Approx(s.h1).epsilon(1e-8));
        if (s.h1 < curve.h1_bar) {
            // Interior switch point solves 2y - 1 + (1 - h1 y)/2 = 0.
            CHECK(s.h2_bar == doctest::Approx(0.5 / (2.0 - 0.5 * s.h1)).epsilon(1e-8));
        } else {
            CHECK(s.h2_bar == doctest::Approx(s.h2_lo).epsilon(1e-8));
        }
        // Above the switch curve (1,0) wins; below it (1,1) wins.
        const double above = std::min(1.0 - 1e-6, s.h2_bar + 1e-3);
        if (above > s.h2_lo) {
            CHECK(labor_max_vertex(*u, {s.h1, above}, 0.5).m == Point{1.0, 0.0});
        }
        const double below = s.h2_bar - 1e-3;
        if (below > s.h2_lo) {
            CHECK(labor_max_vertex(*u, {s.h1, below}, 0.5).m == Point{1.0, 1.0});
        }
    }
}

TEST_CASE("gradual-improvement trajectory") {
    const Economy base = uniform_econ({0, 0});
    SUBCASE("constant at h") {
        std::vector<Point> path(5, Point{0.5, 0.6});
        const auto rows = trajectory(base, path);
        for (const auto& r : rows) CHECK(r.w_star == doctest::Approx(0.3).epsilon(1e-14));
    }
    SUBCASE("inside Rs labor income is flat") {
        const auto path = segment_path({0.48, 0.55}, {0.52, 0.65}, 9);
        Economy e = base;
        bool all_rs = true;
        for (const Point& p : path) {
            e.m = p;
            all_rs = all_rs && classify(e) == Region::Rs;
        }
        REQUIRE(all_rs);
        const auto rows = trajectory(base, path);
        for (const auto& r : rows) CHECK(r.w_star == doctest::Approx(rows[0].w_star).epsilon(1e-13));
    }
    SUBCASE("the dip-then-recover path") {
        const auto path = segment_path({0.25, 0.25}, {0.9, 0.325}, 131);
        const auto rows = trajectory(base, path);
        CHECK(rows.back().w_star > rows.front().w_star);

        std::size_t argmin = 0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].w_star < rows[argmin].w_star) argmin = i;
        }
        CHECK(std::abs(rows[argmin].m.x1 - 0.5) < 0.02);
        CHECK(std::abs(rows[argmin].m.x2 - 0.28) < 0.02);

        // Nonincreasing while machines trail humans in both dimensions.
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            if (rows[i + 1].m.x1 < 0.5) CHECK(rows[i + 1].w_star <= rows[i].w_star + 1e-12);
        }
    }
}
