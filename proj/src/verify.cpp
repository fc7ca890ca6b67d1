#include "keq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "keq/errors.hpp"
#include "keq/general.hpp"
#include "keq/oracle.hpp"
#include "keq/rng.hpp"
#include "keq/twotype.hpp"

namespace keq {

namespace {

Economy random_abundant(Rng& rng) {
    Economy e;
    e.dist = uniform_dist();
    e.h = {rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)};
    e.m = {rng.uniform(), rng.uniform()};
    e.c = rng.uniform(0.05, 0.95);
    e.synergy = true;
    e.mu = (1.0 + rng.uniform()) * 1.5 / (e.c * (1.0 - std::max(e.h.x1, e.h.x2)));
    return e;
}

Economy random_general(Rng& rng, int regime) {
    Economy e = random_abundant(rng);
    const double mu_min = e.c * (1.0 - e.dist->cdf(e.h));  // 1/n(h)
    const double mu_abundant = 1.2 / (e.c * (1.0 - std::max(e.h.x1, e.h.x2)));
    switch (regime) {
        case 0: e.mu = rng.uniform(mu_min, 1.0 / e.c); break;
        case 1: e.mu = rng.uniform(1.0 / e.c, mu_abundant); break;
        default: e.mu = mu_abundant * (1.0 + rng.uniform()); break;
    }
    return e;
}

TwoTypeEconomy random_two_type(Rng& rng, int style) {
    TwoTypeEconomy econ;
    econ.dist = uniform_dist();
    econ.c = rng.uniform(0.1, 0.9);
    econ.m = {rng.uniform(), rng.uniform()};
    switch (style) {
        case 0:
            econ.hA = {rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
            econ.hB = {rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
            econ.phiA = rng.uniform(0.05, 0.95);
            break;
        case 1:  // complementary specialists with weak machines
            econ.hA = {rng.uniform(0.7, 0.95), rng.uniform(0.02, 0.15)};
            econ.hB = {rng.uniform(0.02, 0.15), rng.uniform(0.7, 0.95)};
            econ.phiA = rng.uniform(0.3, 0.7);
            econ.m = {rng.uniform(0.0, 0.2), rng.uniform(0.0, 0.2)};
            econ.c = rng.uniform(0.3, 0.8);
            break;
        default:
            econ.hA = {rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)};
            econ.hB = {rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)};
            econ.phiA = rng.coin() ? rng.uniform(0.02, 0.2) : rng.uniform(0.8, 0.98);
            econ.m = {rng.uniform(0.0, 0.3), rng.uniform(0.0, 0.3)};
            break;
    }
    return econ;
}

double rel_gap(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

SuiteResult welfare_suite(std::uint64_t seed, int instances, bool inject_fault) {
    SuiteResult res;
    res.name = "welfare-equivalence";
    if (instances <= 0) {
        res.note = "vacuous: no instances requested";
        return res;
    }
    constexpr double kTol = 1e-8;
    Rng rng(seed);

    for (int i = 0; i < instances; ++i) {
        const Economy e = random_abundant(rng);
        double y = solve_baseline(e).output;
        if (inject_fault) {
            WageCandidates w = wage_candidates(e);
            w.w_b += 1e-3;
            y = e.mu * e.dist->cdf(e.m) + w.max();
        }
        res.max_residual = std::max(res.max_residual, rel_gap(y, max_output_one_type(e).output));
        ++res.checks;
    }

    std::set<GeneralRegion> regions;
    for (int i = 0; i < instances; ++i) {
        const Economy e = random_general(rng, i % 3);
        const GeneralEquilibrium eq = solve_general(e);
        regions.insert(eq.region);
        if (!eq.output) continue;
        res.max_residual =
            std::max(res.max_residual, rel_gap(*eq.output, max_output_one_type(e).output));
        ++res.checks;
    }

    std::set<TwoTypeCase> cases;
    for (int i = 0; i < instances; ++i) {
        const TwoTypeEconomy econ = random_two_type(rng, i % 3);
        const TwoTypeEquilibrium eq = solve_two_type(econ);
        cases.insert(eq.label);
        res.max_residual =
            std::max(res.max_residual, rel_gap(eq.total_w, max_output_two_type(econ).labor_income));
        ++res.checks;
    }

    res.pass = res.max_residual <= kTol;
    if (instances >= 200) {
        if (regions.size() < 5) {
            res.pass = false;
            res.note = "compute-regime coverage incomplete";
        }
        if (cases.size() < 6) {
            res.pass = false;
            res.note += std::string(res.note.empty() ? "" : "; ") + "two-type case coverage incomplete";
        }
    }
    return res;
}

SuiteResult gradient_suite(std::uint64_t seed, int points) {
    SuiteResult res;
    res.name = "gradient-oracle";
    if (points <= 0) {
        res.note = "vacuous: no points requested";
        return res;
    }
    Rng rng(seed);
    int sign_violations = 0;

    for (bool synergy : {true, false}) {
        int accepted = 0;
        int guard = 0;
        while (accepted < points && ++guard < 100000) {
            Economy e;
            e.dist = uniform_dist();
            e.h = {rng.uniform(0.15, 0.85), rng.uniform(0.15, 0.85)};
            e.m = {rng.uniform(0.02, 0.98), rng.uniform(0.02, 0.98)};
            e.c = rng.uniform(0.1, 0.9);
            e.synergy = synergy;
            e.mu = 2.0 / (e.c * (1.0 - std::max(e.h.x1, e.h.x2)));

            if (std::abs(e.m.x1 - e.h.x1) < 1e-3 || std::abs(e.m.x2 - e.h.x2) < 1e-3) continue;
            const Region region = classify(e);
            if (region == Region::Rs) continue;
            bool stable = true;
            for (const double d1 : {-2e-5, 0.0, 2e-5}) {
                for (const double d2 : {-2e-5, 0.0, 2e-5}) {
                    Economy probe = e;
                    probe.m = {e.m.x1 + d1, e.m.x2 + d2};
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
            auto w_of = [&](Point m) {
                Economy probe = e;
                probe.m = m;
                return solve_baseline(probe).w_star;
            };
            const FdGradient fd = fd_gradient(w_of, e.m, 1e-5);
            res.max_residual = std::max(
                res.max_residual,
                std::abs(g.d1 - fd.d1) / std::max({std::abs(g.d1), std::abs(fd.d1), 1e-6}));
            res.max_residual = std::max(
                res.max_residual,
                std::abs(g.d2 - fd.d2) / std::max({std::abs(g.d2), std::abs(fd.d2), 1e-6}));

            auto bad_sign = [&](double mi, double hi, double mj, double hj, double grad) {
                if (synergy) {
                    if (mi < hi && mj > 0.0 && !(grad < 0.0)) return true;
                    if (mi > hi && !(grad > 0.0)) return true;
                } else {
                    if (mi > hi && grad < 0.0) return true;
                    if (mi < hi && mj <= hj && grad > 0.0) return true;
                }
                return false;
            };
            if (bad_sign(e.m.x1, e.h.x1, e.m.x2, e.h.x2, g.d1)) ++sign_violations;
            if (bad_sign(e.m.x2, e.h.x2, e.m.x1, e.h.x1, g.d2)) ++sign_violations;
            ++accepted;
            ++res.checks;
        }
    }
    res.pass = res.max_residual <= 1e-5 && sign_violations == 0 && res.checks == 2 * points;
    if (sign_violations > 0) res.note = "sign violations: " + std::to_string(sign_violations);
    if (res.checks != 2 * points) {
        res.note += std::string(res.note.empty() ? "" : "; ") + "sampling incomplete";
    }
    return res;
}

SuiteResult continuity_suite(std::uint64_t seed) {
    SuiteResult res;
    res.name = "continuity";
    Rng rng(seed);

    // Abundant machines: no price jumps anywhere.
    for (int i = 0; i < 20; ++i) {
        Economy e;
        e.dist = uniform_dist();
        e.h = {rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)};
        e.c = rng.uniform(0.2, 0.8);
        e.synergy = true;
        e.mu = 2.0 / (e.c * (1.0 - std::max(e.h.x1, e.h.x2)));
        const Point from = {rng.uniform(0.0, 0.3), rng.uniform(0.0, 0.3)};
        const Point to = {rng.uniform(0.7, 1.0), rng.uniform(0.7, 1.0)};
        const ScanResult scan = discontinuity_scan(e, from, to, 400);
        res.checks += 1;
        if (!scan.w_jumps.empty() || !scan.r_jumps.empty()) {
            res.pass = false;
            res.note = "spurious jump under abundant machines";
        }
    }

    // Scarce machines: exactly one co-located (w down, r up) jump on a ray
    // crossing the compute-sufficiency boundary inside Rb.
    Economy scarce{uniform_dist(), {0.5, 0.6}, {0, 0}, 0.5, 2.3, true};
    const ScanResult scan = discontinuity_scan(scarce, {0.2, 0.3}, {0.7, 0.3}, 500);
    res.checks += 1;
    if (scan.w_jumps.size() != 1 || scan.r_jumps.size() != 1 ||
        !(scan.w_jumps[0].delta < 0.0) || !(scan.r_jumps[0].delta > 0.0) ||
        std::abs(scan.w_jumps[0].step - scan.r_jumps[0].step) > 1) {
        res.pass = false;
        res.note += std::string(res.note.empty() ? "" : "; ") + "missing or misplaced scarcity jump";
    }

    // Non-abundant scans stay continuous away from the K boundary; this ray
    // runs through RbMixed into Rt entirely outside K.
    Economy mixed = scarce;
    const ScanResult upper = discontinuity_scan(mixed, {0.2, 0.95}, {0.45, 0.95}, 400);
    res.checks += 1;
    if (!upper.w_jumps.empty()) {
        res.pass = false;
        res.note += std::string(res.note.empty() ? "" : "; ") + "spurious jump in the mixed band";
    }
    return res;
}

SuiteResult sign_suite(std::uint64_t seed) {
    SuiteResult res;
    res.name = "two-type-signs";
    (void)seed;
    TwoTypeEconomy econ{uniform_dist(), {0.375, 0.475}, {0.625, 0.725}, 0.8, {0, 0}, 0.5};
    const int n = 41;
    const double lo1 = std::min(econ.hA.x1, econ.hB.x1), hi1 = std::max(econ.hA.x1, econ.hB.x1);
    const double lo2 = std::min(econ.hA.x2, econ.hB.x2), hi2 = std::max(econ.hA.x2, econ.hB.x2);

    auto solve_at = [&](Point m) {
        TwoTypeEconomy probe = econ;
        probe.m = m;
        return solve_two_type(probe);
    };
    int violations = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Point m = {static_cast<double>(i) / (n - 1), static_cast<double>(j) / (n - 1)};
            if (m.x1 < 0.03 || m.x1 > 0.97 || m.x2 < 0.03 || m.x2 > 0.97) continue;
            if (std::min(std::abs(m.x1 - lo1), std::abs(m.x1 - hi1)) < 0.05) continue;
            if (std::min(std::abs(m.x2 - lo2), std::abs(m.x2 - hi2)) < 0.05) continue;
            const TwoTypeEquilibrium base = solve_at(m);
            const double d = 0.02;
            bool stable = true;
            for (const Point p : {Point{m.x1 - d, m.x2}, Point{m.x1 + d, m.x2},
                                  Point{m.x1, m.x2 - d}, Point{m.x1, m.x2 + d}}) {
                if (solve_at(p).label != base.label) stable = false;
            }
            if (!stable) continue;

            auto total_at = [&](Point p) { return solve_at(p).total_w; };
            const FdGradient g = fd_gradient(total_at, m, 1e-5);
            ++res.checks;
            if (humans_avoid_machines(base)) {
                if (std::abs(g.d1) > 1e-9 || std::abs(g.d2) > 1e-9) ++violations;
                continue;
            }
            if (m.x1 < lo1 && g.d1 > 1e-9) ++violations;
            if (m.x1 > hi1 && g.d1 < -1e-9) ++violations;
            if (m.x2 < lo2 && g.d2 > 1e-9) ++violations;
            if (m.x2 > hi2 && g.d2 < -1e-9) ++violations;
            res.max_residual = std::max(res.max_residual, static_cast<double>(violations));
        }
    }
    res.pass = violations == 0 && res.checks > 100;
    if (violations > 0) res.note = "sign violations: " + std::to_string(violations);
    return res;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int instances, bool inject_fault) {
    std::vector<SuiteResult> all;
    all.push_back(welfare_suite(seed, instances, inject_fault));
    all.push_back(gradient_suite(seed + 1, std::min(instances, 100)));
    all.push_back(continuity_suite(seed + 2));
    all.push_back(sign_suite(seed + 3));
    return all;
}

}  // namespace keq
