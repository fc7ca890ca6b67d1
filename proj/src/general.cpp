#include "keq/general.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "detail.hpp"

namespace keq {

std::string_view to_string(GeneralRegion r) {
    switch (r) {
        case GeneralRegion::Rs: return "Rs";
        case GeneralRegion::Rt: return "Rt";
        case GeneralRegion::RbK: return "RbK";
        case GeneralRegion::RbMixed: return "RbMixed";
        case GeneralRegion::RbScarce: return "RbScarce";
        case GeneralRegion::HumansAbundant: return "HumansAbundant";
    }
    return "?";
}

bool compute_sufficient(const Economy& econ) {
    return econ.mu >= span(econ, econ.m);
}

bool mixing_dominates(const Economy& econ) {
    const WageCandidates w = wage_candidates(econ);
    const double n_m = span(econ, econ.m);
    const double n_h = span(econ, econ.h);
    return w.w_b - w.w_s <= n_m * n_h * (w.w_t - w.w_s);
}

GeneralEquilibrium solve_general(const Economy& econ) {
    check_economy(econ);
    const double n_h = span(econ, econ.h);

    GeneralEquilibrium out;
    if (econ.mu < 1.0 / n_h) {
        // Humans outnumber what the machines can absorb; labor income is the
        // stand-alone F(h). The rental rate is left unset.
        out.region = GeneralRegion::HumansAbundant;
        out.w_star = econ.dist->cdf(econ.h);
        return out;
    }

    const Region base = classify(econ);
    if (base == Region::Rs || base == Region::Rt || compute_sufficient(econ)) {
        const Equilibrium eq = detail::fixed_rental_equilibrium(econ);
        out.region = base == Region::Rs   ? GeneralRegion::Rs
                     : base == Region::Rt ? GeneralRegion::Rt
                                          : GeneralRegion::RbK;
        out.w_star = eq.w_star;
        out.r_star = eq.r_star;
        out.alpha = eq.alpha;
        out.mu_alloc = eq.mu_alloc;
        out.output = eq.output;
        return out;
    }

    const WageCandidates w = wage_candidates(econ);
    const double n_m = span(econ, econ.m);
    const double fm = econ.dist->cdf(econ.m);
    Alloc alpha, mu_alloc;

    if (mixing_dominates(econ)) {
        // Scarce machines split between b and t firms; both break even.
        out.region = GeneralRegion::RbMixed;
        const double coupling = n_m * n_h - 1.0;
        out.r_star = fm + n_h * (w.w_b - w.w_t) / coupling;
        out.w_star = w.w_b - n_m * n_h * (w.w_b - w.w_t) / coupling;
        alpha.b = (econ.mu - 1.0 / n_h) / (n_m - 1.0 / n_h);
        alpha.t = 1.0 - alpha.b;
        mu_alloc.b = alpha.b * n_m;
        mu_alloc.t = alpha.t / n_h;
    } else {
        // Machines all go to b firms; leftover humans produce unassisted.
        out.region = GeneralRegion::RbScarce;
        out.r_star = effective_success(econ) - econ.dist->cdf(econ.h) / n_m;
        out.w_star = econ.dist->cdf(econ.h);
        alpha.b = econ.mu / n_m;
        alpha.s = 1.0 - alpha.b;
        mu_alloc.b = econ.mu;
    }
    out.alpha = alpha;
    out.mu_alloc = mu_alloc;
    out.output = econ.mu * *out.r_star + out.w_star;
    return out;
}

namespace {

// A candidate gap is a real discontinuity when the variation stays put as
// the bracket shrinks; at a kink or steep-but-smooth stretch it decays with
// the bracket.
bool confirm_jump(const std::function<double(double)>& value, double t_lo, double t_hi,
                  double gap) {
    double lo = t_lo, hi = t_hi;
    double v_lo = value(lo), v_hi = value(hi);
    for (int round = 0; round < 12; ++round) {
        const double mid = 0.5 * (lo + hi);
        const double v_mid = value(mid);
        if (std::abs(v_mid - v_lo) >= std::abs(v_hi - v_mid)) {
            hi = mid;
            v_hi = v_mid;
        } else {
            lo = mid;
            v_lo = v_mid;
        }
    }
    return std::abs(v_hi - v_lo) >= 0.5 * std::abs(gap);
}

// Flags step i when |delta[i]| dwarfs the neighbouring steps' deltas and the
// refinement confirms the gap does not vanish under bisection.
std::vector<Jump> flag_jumps(const std::vector<double>& delta, const std::vector<ScanRow>& rows,
                             double factor, const std::function<double(double)>& value) {
    constexpr int kWindow = 5;
    constexpr double kFloor = 1e-9;
    std::vector<Jump> jumps;
    const int n = static_cast<int>(delta.size());
    for (int i = 0; i < n; ++i) {
        double local = 0.0;
        for (int j = std::max(0, i - kWindow); j <= std::min(n - 1, i + kWindow); ++j) {
            if (j != i) local = std::max(local, std::abs(delta[j]));
        }
        if (std::abs(delta[i]) > factor * local + kFloor &&
            confirm_jump(value, rows[i].t, rows[i + 1].t, delta[i])) {
            jumps.push_back({i, rows[i].t, rows[i + 1].t, delta[i]});
        }
    }
    return jumps;
}

}  // namespace

ScanResult discontinuity_scan(const Economy& base, Point from, Point to, int steps,
                              double jump_factor) {
    if (steps < 1) throw std::domain_error("discontinuity_scan: need >= 1 step");
    if (!in_unit_square(from) || !in_unit_square(to)) {
        throw std::domain_error("discontinuity_scan: ray leaves [0,1]^2");
    }

    ScanResult res;
    res.rows.reserve(static_cast<std::size_t>(steps) + 1);
    Economy econ = base;
    for (int k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) / steps;
        econ.m = {from.x1 + t * (to.x1 - from.x1), from.x2 + t * (to.x2 - from.x2)};
        const GeneralEquilibrium eq = solve_general(econ);
        res.rows.push_back({t, econ.m, eq.region, eq.w_star, eq.r_star});
    }

    std::vector<double> dw(static_cast<std::size_t>(steps));
    std::vector<double> dr(static_cast<std::size_t>(steps), 0.0);
    for (int i = 0; i < steps; ++i) {
        dw[static_cast<std::size_t>(i)] = res.rows[i + 1].w_star - res.rows[i].w_star;
        if (res.rows[i].r_star && res.rows[i + 1].r_star) {
            dr[static_cast<std::size_t>(i)] = *res.rows[i + 1].r_star - *res.rows[i].r_star;
        }
    }
    auto solve_at = [&](double t) {
        Economy probe = base;
        probe.m = {from.x1 + t * (to.x1 - from.x1), from.x2 + t * (to.x2 - from.x2)};
        return solve_general(probe);
    };
    auto w_at = [&](double t) { return solve_at(t).w_star; };
    auto r_at = [&](double t) { return solve_at(t).r_star.value_or(0.0); };
    res.w_jumps = flag_jumps(dw, res.rows, jump_factor, w_at);
    res.r_jumps = flag_jumps(dr, res.rows, jump_factor, r_at);
    return res;
}

namespace {

bool in_rb(const Economy& probe) {
    const WageCandidates w = wage_candidates(probe);
    return w.w_b > std::max(w.w_s, w.w_t);
}

// Highest m2 with (m1, m2) in Rb, or -1 when the column misses Rb entirely.
double rb_column_top(Economy& probe, double m1, int grid) {
    probe.m.x1 = m1;
    auto member = [&](double m2) {
        probe.m.x2 = m2;
        return in_rb(probe);
    };
    if (member(1.0)) return 1.0;
    int k = grid;
    while (k >= 0 && !member(static_cast<double>(k) / grid)) --k;
    if (k < 0) return -1.0;
    double lo = static_cast<double>(k) / grid;       // inside
    double hi = static_cast<double>(k + 1) / grid;   // outside
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (member(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

double compute_K_coverage_mu(const ProblemDist& dist, Knowledge h, double c) {
    constexpr int kGrid = 400;
    Economy probe;
    probe.dist = DistPtr(&dist, [](const ProblemDist*) {});
    probe.h = h;
    probe.c = c;
    probe.mu = 1.0;  // irrelevant to region membership
    probe.synergy = true;

    // n(m) rises with F(m), so the sup sits on Rb's upper envelope. Scan the
    // envelope on a coarse grid, then golden-section in m1 around the best
    // column.
    auto column_F = [&](double m1) {
        const double top = rb_column_top(probe, m1, kGrid);
        if (top < 0.0) return -1.0;
        return dist.cdf({m1, top});
    };

    double best_f = -1.0;
    double best_m1 = 0.0;
    for (int i = 0; i <= kGrid; ++i) {
        const double m1 = static_cast<double>(i) / kGrid;
        const double f = column_F(m1);
        if (f > best_f) {
            best_f = f;
            best_m1 = m1;
        }
    }

    const double step = 1.0 / kGrid;
    double lo = std::max(0.0, best_m1 - 2.0 * step);
    double hi = std::min(1.0, best_m1 + 2.0 * step);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = column_F(x1);
    double f2 = column_F(x2);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = column_F(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = column_F(x1);
        }
    }
    best_f = std::max({best_f, f1, f2});
    return 1.0 / (c * (1.0 - best_f));
}

}  // namespace keq
