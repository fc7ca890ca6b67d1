#include "keq/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace keq {

namespace {

constexpr double kFeasTol = 1e-12;

struct Vertex2 {
    double x = 0.0;
    double y = 0.0;
};

}  // namespace

OneTypeMax max_output_one_type(const Economy& econ) {
    return max_output_one_type(econ, econ.mu);
}

OneTypeMax max_output_one_type(const Economy& econ, double mu) {
    if (mu < 0.0) throw std::domain_error("max_output_one_type: mu must be >= 0");
    const WageCandidates w = wage_candidates(econ);
    const double n_m = span(econ, econ.m);   // may be +inf (forces a_b = 0)
    const double n_h = span(econ, econ.h);
    const double inv_t = 1.0 / n_h;          // machines per t-firm human
    const double fm = econ.dist->cdf(econ.m);

    const bool b_usable = std::isfinite(n_m);
    std::vector<Vertex2> candidates;
    candidates.push_back({0.0, 0.0});
    candidates.push_back({1.0, 0.0});
    candidates.push_back({0.0, 1.0});
    if (b_usable && n_m > 0.0) candidates.push_back({mu / n_m, 0.0});
    candidates.push_back({0.0, mu * n_h});
    // a_b + a_t = 1 meets the machine constraint.
    if (b_usable && std::abs(n_m - inv_t) > 0.0) {
        const double ab = (mu - inv_t) / (n_m - inv_t);
        candidates.push_back({ab, 1.0 - ab});
    }

    auto feasible = [&](const Vertex2& v) {
        if (v.x < -kFeasTol || v.y < -kFeasTol) return false;
        if (v.x + v.y > 1.0 + kFeasTol) return false;
        const double machine_use = (b_usable ? v.x * n_m : (v.x > kFeasTol ? std::numeric_limits<double>::infinity() : 0.0)) + v.y * inv_t;
        return machine_use <= mu + kFeasTol;
    };

    OneTypeMax best;
    best.output = -std::numeric_limits<double>::infinity();
    for (const Vertex2& v : candidates) {
        if (!feasible(v)) continue;
        const double ab = std::max(v.x, 0.0);
        const double at = std::max(v.y, 0.0);
        const double value =
            mu * fm + ab * w.w_b + at * w.w_t + (1.0 - ab - at) * w.w_s;
        if (value > best.output) {
            best.output = value;
            best.alpha_b = ab;
            best.alpha_t = at;
        }
    }
    return best;
}

TwoTypeMax max_output_two_type(const TwoTypeEconomy& econ) {
    const PerTypeCandidates cand = per_type_candidates(econ);
    const MatchMargins mm = match_margins(econ);
    const double nA = span(*econ.dist, econ.hA, econ.c);
    const double nB = span(*econ.dist, econ.hB, econ.c);
    const double phiA = econ.phiA;
    const double phiB = 1.0 - phiA;

    // Constraints: x + y/nB <= phiA (type-A time), y + x/nA <= phiB (type-B).
    std::vector<Vertex2> candidates;
    candidates.push_back({0.0, 0.0});
    candidates.push_back({std::min(phiA, phiB * nA), 0.0});
    candidates.push_back({0.0, std::min(phiB, phiA * nB)});
    const double coupling = nA * nB - 1.0;
    if (coupling > 0.0) {
        candidates.push_back({nA * (nB * phiA - phiB) / coupling,
                              nB * (nA * phiB - phiA) / coupling});
    }

    auto feasible = [&](const Vertex2& v) {
        return v.x >= -kFeasTol && v.y >= -kFeasTol &&
               v.x + v.y / nB <= phiA + kFeasTol && v.y + v.x / nA <= phiB + kFeasTol;
    };

    TwoTypeMax best;
    best.labor_income = -std::numeric_limits<double>::infinity();
    for (const Vertex2& v : candidates) {
        if (!feasible(v)) continue;
        const double x = std::max(v.x, 0.0);
        const double y = std::max(v.y, 0.0);
        const double value = phiA * cand.wbarA + phiB * cand.wbarB +
                             x * (mm.mBA_A - cand.wbarA) + y * (mm.mAB_B - cand.wbarB);
        if (value > best.labor_income) {
            best.labor_income = value;
            best.alpha_BA_A = x;
            best.alpha_AB_B = y;
        }
    }
    return best;
}

FdGradient fd_gradient(const std::function<double(Point)>& f, Point m, double step) {
    if (!(step > 0.0)) throw std::domain_error("fd_gradient: step must be positive");
    if (!in_unit_square(m)) throw std::domain_error("fd_gradient: point outside [0,1]^2");

    FdGradient g;
    auto diff = [&](int dim, bool& one_sided) {
        const double v = dim == 1 ? m.x1 : m.x2;
        double lo = v - step;
        double hi = v + step;
        if (lo < 0.0) {
            lo = v;
            one_sided = true;
        }
        if (hi > 1.0) {
            hi = v;
            one_sided = true;
        }
        const Point plo = dim == 1 ? Point{lo, m.x2} : Point{m.x1, lo};
        const Point phi = dim == 1 ? Point{hi, m.x2} : Point{m.x1, hi};
        return (f(phi) - f(plo)) / (hi - lo);
    };
    g.d1 = diff(1, g.one_sided_1);
    g.d2 = diff(2, g.one_sided_2);
    return g;
}

}  // namespace keq
