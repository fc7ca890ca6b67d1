#include "keq/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "keq/errors.hpp"
#include "detail.hpp"

namespace keq {

namespace {

constexpr double kBisectTol = 1e-10;

double bisect(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo);
    double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo < 0.0) == (ghi < 0.0)) {
        throw std::runtime_error("bisect: no sign change on bracket");
    }
    while (hi - lo > kBisectTol) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(Region r) {
    switch (r) {
        case Region::Rs: return "Rs";
        case Region::Rb: return "Rb";
        case Region::Rt: return "Rt";
    }
    return "?";
}

Region classify(const Economy& econ) {
    check_economy(econ);
    const WageCandidates w = wage_candidates(econ);
    if (w.w_s >= std::max(w.w_b, w.w_t)) return Region::Rs;
    if (w.w_b > std::max(w.w_s, w.w_t)) return Region::Rb;
    return Region::Rt;
}

Equilibrium detail::fixed_rental_equilibrium(const Economy& econ) {
    const WageCandidates w = wage_candidates(econ);
    Equilibrium eq;
    eq.region = classify(econ);
    eq.r_star = econ.dist->cdf(econ.m);
    eq.w_star = w.max();
    switch (eq.region) {
        case Region::Rs:
            eq.alpha = {1.0, 0.0, 0.0};
            eq.mu_alloc = {econ.mu, 0.0, 0.0};
            break;
        case Region::Rb: {
            const double n_m = span(econ, econ.m);
            eq.alpha = {0.0, 1.0, 0.0};
            eq.mu_alloc = {econ.mu - n_m, n_m, 0.0};
            break;
        }
        case Region::Rt: {
            const double per_t = 1.0 / span(econ, econ.h);
            eq.alpha = {0.0, 0.0, 1.0};
            eq.mu_alloc = {econ.mu - per_t, 0.0, per_t};
            break;
        }
    }
    eq.output = econ.mu * eq.r_star + eq.w_star;
    return eq;
}

Equilibrium solve_baseline(const Economy& econ) {
    check_economy(econ);
    if (!abundance_holds(econ)) {
        throw PreconditionError("solve_baseline: machines not abundant; use solve_general");
    }
    return detail::fixed_rental_equilibrium(econ);
}

namespace {

// dw*/dm_i for dim i = 1 or 2; j is the other coordinate.
double gradient_component(const Economy& econ, Region region, int dim) {
    const ProblemDist& dist = *econ.dist;
    const double m_i = dim == 1 ? econ.m.x1 : econ.m.x2;
    const double m_j = dim == 1 ? econ.m.x2 : econ.m.x1;
    const double h_i = dim == 1 ? econ.h.x1 : econ.h.x2;
    const double h_j = dim == 1 ? econ.h.x2 : econ.h.x1;

    // dF(m)/dm_i, the slice of newly joint-solvable problems, and
    // dF(m AND h)/dm_i (when m_i < h_i).
    const double s_base = dist.section_integral(dim, m_i, 0.0, m_j);
    const double s_mid = m_j >= h_j ? 0.0 : dist.section_integral(dim, m_i, m_j, h_j);
    const double s_meet = dist.section_integral(dim, m_i, 0.0, std::min(m_j, h_j));

    const double fm = dist.cdf(econ.m);
    const double n_h = span(econ, econ.h);
    const double denom = econ.c * (1.0 - fm);

    if (econ.synergy) {
        const double joint = dist.cdf(join(econ.m, econ.h));
        if (region == Region::Rb) {
            if (m_i < h_i) return -s_base * (1.0 - joint) / (denom * (1.0 - fm));
            return s_mid / denom + (joint - fm) * s_base / (denom * (1.0 - fm));
        }
        // Rt
        if (m_i < h_i) return -s_base / n_h;
        return s_mid + (1.0 - 1.0 / n_h) * s_base;
    }

    // Without synergies the escalation value is F(h) - F(m AND h).
    const double fh = dist.cdf(econ.h);
    const double f_meet = dist.cdf(meet(econ.m, econ.h));
    if (region == Region::Rb) {
        double d = s_base * (fh - f_meet) / (denom * (1.0 - fm));
        if (m_i < h_i) d -= s_meet / denom;
        return d;
    }
    // Rt
    double d = (1.0 - 1.0 / n_h) * s_base;
    if (m_i < h_i) d -= s_meet;
    return d;
}

}  // namespace

Gradient mpl_gradient(const Economy& econ) {
    check_economy(econ);
    if (econ.m.x1 == econ.h.x1 || econ.m.x2 == econ.h.x2) {
        throw NondifferentiableError("mpl_gradient: m_i = h_i is a kink of w*");
    }
    const WageCandidates w = wage_candidates(econ);
    const Region region = classify(econ);
    // Region boundaries are exact ties of the top two candidates; reject up
    // to rounding resolution so analytically constructed boundary points are
    // always refused.
    double v[3] = {w.w_s, w.w_b, w.w_t};
    std::sort(v, v + 3);
    if (v[2] - v[1] <= 1e-12 * std::max(1.0, v[2])) {
        throw NondifferentiableError("mpl_gradient: m lies on a region boundary");
    }
    if (region == Region::Rs) return {0.0, 0.0};
    return {gradient_component(econ, region, 1), gradient_component(econ, region, 2)};
}

bool stronger_in_dim2(const ProblemDist& dist, Knowledge h) {
    return dist.cdf({1.0, h.x2}) >= dist.cdf({h.x1, 1.0});
}

VertexMax labor_max_vertex(const ProblemDist& dist, Knowledge h, double c) {
    const double v00 = dist.cdf(h) / c;
    const double v01 = dist.cdf({h.x1, 1.0}) / c;
    const double v10 = dist.cdf({1.0, h.x2}) / c;
    const double v11 = 1.0 - 1.0 / span(dist, h, c);

    VertexMax out;
    out.vertex_values = {v00, v01, v10, v11};
    // Preference order on ties: (1,0), (1,1), (0,1), (0,0).
    const Point corners[4] = {{1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}};
    const double values[4] = {v10, v11, v01, v00};
    out.m = corners[0];
    out.value = values[0];
    for (int i = 1; i < 4; ++i) {
        if (values[i] > out.value) {
            out.value = values[i];
            out.m = corners[i];
        }
    }
    return out;
}

double corner_gap(const ProblemDist& dist, Knowledge h, double c) {
    return dist.cdf({1.0, h.x2}) / c - 1.0 + c * (1.0 - dist.cdf(h));
}

double lower_h2(const ProblemDist& dist, double h1) {
    if (!(h1 > 0.0 && h1 < 1.0)) throw std::domain_error("lower_h2: h1 outside (0,1)");
    const double target = dist.cdf({h1, 1.0});
    return bisect([&](double y) { return dist.cdf({1.0, y}) - target; }, 0.0, 1.0);
}

ThresholdCurve labor_max_thresholds(const ProblemDist& dist, double c, int sample_count) {
    if (!(c > 0.0 && c < 1.0)) throw std::domain_error("labor_max_thresholds: c outside (0,1)");
    if (sample_count < 2) throw std::domain_error("labor_max_thresholds: need >= 2 samples");

    constexpr double kEdge = 1e-9;
    auto gap_on_envelope = [&](double h1) {
        return corner_gap(dist, {h1, lower_h2(dist, h1)}, c);
    };

    ThresholdCurve curve;
    // Limits are -(1-c) at 0 and 1/c-1 at 1, so a sign change always exists.
    curve.h1_bar = bisect(gap_on_envelope, kEdge, 1.0 - kEdge);

    curve.samples.reserve(static_cast<std::size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i) {
        const double h1 = std::clamp(static_cast<double>(i) / (sample_count - 1), kEdge, 1.0 - kEdge);
        ThresholdCurve::Sample s;
        s.h1 = h1;
        s.h2_lo = lower_h2(dist, h1);
        if (corner_gap(dist, {h1, s.h2_lo}, c) >= 0.0) {
            s.h2_bar = s.h2_lo;  // (1,0) already wins on the whole column
        } else {
            s.h2_bar = bisect([&](double y) { return corner_gap(dist, {h1, y}, c); },
                              s.h2_lo, 1.0);
        }
        curve.samples.push_back(s);
    }
    return curve;
}

std::vector<PathPoint> trajectory(const Economy& base, std::span<const Point> path) {
    std::vector<PathPoint> out;
    out.reserve(path.size());
    Economy econ = base;
    for (const Point& m : path) {
        econ.m = m;
        const Equilibrium eq = solve_baseline(econ);
        out.push_back({m, eq.w_star, eq.r_star, eq.output, eq.region});
    }
    return out;
}

std::vector<Point> segment_path(Point a, Point b, int count) {
    if (count < 2) throw std::domain_error("segment_path: need >= 2 points");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double t = static_cast<double>(k) / (count - 1);
        pts.push_back({a.x1 + t * (b.x1 - a.x1), a.x2 + t * (b.x2 - a.x2)});
    }
    return pts;
}

}  // namespace keq
