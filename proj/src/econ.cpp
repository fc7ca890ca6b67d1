#include "keq/econ.hpp"

#include <limits>
#include <stdexcept>

namespace keq {

void check_economy(const Economy& econ) {
    if (!econ.dist) throw std::domain_error("economy: missing distribution");
    if (!in_open_unit_square(econ.h)) {
        throw std::domain_error("economy: human knowledge must be strictly inside (0,1)^2");
    }
    if (!in_unit_square(econ.m)) {
        throw std::domain_error("economy: machine knowledge must be in [0,1]^2");
    }
    if (!(econ.c > 0.0 && econ.c < 1.0)) {
        throw std::domain_error("economy: communication cost must be in (0,1)");
    }
    if (!(econ.mu > 0.0)) throw std::domain_error("economy: compute supply must be positive");
}

double span(const ProblemDist& dist, Knowledge k, double c) {
    const double miss = 1.0 - dist.cdf(k);
    if (miss <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (c * miss);
}

double span(const Economy& econ, Knowledge k) { return span(*econ.dist, k, econ.c); }

double effective_success(const Economy& econ) {
    if (econ.synergy) return econ.dist->cdf(join(econ.m, econ.h));
    return union_prob(*econ.dist, econ.m, econ.h);
}

WageCandidates wage_candidates(const Economy& econ) {
    const double fm = econ.dist->cdf(econ.m);
    const double success = effective_success(econ);
    WageCandidates w;
    w.w_s = econ.dist->cdf(econ.h);
    // n(m) diverges as F(m) -> 1 while success - F(m) -> 0; the product is the
    // escalation-success probability over c, which vanishes at F(m) = 1.
    w.w_b = fm >= 1.0 ? 0.0 : (success - fm) / (econ.c * (1.0 - fm));
    w.w_t = success - fm / span(econ, econ.h);
    return w;
}

double profit(FirmType type, const Economy& econ, double w, double r) {
    const double success = effective_success(econ);
    switch (type) {
        case FirmType::SingleNonAuto:
            return econ.dist->cdf(econ.h) - w;
        case FirmType::SingleAuto:
            return econ.dist->cdf(econ.m) - r;
        case FirmType::Bottom:
            return span(econ, econ.m) * (success - r) - w;
        case FirmType::Top:
            return span(econ, econ.h) * (success - w) - r;
    }
    throw std::logic_error("profit: unknown firm type");
}

bool abundance_holds(const Economy& econ) {
    const double demand_1 = span(econ, {1.0, econ.h.x2});
    const double demand_2 = span(econ, {econ.h.x1, 1.0});
    return econ.mu > std::max(demand_1, demand_2);
}

}  // namespace keq
