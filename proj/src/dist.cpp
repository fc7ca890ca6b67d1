#include "keq/dist.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace keq {

namespace {

constexpr double kQuadTol = 1e-10;

// Adaptive Simpson on [a,b] with absolute tolerance.
double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(a, b, fa, fm, fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

void require_coord(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error(std::string(what) + " outside [0,1]");
    }
}

}  // namespace

double ProblemDist::cdf(Point x) const {
    if (!in_unit_square(x)) throw std::domain_error("cdf: point outside [0,1]^2");
    return cdf_impl(x);
}

double ProblemDist::density(Point x) const {
    if (!in_unit_square(x)) throw std::domain_error("density: point outside [0,1]^2");
    return density_impl(x);
}

double ProblemDist::section_integral(int fixed_dim, double a, double lo, double hi) const {
    if (fixed_dim != 1 && fixed_dim != 2) {
        throw std::domain_error("section_integral: fixed_dim must be 1 or 2");
    }
    require_coord(a, "section_integral: a");
    require_coord(lo, "section_integral: lo");
    require_coord(hi, "section_integral: hi");
    if (lo > hi) throw std::domain_error("section_integral: lo > hi");
    return section_impl(fixed_dim, a, lo, hi);
}

double ProblemDist::section_impl(int fixed_dim, double a, double lo, double hi) const {
    auto f = [&](double t) {
        return fixed_dim == 1 ? density_impl({a, t}) : density_impl({t, a});
    };
    return integrate(f, lo, hi, kQuadTol);
}

ProductPowerDist::ProductPowerDist(double theta1, double theta2)
    : theta1_(theta1), theta2_(theta2) {
    if (!(theta1 > 0.0) || !(theta2 > 0.0)) {
        throw std::domain_error("ProductPowerDist: theta must be positive");
    }
}

double ProductPowerDist::cdf_impl(Point x) const {
    return std::pow(x.x1, theta1_) * std::pow(x.x2, theta2_);
}

double ProductPowerDist::density_impl(Point x) const {
    return theta1_ * std::pow(x.x1, theta1_ - 1.0) * theta2_ * std::pow(x.x2, theta2_ - 1.0);
}

double ProductPowerDist::section_impl(int fixed_dim, double a, double lo, double hi) const {
    // g_i(a) * [G_j(hi) - G_j(lo)] in closed form.
    if (fixed_dim == 1) {
        const double g1 = theta1_ * std::pow(a, theta1_ - 1.0);
        return g1 * (std::pow(hi, theta2_) - std::pow(lo, theta2_));
    }
    const double g2 = theta2_ * std::pow(a, theta2_ - 1.0);
    return g2 * (std::pow(hi, theta1_) - std::pow(lo, theta1_));
}

DistPtr uniform_dist() { return std::make_shared<ProductPowerDist>(1.0, 1.0); }

DistPtr product_power_dist(double theta1, double theta2) {
    return std::make_shared<ProductPowerDist>(theta1, theta2);
}

double union_prob(const ProblemDist& dist, Point u, Point v) {
    return dist.cdf(u) + dist.cdf(v) - dist.cdf(meet(u, v));
}

}  // namespace keq
