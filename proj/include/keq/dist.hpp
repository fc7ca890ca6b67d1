#pragma once

#include <memory>

#include "keq/point.hpp"

namespace keq {

// Bivariate problem-difficulty distribution with full support on [0,1]^2.
//
// The interface is exactly what the closed-form solvers and analytic
// gradients consume: the CDF, the density, and one-dimensional section
// integrals of the density. No sampling.
class ProblemDist {
public:
    virtual ~ProblemDist() = default;

    // F(x). Throws std::domain_error outside the unit square.
    double cdf(Point x) const;

    // f(x) > 0 on (0,1)^2.
    double density(Point x) const;

    // \int_lo^hi f dx_other with coordinate fixed_dim (1 or 2) pinned at a.
    // Requires 0 <= lo <= hi <= 1 and 0 <= a <= 1.
    double section_integral(int fixed_dim, double a, double lo, double hi) const;

protected:
    virtual double cdf_impl(Point x) const = 0;
    virtual double density_impl(Point x) const = 0;
    // Default: adaptive Simpson quadrature over density, abs tol 1e-10.
    virtual double section_impl(int fixed_dim, double a, double lo, double hi) const;
};

using DistPtr = std::shared_ptr<const ProblemDist>;

// Product of power marginals G_i(x) = x^theta_i, theta_i > 0.
// theta = (1,1) is the uniform distribution F(x) = x1*x2.
class ProductPowerDist final : public ProblemDist {
public:
    ProductPowerDist(double theta1, double theta2);

    double theta1() const { return theta1_; }
    double theta2() const { return theta2_; }

protected:
    double cdf_impl(Point x) const override;
    double density_impl(Point x) const override;
    double section_impl(int fixed_dim, double a, double lo, double hi) const override;

private:
    double theta1_;
    double theta2_;
};

DistPtr uniform_dist();
DistPtr product_power_dist(double theta1, double theta2);

// P(at least one of two stand-alone agents with knowledge u, v solves):
// F(u) + F(v) - F(u AND v). Never exceeds F(u OR v).
double union_prob(const ProblemDist& dist, Point u, Point v);

}  // namespace keq
