#pragma once

#include <functional>

#include "keq/econ.hpp"
#include "keq/twotype.hpp"

namespace keq {

// Output maximization solved directly, as the cross-check on every solver:
// the equilibrium must attain the same total output.

struct OneTypeMax {
    double output = 0.0;   // Y*
    double alpha_b = 0.0;  // humans in bottom-automated firms
    double alpha_t = 0.0;  // humans in top-automated firms
};

// max  mu F(m) + a_b w_b + a_t w_t + (1 - a_b - a_t) w_s
// s.t. a_b, a_t >= 0, a_b + a_t <= 1, a_b n(m) + a_t / n(h) <= mu,
// by exact enumeration of the polytope's vertices.
OneTypeMax max_output_one_type(const Economy& econ);
OneTypeMax max_output_one_type(const Economy& econ, double mu);

struct TwoTypeMax {
    // Y* minus the capital income mu F(m); the mu-independent part.
    double labor_income = 0.0;
    double alpha_BA_A = 0.0;  // type-A workers in BA firms
    double alpha_AB_B = 0.0;  // type-B workers in AB firms
};

// max  phiA wbarA + phiB wbarB + x (mBA_A - wbarA) + y (mAB_B - wbarB)
// s.t. x + y/n(hB) <= phiA, y + x/n(hA) <= phiB, x, y >= 0.
// The paper-level resource identities are the binding case of these
// inequalities; the relaxed form keeps the polytope nonempty in every case.
TwoTypeMax max_output_two_type(const TwoTypeEconomy& econ);

struct FdGradient {
    double d1 = 0.0;
    double d2 = 0.0;
    bool one_sided_1 = false;  // stencil clipped at the domain edge
    bool one_sided_2 = false;
};

// Central differences of f over m, falling back to one-sided at the edges.
FdGradient fd_gradient(const std::function<double(Point)>& f, Point m, double step);

}  // namespace keq
