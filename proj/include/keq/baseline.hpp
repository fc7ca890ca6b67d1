#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "keq/econ.hpp"

namespace keq {

// Which firm configuration employs humans in equilibrium.
// The same labels serve the no-synergy variant.
enum class Region { Rs, Rb, Rt };

std::string_view to_string(Region r);

// Human (alpha) or machine (mu) masses per firm type.
struct Alloc {
    double s = 0.0;
    double b = 0.0;
    double t = 0.0;

    double total() const { return s + b + t; }
};

struct Equilibrium {
    double w_star = 0.0;
    double r_star = 0.0;
    Region region = Region::Rs;
    Alloc alpha;     // humans; sums to 1
    Alloc mu_alloc;  // machines; sums to mu
    double output = 0.0;
};

// Deterministic region of m. Ties: singles win against b and t; t wins
// against b.
Region classify(const Economy& econ);

// Abundant-machines equilibrium: r* = F(m), w* = max wage candidate, all
// humans in the region's firm type. Throws PreconditionError when abundance
// fails; use solve_general then.
Equilibrium solve_baseline(const Economy& econ);

struct Gradient {
    double d1 = 0.0;
    double d2 = 0.0;
};

// Analytic (dw*/dm1, dw*/dm2) from the piecewise closed forms. Only defined
// strictly inside a region and away from m_i = h_i; throws
// NondifferentiableError otherwise.
Gradient mpl_gradient(const Economy& econ);

// F(1,h2) >= F(h1,1): the problems humans miss for lack of dimension-2
// knowledge are the rarer kind. Ties count as stronger in dimension 2.
bool stronger_in_dim2(const ProblemDist& dist, Knowledge h);

// Labor income at the four corners of machine-knowledge space; the global
// maximum lives there in the one-type model.
struct VertexMax {
    Point m;                             // argmax corner
    double value = 0.0;                  // w* at the argmax
    std::array<double, 4> vertex_values; // order: (0,0), (0,1), (1,0), (1,1)
};

VertexMax labor_max_vertex(const ProblemDist& dist, Knowledge h, double c);

// w*(1,0) - w*(1,1) = F(1,h2)/c - 1 + c(1-F(h)). Positive: the corner (1,0)
// pays labor more than full automation.
double corner_gap(const ProblemDist& dist, Knowledge h, double c);

// The h2 making humans exactly as strong in both dimensions:
// F(h1,1) = F(1, lower_h2(h1)).
double lower_h2(const ProblemDist& dist, double h1);

// Which corner maximizes labor income, as a function of human knowledge:
// above the h2_bar(h1) curve (or for h1 >= h1_bar) it is (1,0), below
// it is (1,1). Curves restricted to the stronger-in-dim-2 half.
struct ThresholdCurve {
    double h1_bar = 0.0;
    struct Sample {
        double h1;
        double h2_lo;   // lower envelope h2_lo(h1)
        double h2_bar;  // switch point; equals h2_lo where (1,0) always wins
    };
    std::vector<Sample> samples;
};

ThresholdCurve labor_max_thresholds(const ProblemDist& dist, double c, int sample_count = 101);

struct PathPoint {
    Point m;
    double w_star = 0.0;
    double r_star = 0.0;
    double output = 0.0;
    Region region = Region::Rs;
};

// solve_baseline along a sequence of machine-knowledge points.
std::vector<PathPoint> trajectory(const Economy& base, std::span<const Point> path);

// Evenly spaced points from a to b, inclusive; count >= 2.
std::vector<Point> segment_path(Point a, Point b, int count);

}  // namespace keq
