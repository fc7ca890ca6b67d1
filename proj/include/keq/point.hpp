#pragma once

#include <algorithm>
#include <cmath>

namespace keq {

// A point in the unit square: a problem difficulty or a knowledge profile.
struct Point {
    double x1 = 0.0;
    double x2 = 0.0;

    friend bool operator==(Point a, Point b) { return a.x1 == b.x1 && a.x2 == b.x2; }
    friend bool operator!=(Point a, Point b) { return !(a == b); }
};

// Knowledge profiles live in the same lattice as problem difficulties.
using Knowledge = Point;

inline Point join(Point u, Point v) { return {std::max(u.x1, v.x1), std::max(u.x2, v.x2)}; }
inline Point meet(Point u, Point v) { return {std::min(u.x1, v.x1), std::min(u.x2, v.x2)}; }

inline bool in_unit_square(Point p) {
    return p.x1 >= 0.0 && p.x1 <= 1.0 && p.x2 >= 0.0 && p.x2 <= 1.0;
}

inline bool in_open_unit_square(Point p) {
    return p.x1 > 0.0 && p.x1 < 1.0 && p.x2 > 0.0 && p.x2 < 1.0;
}

}  // namespace keq
