#pragma once

#include "keq/baseline.hpp"

namespace keq::detail {

// Equilibrium at rental r* = F(m) with every human employed by the
// classify() firm type. This is the baseline solution; the general solver
// reuses it for the cases where its validity extends beyond abundance.
Equilibrium fixed_rental_equilibrium(const Economy& econ);

}  // namespace keq::detail
