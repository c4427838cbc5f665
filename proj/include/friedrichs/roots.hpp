#pragma once

#include <vector>

#include "friedrichs/poly.hpp"

namespace friedrichs {

struct Root {
    Complex value;
    int multiplicity = 1;
};

/// All roots of a complex polynomial, clustered roots merged with summed
/// multiplicity. Companion-matrix eigenvalues with balancing, one Newton
/// polish per root.
std::vector<Root> poly_roots(const poly::Poly& coeffs);

}  // namespace friedrichs
