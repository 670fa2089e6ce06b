#pragma once

#include "escape/roots.hpp"

namespace escape {

// Degree cap for rational factorization; inputs beyond it are rejected with
// UnsupportedDegree.  Desk-scale default per the library's scope.
constexpr long kFactorDegreeCap = 16;

// Full factorization over Q: returns (irreducible primitive factor with
// positive leading coefficient, multiplicity) pairs.  The rational content is
// dropped.  Throws UnsupportedDegree above the cap.
std::vector<std::pair<IntPoly, int>> factor(const IntPoly& p);

// The unique irreducible factor of p that has a root in the given enclosure
// (which must isolate one root of p among all of p's roots).
IntPoly min_poly_factor(const IntPoly& p, const ComplexRoot& root);

bool is_irreducible(const IntPoly& p);

}  // namespace escape
