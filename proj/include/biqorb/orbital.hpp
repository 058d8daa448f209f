#pragma once

// The orbital integrals: enumeration of the invariant set attached to an
// effective divisor D away from the level, the divisor-decomposition formula
// for J(a, h_D, s) as an exact Laurent polynomial in u = q^s, its
// derivatives, and the independent lattice-counting oracle that recomputes
// the same polynomial from local lattice conditions.

#include "biqorb/function_field.hpp"
#include "biqorb/spectral_poly.hpp"

#include <vector>

namespace biqorb {

struct InvariantPoint {
  CoverElem a;      // Tr(a) = 1
  CoverDivisor b;   // div(a) + pullback(D) - D'_3, effective of degree 2d - N
};

// The invariant set {a = 1/2 + v beta : div(a) + pullback(D) - D'_3 >= 0},
// computed as an affine F_q-linear slice of a Riemann-Roch space. Requires
// D effective with support away from Sigma; returns the empty list when
// 2 deg D < N + 1 (the degree obstruction).
std::vector<InvariantPoint> enumerate_invariants(const TowerConfig& t, const Divisor& d);

// Decomposition formula: sum over effective splittings B = E1 + E2 of
// eta(E1) u^{2 deg E1 - 2d}.
SpectralPoly orbital_poly(const TowerConfig& t, const Divisor& d, const InvariantPoint& ip);

// Wrapper for arbitrary trace-1 elements: zero when a is outside the
// invariant set of D.
SpectralPoly orbital_poly_any(const TowerConfig& t, const Divisor& d, const CoverElem& a);

SpectralPoly orbital_sum(const TowerConfig& t, const Divisor& d,
                         const std::vector<InvariantPoint>& pts);

// Coefficient of (log q)^r in (d/ds)^r |_{s=0} q^{Ns} J: the symbolic route
// reads it off the collected polynomial, the direct route re-enumerates the
// splittings with weight eta(E1) (deg E1 - deg E2)^r. Both are returned and
// must agree; the predicted intersection number is this value.
Rat orbital_derivative(const SpectralPoly& j, int n, int r);
Rat orbital_derivative_direct(const TowerConfig& t, const Divisor& d, const InvariantPoint& ip,
                              int r);

// u^N J is eta(B)-symmetric under u -> 1/u.
bool functional_equation_holds(const TowerConfig& t, const InvariantPoint& ip,
                               const SpectralPoly& j);

// The F-linear map z -> (Tr(alpha1 z), Tr(alpha2 z)) attached to an
// invariant: alpha1 = 1, alpha2 = beta sigma3(a).
struct TracePairMap {
  CoverElem alpha1, alpha2;
};

TracePairMap map_of_invariant(const TowerConfig& t, const CoverElem& a);

// inv = alpha1 sigma3(alpha2) / (alpha1 sigma3(alpha2) - sigma3(alpha1) alpha2);
// defined when the denominator (the determinant form) is nonzero.
CoverElem invariant_of_map(const TowerConfig& t, const TracePairMap& m);

struct LatticeCount {
  SpectralPoly poly;
  long long triples = 0;  // representatives enumerated (E2 = 0 normalization)
};

// Independent oracle: enumerates divisor triples (E, E1, 0) subject to the
// everywhere-defined, Iwahori, and determinant conditions of the map
// attached to a, weighting each by q^{-2s deg E1} eta(E). Equals the
// decomposition formula on the invariant set and vanishes off it.
LatticeCount lattice_count(const TowerConfig& t, const Divisor& d, const CoverElem& a);

}  // namespace biqorb
