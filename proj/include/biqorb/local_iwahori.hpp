#pragma once

// Local lattice model at a split level place: exact rational functions in
// the uniformizer, 2x2 lattices, equality up to uniformizer scaling decided
// by elementary-divisor valuations, and the Iwahori chain search showing the
// local orbital factor at the level vanishes identically.

#include "biqorb/fq.hpp"

#include <optional>
#include <vector>

namespace biqorb {

// Exact rational function in the uniformizer over F_q; only its valuation
// structure matters, so a numerator/denominator pair of polynomials is kept.
struct LocalElem {
  Poly num, den;

  LocalElem() = default;
  LocalElem(Poly n, Poly d);
  static LocalElem zero(int q);
  static LocalElem one(int q);
  static LocalElem uniformizer_power(int q, int k);
  static LocalElem from_const(const Fq& a);

  bool is_zero() const { return num.is_zero(); }
  int valuation() const;  // requires nonzero

  friend bool operator==(const LocalElem& a, const LocalElem& b);
};

LocalElem operator+(const LocalElem& a, const LocalElem& b);
LocalElem operator-(const LocalElem& a, const LocalElem& b);
LocalElem operator*(const LocalElem& a, const LocalElem& b);
LocalElem operator-(const LocalElem& a);
LocalElem inverse(const LocalElem& a);

// Columns generate an O-lattice in F_x^2.
struct LocalLattice {
  LocalElem a11, a12, a21, a22;  // column j = (a1j, a2j)
};

// Valuations of the elementary divisors (Smith form) of the matrix, sorted.
std::pair<int, int> elementary_divisor_valuations(const LocalLattice& m);

struct ScalingWitness {
  bool equal = false;
  int alpha = 0;  // pi^alpha L1 = L2 when equal
};

// True iff some uniformizer-power scaling carries L1 onto L2, decided by the
// change-of-basis matrix having equal elementary-divisor valuations.
ScalingWitness lattice_equal_up_to_scaling(const LocalLattice& l1, const LocalLattice& l2);

enum class SearchMode { FullOnly, SublatticeOnly, Both };

struct OrbitSolution {
  int k = 0, l = 0;
};

// Scans (k, l) in [-window, window]^2 for the map attached to the split
// idempotents with ord(c) = k0. The full-lattice condition asks the image of
// the (e + pi^l f)-lattice to match the (1, pi^k)-lattice up to scaling; the
// Iwahori condition asks the deepened sublattice (either orientation) to
// match the (1, pi^{k+1})-sublattice with the same scaling. FullOnly is
// expected to return exactly {(k0, 0)}; Both is expected to return nothing.
std::vector<OrbitSolution> iwahori_orbit_search(int q, int k0, int window, SearchMode mode);

}  // namespace biqorb
