#pragma once

// Character sums over effective divisors, truncated power series in T, the
// zeta numerator of the base curve, and the place-by-place factorization of
// the cover character's Euler factors into the two descent characters.

#include "biqorb/characters.hpp"
#include "biqorb/spectral_poly.hpp"

#include <vector>

namespace biqorb {

// Rational coefficients of T^0..T^n; order tracked through products.
struct PowerSeriesT {
  int order = 0;  // coefficients valid up to and including T^order
  std::vector<Rat> c;

  static PowerSeriesT one(int order);
  Rat at(int k) const;
  friend bool operator==(const PowerSeriesT& a, const PowerSeriesT& b) = default;
};

PowerSeriesT operator+(const PowerSeriesT& a, const PowerSeriesT& b);
PowerSeriesT operator*(const PowerSeriesT& a, const PowerSeriesT& b);

enum class CharKind { Trivial, Chi1, Chi2, Chi3 };

// Sum of chr(D) over effective divisors of degree n; zero for the nontrivial
// characters and n >= 1 (the abelian L-polynomial has degree 2g - 2 = 0).
Rat char_sum(const TowerConfig& t, CharKind chr, int n);

// The degree-n coefficient of the Dirichlet series prod over places of
// (1 - chr(x) T^{deg x})^{-1}, an independent route to char_sum.
Rat char_sum_from_euler(const TowerConfig& t, CharKind chr, int n);

struct EulerCheckEntry {
  Place x;
  bool pass = false;
};

struct EulerCheckReport {
  std::vector<EulerCheckEntry> entries;
  bool all_pass = true;
};

// For every place x of degree <= bound, compares
// prod_{w|x} (1 - eta(w) T^{deg w}) with
// (1 - chi1(x) T^{deg x})(1 - chi2(x) T^{deg x}) as exact polynomials.
EulerCheckReport euler_factorization_check(const TowerConfig& t, int up_to_degree);

struct ZetaReport {
  long long trace = 0;           // a = q + 1 - #X(F_q)
  PowerSeriesT numerator;        // P(T) = 1 - aT + qT^2
  bool functional_equation = false;  // P(T) = qT^2 P(1/(qT))
  bool divisor_counts_match = false;
  std::vector<long long> counted;   // effective divisor counts by degree
  std::vector<Rat> predicted;       // coefficients of P / ((1-T)(1-qT))
};

ZetaReport zeta_numerator(const Curve& c, int up_to_degree);

}  // namespace biqorb
