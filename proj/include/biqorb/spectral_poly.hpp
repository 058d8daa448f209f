#pragma once

// Exact Laurent polynomials in u = q^s with rational coefficients; the value
// type of the orbital integrals.

#include "biqorb/common.hpp"

#include <map>
#include <string>

namespace biqorb {

struct SpectralPoly {
  std::map<int, Rat> coeff;  // exponent -> coefficient, no zero entries

  static SpectralPoly zero() { return {}; }
  static SpectralPoly monomial(const Rat& c, int e);

  bool is_zero() const { return coeff.empty(); }
  Rat at(int e) const;
  void add_term(int e, const Rat& c);

  int min_exponent() const;  // requires nonzero
  int max_exponent() const;

  // substitute u -> 1/u
  SpectralPoly reciprocal() const;
  // multiply by u^k
  SpectralPoly shifted(int k) const;
  // evaluate at u = 1
  Rat value_at_one() const;
  // sum of c_m (m + n)^r: the coefficient of (log q)^r in the r-th
  // derivative of q^{ns} * (this at u = q^s) at s = 0
  Rat derivative_weight(int n, int r) const;

  friend bool operator==(const SpectralPoly& a, const SpectralPoly& b) = default;
};

SpectralPoly operator+(const SpectralPoly& a, const SpectralPoly& b);
SpectralPoly operator-(const SpectralPoly& a, const SpectralPoly& b);
SpectralPoly operator*(const SpectralPoly& a, const SpectralPoly& b);

std::string to_string(const SpectralPoly& p);

}  // namespace biqorb
