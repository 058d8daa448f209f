#pragma once

// The three quadratic descent characters attached to the 2-torsion roots,
// the level data (Sigma, w'_x choices, D'_3), places of the third double
// cover encoded by splitting tags, and the character eta on its divisors.
//
// The covers themselves are never constructed; splitting data and residue
// symbols carry everything the analytic side needs.

#include "biqorb/curve.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace biqorb {

// Quadratic character attached to a 2-torsion root e: at a generic place the
// residue symbol of x - e, at its own torsion place the symbol of the
// complementary-root product, and +1 at infinity. Multiplicative on Div(X).
struct DescentChar {
  Curve curve;
  Fq e;  // one of the curve roots

  int value(const Place& p) const;
  int value(const Divisor& d) const;
};

enum class CoverTag : int8_t { Inert = -1, Split0 = 0, Split1 = 1 };

// A place of the third double cover: its base place plus a splitting tag.
// For split places the two labels are distinguished by which square root is
// lexicographically least in the residue field (label 0 = the least root);
// at base places where x - e3 is not a unit the rule applies to the leading
// series coefficient of the uniformizer-normalized square root.
struct CoverPlace {
  Place base;
  CoverTag tag = CoverTag::Inert;

  int degree() const { return tag == CoverTag::Inert ? 2 * base.deg : base.deg; }
  bool is_split() const { return tag != CoverTag::Inert; }

  friend bool operator==(const CoverPlace& a, const CoverPlace& b) = default;
  auto operator<=>(const CoverPlace&) const = default;
};

std::string cover_place_label(const CoverPlace& w);

struct CoverDivisor {
  std::map<CoverPlace, int> mult;

  int multiplicity(const CoverPlace& w) const;
  void add(const CoverPlace& w, int m);
  int degree() const;
  bool is_effective() const;
  bool is_zero() const { return mult.empty(); }

  friend bool operator==(const CoverDivisor& a, const CoverDivisor& b) = default;
};

CoverDivisor operator+(const CoverDivisor& a, const CoverDivisor& b);
CoverDivisor operator-(const CoverDivisor& a, const CoverDivisor& b);
CoverDivisor operator-(const CoverDivisor& a);
std::string cover_divisor_to_string(const CoverDivisor& d);

// The tower: curve, character assignment (chi_i <-> e_i), the level
// Sigma = Sigma_f u Sigma_inf, and for each x in Sigma a chosen split place
// w'_x of the third cover. N = deg Sigma, D'_3 = sum of the w'_x.
struct TowerConfig {
  Curve curve;
  std::vector<Place> sigma_f;    // chi_1 = chi_2 = +1
  std::vector<Place> sigma_inf;  // chi_1 = chi_2 = -1
  std::map<Place, int> wprime_label;  // x -> split label in {0,1}

  int N = 0;
  CoverDivisor dprime3;

  DescentChar chi1() const { return DescentChar{curve, curve.e1}; }
  DescentChar chi2() const { return DescentChar{curve, curve.e2}; }
  DescentChar chi3() const { return DescentChar{curve, curve.e3}; }

  std::vector<Place> sigma() const;
  bool in_sigma(const Place& p) const;
  CoverPlace wprime(const Place& x) const;  // the chosen place over x in Sigma
};

// Validates the level invariants and fills in N and D'_3; throws ConfigError
// naming the offending place otherwise.
TowerConfig make_tower(const Curve& curve, const std::vector<Place>& sigma_f,
                       const std::vector<Place>& sigma_inf,
                       const std::map<Place, int>& wprime_label);

struct SigmaReport {
  struct Entry {
    Place x;
    bool in_sigma_f = false;
    int chi1 = 0, chi2 = 0, chi3 = 0;
    std::vector<CoverPlace> wprime_candidates;
  };
  std::vector<Entry> entries;
};

// Re-checks the invariants of an already-built tower and reports the two
// candidate w'_x labels per level place.
SigmaReport validate_sigma(const TowerConfig& t);

// Places of the third cover over x: two split places when chi3(x) = +1, one
// inert place of doubled degree otherwise.
std::vector<CoverPlace> places_over(const TowerConfig& t, const Place& x);

// eta = chi_1 composed with the divisor norm: split w over x -> chi1(x),
// inert w -> +1; multiplicative on divisors.
int eta_value(const TowerConfig& t, const CoverPlace& w);
int eta_value(const TowerConfig& t, const CoverDivisor& d);

Divisor norm_divisor(const TowerConfig& t, const CoverDivisor& e);
CoverDivisor pullback_divisor(const TowerConfig& t, const Divisor& d);
CoverDivisor sigma3_divisor(const CoverDivisor& d);  // swap split labels

}  // namespace biqorb
