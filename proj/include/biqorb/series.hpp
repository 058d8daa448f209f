#pragma once

// Truncated Laurent series over F_{q^rd} in a local uniformizer, and
// expansion frames at places: x - x0 at generic affine places, y at
// 2-torsion x-values, x/y at infinity, with the square root of x - e3
// adjoined for places of the third cover.

#include "biqorb/characters.hpp"
#include "biqorb/curve.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace biqorb {

// Coefficients for exponents in [start, start + c.size()); exponents below
// start are exactly zero. The exact zero series is flagged separately and
// behaves as zero to unlimited precision.
struct LaurentSeries {
  int16_t q = 0;
  int16_t rd = 1;  // coefficient field F_{q^rd}
  bool exact_zero = false;
  int start = 0;
  std::vector<FqExt> c;

  static LaurentSeries zero(int q, int rd);
  static LaurentSeries constant(const FqExt& a, int len);
  static LaurentSeries uniformizer(int q, int rd, int len);  // t itself

  int end() const { return exact_zero ? std::numeric_limits<int>::max() : start + static_cast<int>(c.size()); }
  FqExt at(int e) const;  // coefficient of t^e (must lie below end())
  // Lowest exponent with nonzero coefficient, if visible inside the window.
  std::optional<int> valuation() const;
  LaurentSeries shifted(int k) const;
  void strip_leading_zeros();
};

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a);
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries scale(const FqExt& a, const LaurentSeries& s);

// Inverse of a series whose valuation is visible in its window.
LaurentSeries series_inverse(const LaurentSeries& a);

// Square root of a unit series with the given constant-term root.
LaurentSeries series_sqrt_unit(const LaurentSeries& a, const FqExt& root);

LaurentSeries poly_eval_series(const Poly& p, const LaurentSeries& x, int len);

// Expansion frame at a place: series for the coordinate functions (and for
// the cover generator beta when built for a cover place), all with window
// length >= len from their respective valuations.
struct ExpansionFrame {
  Curve curve;
  Place base;
  int rd = 1;
  int len = 0;
  LaurentSeries xs, ys;
  std::optional<LaurentSeries> beta;
};

ExpansionFrame make_frame(const Curve& c, const Place& p, int len);
ExpansionFrame make_frame(const TowerConfig& t, const CoverPlace& w, int len);

}  // namespace biqorb
