#pragma once

// The base elliptic curve y^2 = (x-e1)(x-e2)(x-e3) with split 2-torsion,
// its points over extensions, places as canonical Frobenius orbits, and
// divisors as finite place -> multiplicity maps.

#include "biqorb/fq.hpp"

#include <map>
#include <string>
#include <vector>

namespace biqorb {

struct Curve {
  int16_t q = 0;
  Fq e1, e2, e3;  // distinct roots of the cubic

  Curve() = default;
  Curve(int q_, long long r1, long long r2, long long r3);

  Fq eval_f(const Fq& x) const;
  FqExt eval_f(const FqExt& x) const;

  friend bool operator==(const Curve& a, const Curve& b) = default;
};

struct Point {
  bool infinity = true;
  FqExt x, y;  // both in a common F_{q^d} when finite

  static Point at_infinity() { return Point{}; }
  static Point affine(const FqExt& x, const FqExt& y);

  friend bool operator==(const Point& a, const Point& b) = default;
  auto operator<=>(const Point&) const = default;
};

// A place: Frobenius orbit of a point, keyed by the orbit element with the
// lexicographically least (x, y) coordinate encoding. Its degree is the
// orbit size; the representative's coordinates live in F_{q^deg}.
struct Place {
  int16_t deg = 1;
  Point rep;  // canonical representative (infinity for the place at infinity)

  bool is_infinity() const { return rep.infinity; }
  friend bool operator==(const Place& a, const Place& b) = default;
  auto operator<=>(const Place&) const = default;
};

std::string place_label(const Place& p);
Place place_from_label(const Curve& c, const std::string& s);

// Canonical place through a given point (validates on-curve, orbit size).
Place place_of_point(const Curve& c, const Point& pt);
Place place_at_infinity();

struct Divisor {
  std::map<Place, int> mult;  // no zero entries

  int multiplicity(const Place& p) const;
  void add(const Place& p, int m);
  int degree() const;
  bool is_effective() const;
  bool is_zero() const { return mult.empty(); }

  friend bool operator==(const Divisor& a, const Divisor& b) = default;
};

Divisor operator+(const Divisor& a, const Divisor& b);
Divisor operator-(const Divisor& a, const Divisor& b);
Divisor operator-(const Divisor& a);
Divisor operator*(int n, const Divisor& a);

std::string divisor_to_string(const Divisor& d);
Divisor divisor_from_string(const Curve& c, const std::string& s);

// All F_{q^d}-points, infinity included; throws CapacityError when the scan
// exceeds the session bound. The count obeys the Hasse bound.
std::vector<Point> points_over(const Curve& c, int d);

// All places of degree <= n, canonically ordered.
std::vector<Place> places_up_to(const Curve& c, int n);

// Every effective divisor of degree exactly n, in a canonical order.
std::vector<Divisor> effective_divisors(const Curve& c, int n);

enum class CoordFunctionKind { XMinusConst, Y };

// div(x - c0) or div(y) as exact degree-0 divisors.
Divisor divisor_of_coordinate_function(const Curve& c, CoordFunctionKind kind,
                                       const Fq& c0 = Fq());

// Divisor of a nonzero univariate polynomial r(x) viewed as a function on
// the curve (zeros over each irreducible factor, pole at infinity).
Divisor divisor_of_poly(const Curve& c, const Poly& r);

// Places lying over a monic irreducible pi(x); each returned with the
// multiplicity of pi's vanishing there (1 generically, 2 at 2-torsion).
std::vector<std::pair<Place, int>> places_over_irreducible(const Curve& c, const Poly& pi);

}  // namespace biqorb
