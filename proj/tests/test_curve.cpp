#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biqorb/curve.hpp"

#include <random>
#include <set>

using namespace biqorb;

namespace {

const Curve& f5_curve() {
  static Curve c(5, 0, 1, 4);  // y^2 = x^3 - x
  return c;
}

// Independent oracle: number of effective divisors of degree n from the
// zeta function Z(T) = P(T) / ((1-T)(1-qT)) with P = 1 - aT + qT^2.
long long divisor_count_from_zeta(int q, int num_points, int n) {
  long long a = q + 1 - num_points;
  std::vector<long long> p = {1, -a, q};
  std::vector<long long> ser(n + 1, 0);
  for (int i = 0; i <= n; ++i) {
    // coefficient of T^i in 1/((1-T)(1-qT)) = sum_{j<=i} q^j
    long long s = 0, qq = 1;
    for (int j = 0; j <= i; ++j) {
      s += qq;
      qq *= q;
    }
    ser[i] = s;
  }
  long long out = 0;
  for (int j = 0; j <= 2 && j <= n; ++j) out += p[j] * ser[n - j];
  return out;
}

}  // namespace

TEST_CASE("curve construction validates roots") {
  CHECK_THROWS_AS(Curve(5, 0, 0, 1), ConfigError);
  CHECK_NOTHROW(Curve(3, 0, 1, 2));
}

TEST_CASE("point counts over F_5 and extensions") {
  const Curve& c = f5_curve();
  auto pts = points_over(c, 1);
  // Exhaustive scan: (0,0), (1,0), (4,0), (2,1), (2,4), (3,2), (3,3), inf.
  CHECK(pts.size() == 8);
  std::set<std::pair<long, long>> got;
  bool has_inf = false;
  for (auto& p : pts) {
    if (p.infinity) {
      has_inf = true;
      continue;
    }
    got.insert({p.x.index(), p.y.index()});
  }
  CHECK(has_inf);
  CHECK(got.count({2, 1}) == 1);
  CHECK(got.count({3, 2}) == 1);
  CHECK(got.count({0, 0}) == 1);

  // #E(F_{q^2}) = (q+1)^2 - a^2 with a = q + 1 - #E(F_q).
  long long a = 5 + 1 - 8;
  CHECK(points_over(c, 2).size() == static_cast<size_t>((5 + 1) * (5 + 1) - a * a));
}

TEST_CASE("places by degree") {
  const Curve& c = f5_curve();
  auto places = places_up_to(c, 2);
  int deg1 = 0, deg2 = 0;
  for (auto& p : places) {
    if (p.deg == 1) ++deg1;
    if (p.deg == 2) ++deg2;
  }
  CHECK(deg1 == 8);  // all F_5-points are Frobenius-fixed
  CHECK(deg2 == static_cast<int>((points_over(c, 2).size() - 8) / 2));
  CHECK(places.front().is_infinity());
  CHECK(places.front().deg == 1);
}

TEST_CASE("effective divisor enumeration matches zeta expansion") {
  const Curve& c = f5_curve();
  int npts = static_cast<int>(points_over(c, 1).size());
  CHECK(effective_divisors(c, 0).size() == 1);
  CHECK(effective_divisors(c, 0).front().is_zero());
  CHECK(effective_divisors(c, 1).size() == 8);
  for (int n = 1; n <= 3; ++n) {
    auto divs = effective_divisors(c, n);
    CHECK(divs.size() == static_cast<size_t>(divisor_count_from_zeta(5, npts, n)));
    for (auto& d : divs) {
      CHECK(d.degree() == n);
      CHECK(d.is_effective());
    }
    std::set<std::string> seen;
    for (auto& d : divs) CHECK(seen.insert(divisor_to_string(d)).second);
  }
}

TEST_CASE("divisor group laws on random divisors") {
  const Curve& c = f5_curve();
  auto divs = effective_divisors(c, 2);
  std::mt19937 rng(4242);
  std::uniform_int_distribution<size_t> pick(0, divs.size() - 1);
  for (int t = 0; t < 50; ++t) {
    const Divisor& d1 = divs[pick(rng)];
    const Divisor& d2 = divs[pick(rng)];
    CHECK((d1 + d2) - d2 == d1);
    CHECK(d1 + d2 == d2 + d1);
    CHECK((d1 + d2).degree() == d1.degree() + d2.degree());
  }
}

TEST_CASE("divisors of coordinate functions") {
  const Curve& c = f5_curve();
  // div(x - e1) = 2(T1) - 2(inf)
  Divisor d1 = divisor_of_coordinate_function(c, CoordFunctionKind::XMinusConst, Fq(5, 0));
  CHECK(d1.degree() == 0);
  Place t1 = place_of_point(c, Point::affine(FqExt::from_base(Fq(5, 0), 1), FqExt(5, 1)));
  CHECK(d1.multiplicity(t1) == 2);
  CHECK(d1.multiplicity(place_at_infinity()) == -2);
  CHECK(d1.mult.size() == 2);

  // div(y) has degree 0 and hits the three 2-torsion places
  Divisor dy = divisor_of_coordinate_function(c, CoordFunctionKind::Y);
  CHECK(dy.degree() == 0);
  CHECK(dy.multiplicity(place_at_infinity()) == -3);

  // div(x - 2) = (2,1) + (2,4) - 2(inf): 2^3 - 2 = 1 is a square mod 5
  Divisor d2 = divisor_of_coordinate_function(c, CoordFunctionKind::XMinusConst, Fq(5, 2));
  Place p21 = place_of_point(c, Point::affine(FqExt::from_base(Fq(5, 2), 1),
                                              FqExt::from_base(Fq(5, 1), 1)));
  Place p24 = place_of_point(c, Point::affine(FqExt::from_base(Fq(5, 2), 1),
                                              FqExt::from_base(Fq(5, 4), 1)));
  CHECK(d2.multiplicity(p21) == 1);
  CHECK(d2.multiplicity(p24) == 1);
  CHECK(d2.multiplicity(place_at_infinity()) == -2);

  // an irreducible quadratic gives places of even total degree
  Divisor dp = divisor_of_poly(c, Poly(5, {2, 0, 1}));  // x^2 + 2
  CHECK(dp.degree() == 0);
  bool found = false;
  for (auto& [pl, m] : dp.mult)
    if (!pl.is_infinity()) {
      found = true;
      CHECK((pl.deg == 2 || pl.deg == 4));
    }
  CHECK(found);
}

TEST_CASE("place labels round trip") {
  const Curve& c = f5_curve();
  for (auto& p : places_up_to(c, 2)) {
    CHECK(place_from_label(c, place_label(p)) == p);
  }
  CHECK_THROWS_AS(place_from_label(c, "1:2:2"), ConfigError);  // not on curve
  CHECK_THROWS_AS(place_from_label(c, "junk"), ConfigError);
  auto divs = effective_divisors(c, 2);
  for (size_t i = 0; i < divs.size(); i += 7)
    CHECK(divisor_from_string(c, divisor_to_string(divs[i])) == divs[i]);
}

TEST_CASE("supersingular curve over F_3") {
  Curve c(3, 0, 1, 2);
  CHECK(points_over(c, 1).size() == 4);  // a = 0
  auto places = places_up_to(c, 2);
  int deg2 = 0;
  for (auto& p : places)
    if (p.deg == 2) ++deg2;
  CHECK(deg2 == static_cast<int>((points_over(c, 2).size() - 4) / 2));
  int npts = 4;
  for (int n = 1; n <= 3; ++n)
    CHECK(effective_divisors(c, n).size() ==
          static_cast<size_t>(divisor_count_from_zeta(3, npts, n)));
}
