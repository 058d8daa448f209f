#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biqorb/function_field.hpp"

#include <random>

using namespace biqorb;

namespace {

const Curve& f5_curve() {
  static Curve c(5, 0, 1, 4);
  return c;
}

const TowerConfig& f5_tower() {
  static TowerConfig t = [] {
    Place s = place_of_point(f5_curve(), Point::affine(FqExt::from_base(Fq(5, 3), 1),
                                                       FqExt::from_base(Fq(5, 2), 1)));
    return make_tower(f5_curve(), {}, {s}, {{s, 0}});
  }();
  return t;
}

FuncElem random_func(std::mt19937& rng, int maxdeg = 2) {
  const Curve& c = f5_curve();
  auto rand_poly = [&](int d) {
    std::vector<long long> cs(static_cast<size_t>(d + 1));
    for (auto& x : cs) x = rng() % 5;
    return Poly(5, cs);
  };
  Poly p = rand_poly(static_cast<int>(rng() % (maxdeg + 1)));
  Poly s = (rng() % 2) ? rand_poly(static_cast<int>(rng() % (maxdeg + 1))) : Poly(5);
  Poly r = rand_poly(static_cast<int>(rng() % (maxdeg + 1)));
  if (r.is_zero()) r = Poly(5, {1});
  if (p.is_zero() && s.is_zero()) p = Poly(5, {1});
  return FuncElem(c, p, s, r);
}

CoverElem random_cover(std::mt19937& rng, int maxdeg = 2) {
  CoverElem a{random_func(rng, maxdeg), random_func(rng, maxdeg)};
  return a;
}

Place t3_place() {
  return place_of_point(f5_curve(),
                        Point::affine(FqExt::from_base(Fq(5, 4), 1), FqExt(5, 1)));
}

}  // namespace

TEST_CASE("function field arithmetic and canonical form") {
  const Curve& c = f5_curve();
  FuncElem x = FuncElem::coordinate_x(c);
  FuncElem y = FuncElem::coordinate_y(c);
  // y^2 = f(x)
  FuncElem f = (x - FuncElem::from_const(c, c.e1)) * (x - FuncElem::from_const(c, c.e2)) *
               (x - FuncElem::from_const(c, c.e3));
  CHECK(y * y == f);
  // inverse round trip on random elements
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    FuncElem a = random_func(rng);
    if (a.is_zero()) continue;
    CHECK(a * inverse(a) == FuncElem::one(c));
    FuncElem b = random_func(rng);
    CHECK(a * b == b * a);
    CHECK((a + b) - b == a);
  }
  // canonical form: same element via different representations compares equal
  FuncElem g1(c, Poly(5, {0, 2}), Poly(5), Poly(5, {2}));          // 2x / 2
  FuncElem g2(c, Poly(5, {0, 1}), Poly(5), Poly(5, {1}));          // x
  CHECK(g1 == g2);
}

TEST_CASE("equality agrees with evaluation at random points") {
  const Curve& c = f5_curve();
  std::mt19937 rng(17);
  // compare (a+b)*g with a*g + b*g by evaluation at degree-4 points
  for (int trial = 0; trial < 10; ++trial) {
    FuncElem a = random_func(rng), b = random_func(rng), g = random_func(rng);
    FuncElem lhs = (a + b) * g, rhs = a * g + b * g;
    CHECK(lhs == rhs);
    auto pts = points_over(c, 2);
    int checked = 0;
    for (auto& pt : pts) {
      if (pt.infinity || checked > 20) continue;
      FqExt den_l = poly_eval(lhs.r, pt.x), den_r = poly_eval(rhs.r, pt.x);
      if (den_l.is_zero() || den_r.is_zero()) continue;
      FqExt vl = (poly_eval(lhs.p, pt.x) + poly_eval(lhs.s, pt.x) * pt.y) / den_l;
      FqExt vr = (poly_eval(rhs.p, pt.x) + poly_eval(rhs.s, pt.x) * pt.y) / den_r;
      CHECK(vl == vr);
      ++checked;
    }
  }
}

TEST_CASE("cover element algebra") {
  const TowerConfig& t = f5_tower();
  CoverElem beta = cover_beta(t);
  // beta^2 = x - e3
  FuncElem xm3 = FuncElem::coordinate_x(t.curve) - FuncElem::from_const(t.curve, t.curve.e3);
  CHECK(cover_mul(t, beta, beta) == cover_from_func(xm3));
  // trace and norm identities
  std::mt19937 rng(23);
  for (int i = 0; i < 25; ++i) {
    CoverElem a = random_cover(rng);
    CHECK(trace_k3(a) == (a + sigma3(a)).u);
    CHECK((a + sigma3(a)).v.is_zero());
    CHECK(norm_k3(t, a) == cover_mul(t, a, sigma3(a)).u);
    // Tr(a sigma(a)) = 2 Nm(a)
    FuncElem nm = norm_k3(t, a);
    CHECK(trace_k3(cover_mul(t, a, sigma3(a))) == nm + nm);
    if (!a.is_zero()) CHECK(cover_mul(t, a, cover_inverse(t, a)) == cover_one(t));
  }
  // Tr(beta) = 0, Tr(1/2) = 1
  CHECK(trace_k3(beta).is_zero());
  FuncElem half = FuncElem::from_const(t.curve, inverse(Fq(5, 2)));
  CHECK(trace_k3(cover_from_func(half)) == FuncElem::one(t.curve));
}

TEST_CASE("valuations of coordinate functions at basic places") {
  const Curve& c = f5_curve();
  FuncElem x = FuncElem::coordinate_x(c);
  FuncElem y = FuncElem::coordinate_y(c);
  Place inf = place_at_infinity();
  CHECK(valuation(x, inf) == -2);
  CHECK(valuation(y, inf) == -3);
  Place t1 = place_of_point(c, Point::affine(FqExt::from_base(Fq(5, 0), 1), FqExt(5, 1)));
  CHECK(valuation(y, t1) == 1);
  CHECK(valuation(x, t1) == 2);  // x - e1 with e1 = 0
  Place p21 = place_of_point(c, Point::affine(FqExt::from_base(Fq(5, 2), 1),
                                              FqExt::from_base(Fq(5, 1), 1)));
  CHECK(valuation(x - FuncElem::from_const(c, Fq(5, 2)), p21) == 1);
  CHECK(valuation(y - FuncElem::from_const(c, Fq(5, 1)), p21) >= 1);
}

TEST_CASE("divisors of F-elements match the combinatorial route") {
  const Curve& c = f5_curve();
  // div(x - c0) computed through series agrees with the factorization route
  for (long c0 = 0; c0 < 5; ++c0) {
    FuncElem g = FuncElem::coordinate_x(c) - FuncElem::from_const(c, Fq(5, c0));
    CHECK(divisor_of(g) ==
          divisor_of_coordinate_function(c, CoordFunctionKind::XMinusConst, Fq(5, c0)));
  }
  CHECK(divisor_of(FuncElem::coordinate_y(c)) ==
        divisor_of_coordinate_function(c, CoordFunctionKind::Y));
  // homomorphism on random pairs
  std::mt19937 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    FuncElem a = random_func(rng), b = random_func(rng);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(divisor_of(a * b) == divisor_of(a) + divisor_of(b));
  }
}

TEST_CASE("divisor of beta and of constants") {
  const TowerConfig& t = f5_tower();
  CoverDivisor db = divisor_of(t, cover_beta(t));
  // div(beta) = pullback(T3) - pullback(inf)
  Divisor t3d;
  t3d.add(t3_place(), 1);
  t3d.add(place_at_infinity(), -1);
  CHECK(db == pullback_divisor(t, t3d));
  CHECK(db.degree() == 0);
  CHECK(divisor_of(t, cover_from_func(FuncElem::from_const(t.curve, Fq(5, 3)))).is_zero());
}

TEST_CASE("cover divisors: homomorphism, sigma-equivariance, norm compatibility") {
  const TowerConfig& t = f5_tower();
  std::mt19937 rng(37);
  int done = 0;
  for (int trial = 0; trial < 60 && done < 6; ++trial) {
    CoverElem a = random_cover(rng, 1);
    CoverElem b = random_cover(rng, 1);
    if (a.is_zero() || b.is_zero()) continue;
    CoverDivisor da, dsa, dab, db;
    Divisor dn;
    try {
      da = divisor_of(t, a);
      dsa = divisor_of(t, sigma3(a));
      dab = divisor_of(t, cover_mul(t, a, b));
      db = divisor_of(t, b);
      dn = divisor_of(norm_k3(t, a));
    } catch (const CapacityError&) {
      // products can acquire zeros at places beyond the degree-6 session
      // cap; such trials are skipped
      continue;
    }
    CHECK(da.degree() == 0);
    CHECK(dsa == sigma3_divisor(da));
    CHECK(dab == da + db);
    // div(a) + div(sigma a) = pullback of div(Nm a)
    CHECK(da + sigma3_divisor(da) == pullback_divisor(t, dn));
    ++done;
  }
  CHECK(done >= 4);
}

TEST_CASE("riemann-roch spaces on the base curve") {
  const Curve& c = f5_curve();
  // L(n * inf): 1; 1, x; 1, x, y; ...
  for (int n = 1; n <= 5; ++n) {
    Divisor g;
    g.add(place_at_infinity(), n);
    auto basis = rr_space_x(c, g);
    CHECK(static_cast<int>(basis.size()) == n);
    for (auto& b : basis) {
      CHECK((divisor_of(b) + g).is_effective());
    }
  }
  // L(P) for an affine place: constants only (genus 1)
  Place p21 = place_of_point(c, Point::affine(FqExt::from_base(Fq(5, 2), 1),
                                              FqExt::from_base(Fq(5, 1), 1)));
  Divisor gp;
  gp.add(p21, 1);
  auto b1 = rr_space_x(c, gp);
  CHECK(b1.size() == 1);
  // L(2P) has a genuine second function with a double pole at P
  gp.add(p21, 1);
  auto b2 = rr_space_x(c, gp);
  CHECK(b2.size() == 2);
  for (auto& b : b2) CHECK((divisor_of(b) + gp).is_effective());
  // degree-2 place
  auto places = places_up_to(c, 2);
  for (auto& pl : places) {
    if (pl.deg != 2) continue;
    Divisor g2;
    g2.add(pl, 1);
    auto bb = rr_space_x(c, g2);
    CHECK(bb.size() == 2);
    for (auto& b : bb) CHECK((divisor_of(b) + g2).is_effective());
    break;
  }
  // zero and negative degree
  CHECK(rr_space_x(c, Divisor{}).size() == 1);
  Divisor neg;
  neg.add(place_at_infinity(), -1);
  CHECK(rr_space_x(c, neg).empty());
}

TEST_CASE("riemann-roch spaces on the cover") {
  const TowerConfig& t = f5_tower();
  // M = pullback(inf): dimension 2
  Divisor dinf;
  dinf.add(place_at_infinity(), 1);
  RRSpace sp = rr_space(t, pullback_divisor(t, dinf));
  CHECK(sp.dimension() == 2);
  for (auto& b : sp.basis) CHECK(rr_member(t, b, sp.m));

  // M = pullback(2 inf) - D'_3 with N = 1: dimension 3
  Divisor d2inf;
  d2inf.add(place_at_infinity(), 2);
  CoverDivisor m2 = pullback_divisor(t, d2inf) - t.dprime3;
  CHECK(m2.degree() == 3);
  RRSpace sp2 = rr_space(t, m2);
  CHECK(sp2.dimension() == 3);
  for (auto& b : sp2.basis) CHECK(rr_member(t, b, sp2.m));

  // membership is exact: random combinations stay inside, a function with a
  // disallowed pole stays out
  std::mt19937 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    CoverElem acc = cover_zero(t);
    for (auto& b : sp2.basis) {
      Fq coeff(5, static_cast<long long>(rng() % 5));
      acc = acc + CoverElem{b.u * FuncElem::from_const(t.curve, coeff),
                            b.v * FuncElem::from_const(t.curve, coeff)};
    }
    CHECK(rr_member(t, acc, sp2.m));
  }
  FuncElem xinv = inverse(FuncElem::coordinate_x(t.curve));
  CHECK_FALSE(rr_member(t, cover_from_func(xinv), sp2.m));

  // L(0) = constants
  RRSpace sp0 = rr_space(t, CoverDivisor{});
  CHECK(sp0.dimension() == 1);

  // dim = deg across a family of divisors built from pullbacks and twists
  for (int n = 1; n <= 3; ++n) {
    Divisor dn;
    dn.add(place_at_infinity(), n);
    CoverDivisor mm = pullback_divisor(t, dn);
    CHECK(rr_space(t, mm).dimension() == mm.degree());
  }
}

TEST_CASE("asymmetric cover divisors in riemann-roch") {
  const TowerConfig& t = f5_tower();
  // the 2-torsion place (0,0) splits: chi3 = legendre(0 - 4) = legendre(1) = +1
  Place s = place_of_point(f5_curve(),
                           Point::affine(FqExt::from_base(Fq(5, 0), 1), FqExt(5, 1)));
  auto ws = places_over(t, s);
  REQUIRE(ws.size() == 2);
  CoverDivisor m;
  m.add(ws[0], 2);
  m.add(ws[1], 0);
  Divisor dinf;
  dinf.add(place_at_infinity(), 1);
  m = m + pullback_divisor(t, dinf);
  CHECK(m.degree() == 4);
  RRSpace sp = rr_space(t, m);
  CHECK(sp.dimension() == 4);
  for (auto& b : sp.basis) CHECK(rr_member(t, b, m));
  // elements must not use the disallowed pole at ws[1] beyond multiplicity 0:
  for (auto& b : sp.basis) {
    if (b.is_zero()) continue;
    CHECK(valuation(t, b, ws[1]) >= 0);
    CHECK(valuation(t, b, ws[0]) >= -2);
  }
}

TEST_CASE("expansion text encoding") {
  const TowerConfig& t = f5_tower();
  CoverElem beta = cover_beta(t);
  CHECK(cover_to_string(beta) == "(0|0|1)+(1|0|1)b");
}
