#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biqorb/lseries.hpp"

using namespace biqorb;

namespace {

const TowerConfig& f5_tower() {
  static TowerConfig t = [] {
    Curve c(5, 0, 1, 4);
    Place s = place_of_point(c, Point::affine(FqExt::from_base(Fq(5, 3), 1),
                                              FqExt::from_base(Fq(5, 2), 1)));
    return make_tower(c, {}, {s}, {{s, 0}});
  }();
  return t;
}

const TowerConfig& f3_tower() {
  static TowerConfig t = [] {
    Curve c(3, 0, 1, 2);
    Place t1 = place_of_point(c, Point::affine(FqExt::from_base(Fq(3, 0), 1), FqExt(3, 1)));
    return make_tower(c, {}, {t1}, {{t1, 0}});
  }();
  return t;
}

}  // namespace

TEST_CASE("power series truncation rules") {
  PowerSeriesT a = PowerSeriesT::one(3);
  a.c[1] = Rat(2);
  PowerSeriesT b = PowerSeriesT::one(2);
  b.c[2] = Rat(1);
  PowerSeriesT p = a * b;
  CHECK(p.order == 2);
  CHECK(p.at(0) == Rat(1));
  CHECK(p.at(1) == Rat(2));
  CHECK(p.at(2) == Rat(1));
  CHECK_THROWS_AS(p.at(3), InternalError);
}

TEST_CASE("character sums vanish for the nontrivial characters") {
  for (const TowerConfig* t : {&f5_tower(), &f3_tower()}) {
    for (CharKind chr : {CharKind::Chi1, CharKind::Chi2, CharKind::Chi3}) {
      CHECK(char_sum(*t, chr, 0) == Rat(1));
      for (int n = 1; n <= 4; ++n) {
        CHECK(char_sum(*t, chr, n) == Rat(0));
        CHECK(char_sum_from_euler(*t, chr, n) == Rat(0));
      }
    }
  }
}

TEST_CASE("trivial character counts divisors") {
  const TowerConfig& t = f5_tower();
  CHECK(char_sum(t, CharKind::Trivial, 0) == Rat(1));
  CHECK(char_sum(t, CharKind::Trivial, 1) == Rat(8));  // degree-1 places
  for (int n = 1; n <= 3; ++n) {
    Rat direct = char_sum(t, CharKind::Trivial, n);
    CHECK(direct == Rat(static_cast<long long>(effective_divisors(t.curve, n).size())));
    CHECK(direct == char_sum_from_euler(t, CharKind::Trivial, n));
  }
}

TEST_CASE("euler factorization passes to degree 3") {
  for (const TowerConfig* t : {&f5_tower(), &f3_tower()}) {
    auto rep = euler_factorization_check(*t, 3);
    CHECK(rep.all_pass);
    CHECK(!rep.entries.empty());
    for (auto& e : rep.entries) CHECK(e.pass);
  }
}

TEST_CASE("zeta numerator of the F_5 curve") {
  auto rep = zeta_numerator(Curve(5, 0, 1, 4), 4);
  CHECK(rep.trace == -2);  // 5 + 1 - 8
  CHECK(rep.numerator.c == std::vector<Rat>{Rat(1), Rat(2), Rat(5)});
  CHECK(rep.functional_equation);
  CHECK(rep.divisor_counts_match);
  CHECK(rep.counted[0] == 1);
  CHECK(rep.counted[1] == 8);
}

TEST_CASE("zeta numerator of the supersingular F_3 curve") {
  auto rep = zeta_numerator(Curve(3, 0, 1, 2), 4);
  CHECK(rep.trace == 0);
  CHECK(rep.functional_equation);
  CHECK(rep.divisor_counts_match);
}
