#include "biqorb/lseries.hpp"

namespace biqorb {

PowerSeriesT PowerSeriesT::one(int order) {
  PowerSeriesT s;
  s.order = order;
  s.c.assign(static_cast<size_t>(order) + 1, Rat(0));
  s.c[0] = Rat(1);
  return s;
}

Rat PowerSeriesT::at(int k) const {
  BIQORB_CHECK(k >= 0 && k <= order, "series coefficient out of range");
  return c[static_cast<size_t>(k)];
}

PowerSeriesT operator+(const PowerSeriesT& a, const PowerSeriesT& b) {
  PowerSeriesT r;
  r.order = std::min(a.order, b.order);
  r.c.assign(static_cast<size_t>(r.order) + 1, Rat(0));
  for (int k = 0; k <= r.order; ++k) r.c[static_cast<size_t>(k)] = a.at(k) + b.at(k);
  return r;
}

PowerSeriesT operator*(const PowerSeriesT& a, const PowerSeriesT& b) {
  PowerSeriesT r;
  r.order = std::min(a.order, b.order);
  r.c.assign(static_cast<size_t>(r.order) + 1, Rat(0));
  for (int i = 0; i <= r.order; ++i)
    for (int j = 0; i + j <= r.order; ++j)
      if (i <= a.order && j <= b.order)
        r.c[static_cast<size_t>(i + j)] += a.at(i) * b.at(j);
  return r;
}

namespace {

int char_value(const TowerConfig& t, CharKind chr, const Place& x) {
  switch (chr) {
    case CharKind::Trivial:
      return 1;
    case CharKind::Chi1:
      return t.chi1().value(x);
    case CharKind::Chi2:
      return t.chi2().value(x);
    case CharKind::Chi3:
      return t.chi3().value(x);
  }
  throw InternalError("unknown character kind");
}

}  // namespace

Rat char_sum(const TowerConfig& t, CharKind chr, int n) {
  BIQORB_CHECK(n >= 0, "character sum of negative degree");
  Rat total(0);
  for (auto& d : effective_divisors(t.curve, n)) {
    int sign = 1;
    for (auto& [pl, m] : d.mult)
      if (m % 2 != 0) sign *= char_value(t, chr, pl);
    total += Rat(sign);
  }
  return total;
}

Rat char_sum_from_euler(const TowerConfig& t, CharKind chr, int n) {
  // expand prod over places of degree <= n of (1 - chr(x) T^{deg})^{-1}
  PowerSeriesT acc = PowerSeriesT::one(n);
  for (auto& x : places_up_to(t.curve, std::max(n, 1))) {
    if (x.deg > n) continue;
    int v = char_value(t, chr, x);
    // (1 - v T^d)^{-1} = 1 + v T^d + v^2 T^{2d} + ...
    PowerSeriesT inv = PowerSeriesT::one(n);
    int sign = v;
    for (int k = x.deg; k <= n; k += x.deg) {
      inv.c[static_cast<size_t>(k)] = Rat(sign);
      sign *= v;
    }
    acc = acc * inv;
  }
  return acc.at(n);
}

EulerCheckReport euler_factorization_check(const TowerConfig& t, int up_to_degree) {
  EulerCheckReport rep;
  DescentChar c1 = t.chi1(), c2 = t.chi2();
  for (auto& x : places_up_to(t.curve, up_to_degree)) {
    int order = 4 * x.deg;
    PowerSeriesT lhs = PowerSeriesT::one(order);
    for (auto& w : places_over(t, x)) {
      PowerSeriesT f = PowerSeriesT::one(order);
      f.c[static_cast<size_t>(w.degree())] = Rat(-eta_value(t, w));
      lhs = lhs * f;
    }
    PowerSeriesT f1 = PowerSeriesT::one(order), f2 = PowerSeriesT::one(order);
    f1.c[static_cast<size_t>(x.deg)] = Rat(-c1.value(x));
    f2.c[static_cast<size_t>(x.deg)] = Rat(-c2.value(x));
    PowerSeriesT rhs = f1 * f2;
    rep.entries.push_back({x, lhs == rhs});
    if (!(lhs == rhs)) rep.all_pass = false;
  }
  return rep;
}

ZetaReport zeta_numerator(const Curve& c, int up_to_degree) {
  ZetaReport rep;
  long long npts = static_cast<long long>(points_over(c, 1).size());
  rep.trace = c.q + 1 - npts;
  rep.numerator.order = 2;
  rep.numerator.c = {Rat(1), Rat(-rep.trace), Rat(c.q)};

  // functional equation P(T) = q T^2 P(1/(qT)): coefficients satisfy
  // c0 = c2 / q and c1 = c1
  rep.functional_equation =
      rep.numerator.c[0] == rep.numerator.c[2] / Rat(c.q);

  // expansion of P / ((1-T)(1-qT)) versus enumerated divisor counts
  PowerSeriesT geo = PowerSeriesT::one(up_to_degree);
  for (int k = 0; k <= up_to_degree; ++k) {
    Rat s(0), qq(1);
    for (int j = 0; j <= k; ++j) {
      s += qq;
      qq *= Rat(c.q);
    }
    geo.c[static_cast<size_t>(k)] = s;  // 1/((1-T)(1-qT))
  }
  PowerSeriesT p = PowerSeriesT::one(up_to_degree);
  for (int k = 0; k <= std::min(2, up_to_degree); ++k)
    p.c[static_cast<size_t>(k)] = rep.numerator.c[static_cast<size_t>(k)];
  PowerSeriesT expansion = p * geo;
  rep.divisor_counts_match = true;
  for (int n = 0; n <= up_to_degree; ++n) {
    long long counted = static_cast<long long>(effective_divisors(c, n).size());
    rep.counted.push_back(counted);
    rep.predicted.push_back(expansion.at(n));
    if (!(expansion.at(n) == Rat(counted))) rep.divisor_counts_match = false;
  }
  return rep;
}

}  // namespace biqorb
