#include "biqorb/series.hpp"

#include <algorithm>

namespace biqorb {

LaurentSeries LaurentSeries::zero(int q, int rd) {
  LaurentSeries s;
  s.q = static_cast<int16_t>(q);
  s.rd = static_cast<int16_t>(rd);
  s.exact_zero = true;
  return s;
}

LaurentSeries LaurentSeries::constant(const FqExt& a, int len) {
  if (a.is_zero()) return zero(a.q, a.deg);
  LaurentSeries s;
  s.q = a.q;
  s.rd = a.deg;
  s.start = 0;
  s.c.assign(static_cast<size_t>(len), FqExt(a.q, a.deg));
  s.c[0] = a;
  return s;
}

LaurentSeries LaurentSeries::uniformizer(int q, int rd, int len) {
  LaurentSeries s;
  s.q = static_cast<int16_t>(q);
  s.rd = static_cast<int16_t>(rd);
  s.start = 1;
  s.c.assign(static_cast<size_t>(len), FqExt(q, rd));
  s.c[0] = FqExt::from_base(Fq(q, 1), rd);
  return s;
}

FqExt LaurentSeries::at(int e) const {
  if (exact_zero) return FqExt(q, rd);
  BIQORB_CHECK(e < end(), "series coefficient requested beyond precision");
  if (e < start) return FqExt(q, rd);
  return c[static_cast<size_t>(e - start)];
}

std::optional<int> LaurentSeries::valuation() const {
  if (exact_zero) return std::nullopt;
  for (size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) return start + static_cast<int>(i);
  return std::nullopt;
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries s = *this;
  if (!s.exact_zero) s.start += k;
  return s;
}

void LaurentSeries::strip_leading_zeros() {
  if (exact_zero) return;
  size_t i = 0;
  while (i < c.size() && c[i].is_zero()) ++i;
  if (i > 0) {
    c.erase(c.begin(), c.begin() + static_cast<long>(i));
    start += static_cast<int>(i);
  }
}

namespace {
void require_same(const LaurentSeries& a, const LaurentSeries& b) {
  BIQORB_CHECK(a.q == b.q && a.rd == b.rd, "series coefficient fields differ");
}
}  // namespace

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  require_same(a, b);
  if (a.exact_zero) return b;
  if (b.exact_zero) return a;
  LaurentSeries r;
  r.q = a.q;
  r.rd = a.rd;
  r.start = std::min(a.start, b.start);
  int hi = std::min(a.end(), b.end());
  BIQORB_CHECK(hi > r.start, "series sum has empty window");
  r.c.assign(static_cast<size_t>(hi - r.start), FqExt(a.q, a.rd));
  for (int e = r.start; e < hi; ++e) {
    FqExt va = (e < a.start) ? FqExt(a.q, a.rd) : a.at(e);
    FqExt vb = (e < b.start) ? FqExt(a.q, a.rd) : b.at(e);
    r.c[static_cast<size_t>(e - r.start)] = va + vb;
  }
  return r;
}

LaurentSeries operator-(const LaurentSeries& a) {
  LaurentSeries r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries scale(const FqExt& f, const LaurentSeries& s) {
  if (f.is_zero() || s.exact_zero) return LaurentSeries::zero(s.q, s.rd);
  LaurentSeries r = s;
  for (auto& x : r.c) x = x * f;
  return r;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  require_same(a, b);
  if (a.exact_zero || b.exact_zero) return LaurentSeries::zero(a.q, a.rd);
  // valid product window: [sa+sb, min(sa + end_b, sb + end_a))
  LaurentSeries r;
  r.q = a.q;
  r.rd = a.rd;
  r.start = a.start + b.start;
  long hi = std::min(static_cast<long>(a.start) + b.end(),
                     static_cast<long>(b.start) + a.end());
  BIQORB_CHECK(hi > r.start, "series product has empty window");
  r.c.assign(static_cast<size_t>(hi - r.start), FqExt(a.q, a.rd));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      long e = static_cast<long>(a.start) + static_cast<long>(i) + b.start +
               static_cast<long>(j);
      if (e >= hi) break;
      size_t k = static_cast<size_t>(e - r.start);
      r.c[k] = r.c[k] + a.c[i] * b.c[j];
    }
  }
  return r;
}

LaurentSeries series_inverse(const LaurentSeries& a0) {
  LaurentSeries a = a0;
  a.strip_leading_zeros();
  auto v = a.valuation();
  BIQORB_CHECK(v.has_value(), "inverse of a series with invisible valuation");
  size_t n = a.c.size();
  LaurentSeries r;
  r.q = a.q;
  r.rd = a.rd;
  r.start = -*v;
  r.c.assign(n, FqExt(a.q, a.rd));
  FqExt lead_inv = inverse(a.c[0]);
  r.c[0] = lead_inv;
  for (size_t k = 1; k < n; ++k) {
    FqExt acc(a.q, a.rd);
    for (size_t j = 1; j <= k; ++j) acc = acc + a.c[j] * r.c[k - j];
    r.c[k] = -(lead_inv * acc);
  }
  return r;
}

LaurentSeries series_sqrt_unit(const LaurentSeries& a0, const FqExt& root) {
  LaurentSeries a = a0;
  BIQORB_CHECK(!a.exact_zero, "sqrt of zero series");
  a.strip_leading_zeros();
  BIQORB_CHECK(a.start == 0, "sqrt needs a unit series");
  BIQORB_CHECK(root * root == a.c[0], "sqrt root does not match constant term");
  size_t n = a.c.size();
  LaurentSeries r;
  r.q = a.q;
  r.rd = a.rd;
  r.start = 0;
  r.c.assign(n, FqExt(a.q, a.rd));
  r.c[0] = root;
  FqExt two_root_inv = inverse(root + root);
  for (size_t k = 1; k < n; ++k) {
    FqExt acc = a.c[k];
    for (size_t j = 1; j < k; ++j) acc = acc - r.c[j] * r.c[k - j];
    r.c[k] = acc * two_root_inv;
  }
  return r;
}

LaurentSeries poly_eval_series(const Poly& p, const LaurentSeries& x, int len) {
  LaurentSeries acc = LaurentSeries::zero(x.q, x.rd);
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * x + LaurentSeries::constant(embed(FqExt::from_base(p.coeff(k), 1), x.rd), len);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

namespace {

enum class BaseKind { Generic, Torsion, Infinity };

BaseKind classify(const Curve& c, const Place& p) {
  if (p.is_infinity()) return BaseKind::Infinity;
  if (p.rep.y.is_zero()) return BaseKind::Torsion;
  return BaseKind::Generic;
}

// Lexicographically least square root (by dense field index).
FqExt least_sqrt(const FqExt& a) {
  auto r = ext_sqrt(a);
  BIQORB_CHECK(r.has_value(), "square root required but absent");
  FqExt s = *r;
  return (s.index() <= (-s).index()) ? s : -s;
}

}  // namespace

ExpansionFrame make_frame(const Curve& c, const Place& p, int len) {
  BIQORB_CHECK(len >= 4, "frame length too small");
  ExpansionFrame fr;
  fr.curve = c;
  fr.base = p;
  fr.len = len;
  switch (classify(c, p)) {
    case BaseKind::Generic: {
      fr.rd = p.deg;
      const FqExt& x0 = p.rep.x;
      LaurentSeries xs = LaurentSeries::constant(x0, len);
      LaurentSeries t = LaurentSeries::uniformizer(c.q, fr.rd, len);
      xs = xs + t;
      // y = sqrt(f(x(t))) with constant term the representative's y
      Poly f = Poly(c.q, {1});
      for (const Fq& e : {c.e1, c.e2, c.e3})
        f = f * Poly(c.q, {-static_cast<long long>(e.v), 1});
      LaurentSeries fs = poly_eval_series(f, xs, len);
      fr.xs = xs;
      fr.ys = series_sqrt_unit(fs, p.rep.y);
      break;
    }
    case BaseKind::Torsion: {
      fr.rd = 1;
      BIQORB_CHECK(p.deg == 1, "2-torsion places are rational");
      Fq ei(c.q, p.rep.x.c[0]);
      // x = e_i + t^2 / g(x) with g(x) = prod over the other roots; the
      // error valuation gains 2 per iteration.
      Poly g = Poly(c.q, {1});
      for (const Fq& e : {c.e1, c.e2, c.e3})
        if (!(e == ei)) g = g * Poly(c.q, {-static_cast<long long>(e.v), 1});
      LaurentSeries xs = LaurentSeries::constant(FqExt::from_base(ei, 1), len);
      LaurentSeries t2 = LaurentSeries::uniformizer(c.q, 1, len).shifted(1);
      for (int it = 0; it <= len / 2 + 2; ++it) {
        LaurentSeries gx = poly_eval_series(g, xs, len);
        xs = LaurentSeries::constant(FqExt::from_base(ei, 1), len) + t2 * series_inverse(gx);
        // keep the window from shrinking across iterations
        if (xs.end() - xs.start > len) xs.c.resize(static_cast<size_t>(len));
      }
      fr.xs = xs;
      fr.ys = LaurentSeries::uniformizer(c.q, 1, len);
      break;
    }
    case BaseKind::Infinity: {
      fr.rd = 1;
      // s = 1/x solves s = t^2 (1 - e1 s)(1 - e2 s)(1 - e3 s); v(s) = 2.
      LaurentSeries t2 = LaurentSeries::uniformizer(c.q, 1, len + 4).shifted(1);
      LaurentSeries s = t2;
      for (int it = 0; it <= len / 2 + 3; ++it) {
        LaurentSeries prod = LaurentSeries::constant(FqExt::from_base(Fq(c.q, 1), 1), len + 4);
        for (const Fq& e : {c.e1, c.e2, c.e3}) {
          LaurentSeries fac =
              LaurentSeries::constant(FqExt::from_base(Fq(c.q, 1), 1), len + 4) -
              scale(FqExt::from_base(e, 1), s);
          prod = prod * fac;
        }
        s = t2 * prod;
        if (s.end() - s.start > len + 4) s.c.resize(static_cast<size_t>(len + 4));
      }
      fr.xs = series_inverse(s);                 // starts at -2
      fr.ys = fr.xs.shifted(-1);                 // y = x / t
      if (fr.xs.end() - fr.xs.start > len) fr.xs.c.resize(static_cast<size_t>(len));
      if (fr.ys.end() - fr.ys.start > len) fr.ys.c.resize(static_cast<size_t>(len));
      break;
    }
  }
  // on-curve sanity: y^2 = f(x) on the common window
  {
    Poly f = Poly(c.q, {1});
    for (const Fq& e : {c.e1, c.e2, c.e3})
      f = f * Poly(c.q, {-static_cast<long long>(e.v), 1});
    LaurentSeries lhs = fr.ys * fr.ys;
    LaurentSeries rhs = poly_eval_series(f, fr.xs, len);
    LaurentSeries diff = lhs - rhs;
    BIQORB_CHECK(!diff.valuation().has_value(), "frame violates the curve equation");
  }
  return fr;
}

ExpansionFrame make_frame(const TowerConfig& t, const CoverPlace& w, int len) {
  ExpansionFrame fr = make_frame(t.curve, w.base, len + 4);
  int target_rd = fr.rd;
  if (!w.is_split()) {
    target_rd = 2 * fr.rd;
    if (target_rd > kMaxExtDeg)
      throw CapacityError("inert cover place needs residue degree beyond the session cap");
    auto lift = [&](LaurentSeries& s) {
      s.rd = static_cast<int16_t>(target_rd);
      for (auto& x : s.c) x = embed(x, target_rd);
    };
    lift(fr.xs);
    lift(fr.ys);
    fr.rd = target_rd;
  }
  // beta^2 = x - e3: valuation is even (0 generically, 2 over the torsion
  // x-value, -2 over infinity); take the square root of the unit part.
  LaurentSeries wseries =
      fr.xs - LaurentSeries::constant(embed(FqExt::from_base(t.curve.e3, 1), fr.rd), len + 4);
  wseries.strip_leading_zeros();
  auto v = wseries.valuation();
  BIQORB_CHECK(v.has_value(), "x - e3 vanished to precision in frame");
  BIQORB_CHECK(*v % 2 == 0, "x - e3 has odd valuation");
  LaurentSeries unit = wseries.shifted(-*v);
  FqExt c0 = unit.at(0);
  if (w.is_split()) {
    BIQORB_CHECK(legendre(c0) == 1, "split tag at a non-split place");
  }
  FqExt r0 = least_sqrt(c0);
  if (w.tag == CoverTag::Split1) r0 = -r0;
  fr.beta = series_sqrt_unit(unit, r0).shifted(*v / 2);
  fr.len = len;
  return fr;
}

}  // namespace biqorb
