#include "biqorb/function_field.hpp"

#include "biqorb/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace biqorb {

namespace {

Poly curve_cubic(const Curve& c) {
  Poly f = Poly(c.q, {1});
  for (const Fq& e : {c.e1, c.e2, c.e3}) f = f * Poly(c.q, {-static_cast<long long>(e.v), 1});
  return f;
}

void require_same_curve(const Curve& a, const Curve& b) {
  BIQORB_CHECK(a == b, "mixed curves in function field arithmetic");
}

}  // namespace

FuncElem::FuncElem(const Curve& c, Poly p_, Poly s_, Poly r_)
    : curve(c), p(std::move(p_)), s(std::move(s_)), r(std::move(r_)) {
  BIQORB_CHECK(!r.is_zero(), "zero denominator");
  // canonical form: cancel gcd(p, s, r), make r monic
  Poly g = poly_gcd(poly_gcd(p, s), r);
  if (g.degree() >= 1) {
    p = poly_divexact(p, g);
    s = poly_divexact(s, g);
    r = poly_divexact(r, g);
  }
  Fq lead = r.lead();
  if (!(lead == Fq(curve.q, 1))) {
    Fq il = inverse(lead);
    p = il * p;
    s = il * s;
    r = il * r;
  }
  if (p.is_zero() && s.is_zero()) r = Poly(curve.q, {1});
}

FuncElem FuncElem::zero(const Curve& c) {
  return FuncElem(c, Poly(c.q), Poly(c.q), Poly(c.q, {1}));
}
FuncElem FuncElem::one(const Curve& c) {
  return FuncElem(c, Poly(c.q, {1}), Poly(c.q), Poly(c.q, {1}));
}
FuncElem FuncElem::from_const(const Curve& c, const Fq& a) {
  return FuncElem(c, poly_const(a), Poly(c.q), Poly(c.q, {1}));
}
FuncElem FuncElem::from_poly(const Curve& c, const Poly& p) {
  return FuncElem(c, p, Poly(c.q), Poly(c.q, {1}));
}
FuncElem FuncElem::coordinate_x(const Curve& c) {
  return FuncElem(c, poly_x(c.q), Poly(c.q), Poly(c.q, {1}));
}
FuncElem FuncElem::coordinate_y(const Curve& c) {
  return FuncElem(c, Poly(c.q), Poly(c.q, {1}), Poly(c.q, {1}));
}

FuncElem FuncElem::conj_y() const { return FuncElem(curve, p, -s, r); }

FuncElem operator+(const FuncElem& a, const FuncElem& b) {
  require_same_curve(a.curve, b.curve);
  return FuncElem(a.curve, a.p * b.r + b.p * a.r, a.s * b.r + b.s * a.r, a.r * b.r);
}

FuncElem operator-(const FuncElem& a) { return FuncElem(a.curve, -a.p, -a.s, a.r); }
FuncElem operator-(const FuncElem& a, const FuncElem& b) { return a + (-b); }

FuncElem operator*(const FuncElem& a, const FuncElem& b) {
  require_same_curve(a.curve, b.curve);
  Poly f = curve_cubic(a.curve);
  // (p1 + s1 y)(p2 + s2 y) = p1 p2 + s1 s2 f + (p1 s2 + p2 s1) y
  return FuncElem(a.curve, a.p * b.p + a.s * b.s * f, a.p * b.s + b.p * a.s, a.r * b.r);
}

FuncElem inverse(const FuncElem& a) {
  BIQORB_CHECK(!a.is_zero(), "division by zero in F");
  Poly f = curve_cubic(a.curve);
  // 1/((p + s y)/r) = r (p - s y) / (p^2 - s^2 f)
  Poly nrm = a.p * a.p - a.s * a.s * f;
  BIQORB_CHECK(!nrm.is_zero(), "norm of nonzero element vanished");
  return FuncElem(a.curve, a.r * a.p, -(a.r * a.s), nrm);
}

FuncElem operator/(const FuncElem& a, const FuncElem& b) { return a * inverse(b); }

std::string func_to_string(const FuncElem& a) {
  std::ostringstream os;
  os << "(" << poly_to_string(a.p) << "|" << poly_to_string(a.s) << "|" << poly_to_string(a.r)
     << ")";
  return os.str();
}

CoverElem cover_zero(const TowerConfig& t) {
  return CoverElem{FuncElem::zero(t.curve), FuncElem::zero(t.curve)};
}
CoverElem cover_one(const TowerConfig& t) {
  return CoverElem{FuncElem::one(t.curve), FuncElem::zero(t.curve)};
}
CoverElem cover_beta(const TowerConfig& t) {
  return CoverElem{FuncElem::zero(t.curve), FuncElem::one(t.curve)};
}
CoverElem cover_from_func(const FuncElem& u) {
  return CoverElem{u, FuncElem::zero(u.curve)};
}

CoverElem operator+(const CoverElem& a, const CoverElem& b) {
  return CoverElem{a.u + b.u, a.v + b.v};
}
CoverElem operator-(const CoverElem& a) { return CoverElem{-a.u, -a.v}; }
CoverElem operator-(const CoverElem& a, const CoverElem& b) { return a + (-b); }

CoverElem cover_mul(const TowerConfig& t, const CoverElem& a, const CoverElem& b) {
  FuncElem xm3 = FuncElem::coordinate_x(t.curve) - FuncElem::from_const(t.curve, t.curve.e3);
  return CoverElem{a.u * b.u + a.v * b.v * xm3, a.u * b.v + b.u * a.v};
}

CoverElem cover_inverse(const TowerConfig& t, const CoverElem& a) {
  BIQORB_CHECK(!a.is_zero(), "division by zero in the cover field");
  FuncElem nm = norm_k3(t, a);
  BIQORB_CHECK(!nm.is_zero(), "cover norm of nonzero element vanished");
  FuncElem inm = inverse(nm);
  return CoverElem{a.u * inm, -(a.v * inm)};
}

CoverElem sigma3(const CoverElem& a) { return CoverElem{a.u, -a.v}; }

FuncElem trace_k3(const CoverElem& a) { return a.u + a.u; }

FuncElem norm_k3(const TowerConfig& t, const CoverElem& a) {
  FuncElem xm3 = FuncElem::coordinate_x(t.curve) - FuncElem::from_const(t.curve, t.curve.e3);
  return a.u * a.u - a.v * a.v * xm3;
}

std::string cover_to_string(const CoverElem& a) {
  return func_to_string(a.u) + "+" + func_to_string(a.v) + "b";
}

// ---------------------------------------------------------------------------
// Valuations by adaptive expansion
// ---------------------------------------------------------------------------

namespace {

// Upper bound for the zero order of a nonzero element at any single place;
// expansions that stay zero past this bound would mean the element is zero.
int zero_order_cap(const FuncElem& a) {
  int dp = std::max(a.p.degree(), 0), ds = std::max(a.s.degree(), 0);
  int dr = std::max(a.r.degree(), 0);
  return 4 * (std::max(dp, ds + 2) + dr) + 16;
}

int zero_order_cap(const CoverElem& a) {
  return zero_order_cap(a.u) + zero_order_cap(a.v) + 8;
}

LaurentSeries func_series(const FuncElem& a, const ExpansionFrame& fr, int len) {
  if (a.is_zero()) return LaurentSeries::zero(fr.curve.q, fr.rd);
  LaurentSeries num = poly_eval_series(a.p, fr.xs, len);
  if (!a.s.is_zero()) num = num + poly_eval_series(a.s, fr.xs, len) * fr.ys;
  LaurentSeries den = poly_eval_series(a.r, fr.xs, len);
  BIQORB_CHECK(den.valuation().has_value(), "denominator vanished to precision");
  return num * series_inverse(den);
}

LaurentSeries cover_series(const CoverElem& a, const ExpansionFrame& fr, int len) {
  LaurentSeries s = func_series(a.u, fr, len);
  if (!a.v.is_zero()) {
    BIQORB_CHECK(fr.beta.has_value(), "cover expansion needs a cover frame");
    s = s + func_series(a.v, fr, len) * (*fr.beta);
  }
  return s;
}

}  // namespace

int valuation(const FuncElem& a, const Place& p) {
  BIQORB_CHECK(!a.is_zero(), "valuation of zero");
  int cap = zero_order_cap(a);
  for (int len = 16; ; len *= 2) {
    ExpansionFrame fr = make_frame(a.curve, p, len);
    LaurentSeries s = func_series(a, fr, len);
    auto v = s.valuation();
    if (v.has_value()) return *v;
    BIQORB_CHECK(s.end() <= cap, "nonzero element vanished past its zero-order cap");
  }
}

int valuation(const TowerConfig& t, const CoverElem& a, const CoverPlace& w) {
  BIQORB_CHECK(!a.is_zero(), "valuation of zero");
  int cap = zero_order_cap(a);
  for (int len = 16; ; len *= 2) {
    ExpansionFrame fr = make_frame(t, w, len);
    LaurentSeries s = cover_series(a, fr, len);
    auto v = s.valuation();
    if (v.has_value()) return *v;
    BIQORB_CHECK(s.end() <= cap, "nonzero element vanished past its zero-order cap");
  }
}

LaurentSeries expand_at(const TowerConfig& t, const CoverElem& a, const CoverPlace& w, int hi) {
  if (a.is_zero()) return LaurentSeries::zero(t.curve.q, 1);
  int v = valuation(t, a, w);
  for (int len = std::max(hi - v + 8, 16);; len *= 2) {
    ExpansionFrame fr = make_frame(t, w, len);
    LaurentSeries s = cover_series(a, fr, len);
    if (s.end() >= hi) return s;
  }
}

// ---------------------------------------------------------------------------
// Divisors of elements
// ---------------------------------------------------------------------------

Divisor divisor_of(const FuncElem& a) {
  BIQORB_CHECK(!a.is_zero(), "divisor of zero");
  const Curve& c = a.curve;
  Divisor d;
  // candidate affine places: over irreducible factors of the numerator norm
  // p^2 - s^2 f and of the denominator r
  Poly f = curve_cubic(c);
  Poly nn = a.p * a.p - a.s * a.s * f;
  std::set<Place> candidates;
  for (const Poly& poly : {nn, a.r}) {
    if (poly.degree() < 1) continue;
    for (auto& [pi, e] : factor(poly).factors)
      for (auto& [pl, v] : places_over_irreducible(c, pi)) candidates.insert(pl);
  }
  for (const Place& pl : candidates) {
    int v = valuation(a, pl);
    d.add(pl, v);
  }
  // infinity: v(p + s y) = min(-2 deg p, -3 - 2 deg s); the parities differ,
  // so no cancellation is possible
  int vn;
  if (a.s.is_zero())
    vn = -2 * a.p.degree();
  else if (a.p.is_zero())
    vn = -3 - 2 * a.s.degree();
  else
    vn = std::min(-2 * a.p.degree(), -3 - 2 * a.s.degree());
  d.add(place_at_infinity(), vn + 2 * a.r.degree());
  BIQORB_CHECK(d.degree() == 0, "principal divisor of F-element has nonzero degree");
  return d;
}

CoverDivisor divisor_of(const TowerConfig& t, const CoverElem& a) {
  BIQORB_CHECK(!a.is_zero(), "divisor of zero");
  FuncElem nm = norm_k3(t, a);
  Divisor dnorm = divisor_of(nm);
  // base places that can carry the divisor: support of the norm plus the
  // supports of u, v and of beta (cancellation between the two split places
  // over one base place can hide it from the norm)
  std::set<Place> bases;
  for (auto& [pl, m] : dnorm.mult) bases.insert(pl);
  for (const FuncElem* g : {&a.u, &a.v})
    if (!g->is_zero())
      for (auto& [pl, m] : divisor_of(*g).mult) bases.insert(pl);
  bases.insert(place_of_point(
      t.curve, Point::affine(FqExt::from_base(t.curve.e3, 1), FqExt(t.curve.q, 1))));
  bases.insert(place_at_infinity());

  CoverDivisor d;
  for (const Place& x : bases) {
    int mnorm = dnorm.multiplicity(x);
    auto ws = places_over(t, x);
    if (ws.size() == 1) {
      // inert: v_w(a) = v_w(sigma a), so the norm valuation is 2 v_w(a)
      BIQORB_CHECK(mnorm % 2 == 0, "odd norm valuation at an inert place");
      d.add(ws[0], mnorm / 2);
    } else {
      int v0 = valuation(t, a, ws[0]);
      int v1 = valuation(t, a, ws[1]);
      BIQORB_CHECK(v0 + v1 == mnorm, "split valuations disagree with the norm");
      d.add(ws[0], v0);
      d.add(ws[1], v1);
    }
  }
  BIQORB_CHECK(d.degree() == 0, "principal divisor on the cover has nonzero degree");
  BIQORB_CHECK(norm_divisor(t, d) == dnorm, "norm of div(a) differs from div(Nm a)");
  return d;
}

// ---------------------------------------------------------------------------
// Riemann-Roch spaces
// ---------------------------------------------------------------------------

namespace {

// minimal polynomial over F_q of the x-coordinate of a place representative
Poly x_minimal_poly(const Place& p) { return minimal_polynomial(p.rep.x); }

// v_P(pi_P(x)): 2 at a 2-torsion place, 1 otherwise
int pi_valuation(const Place& p) { return p.rep.y.is_zero() ? 2 : 1; }

struct XCondition {
  Place place;
  int need = 0;  // require v_P(numerator) >= need
};

// Flatten "coefficient of t^e in series over F_{q^rd} equals target" into rd
// scalar rows appended to the matrix builder.
struct RowBuilder {
  std::vector<std::vector<Fq>> rows;
  std::vector<Fq> rhs;
  int ncols;
  int q;
  explicit RowBuilder(int ncols_, int q_) : ncols(ncols_), q(q_) {}
  void add_coefficient_rows(const std::vector<LaurentSeries>& cand, int e,
                            const FqExt& target) {
    int rd = cand.empty() ? target.deg : cand.front().rd;
    for (int comp = 0; comp < rd; ++comp) {
      std::vector<Fq> row(static_cast<size_t>(ncols), Fq(q, 0));
      for (int j = 0; j < ncols; ++j) row[static_cast<size_t>(j)] = cand[static_cast<size_t>(j)].at(e).coord(comp);
      rows.push_back(std::move(row));
      rhs.push_back(target.deg == rd ? target.coord(comp) : Fq(q, 0));
    }
  }
};

}  // namespace

std::vector<FuncElem> rr_space_x(const Curve& c, const Divisor& g) {
  std::vector<FuncElem> basis;
  int deg = g.degree();
  if (deg < 0) return basis;
  if (g.is_zero()) {
    basis.push_back(FuncElem::one(c));
    return basis;
  }
  // denominator clearing polynomial h
  Poly h = Poly(c.q, {1});
  std::map<Poly, int, bool (*)(const Poly&, const Poly&)> hexp(
      [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.c < b.c;
      });
  for (auto& [pl, m] : g.mult) {
    if (pl.is_infinity() || m <= 0) continue;
    Poly pi = x_minimal_poly(pl);
    int k = (m + pi_valuation(pl) - 1) / pi_valuation(pl);
    auto [it, fresh] = hexp.try_emplace(pi, k);
    if (!fresh) it->second = std::max(it->second, k);
  }
  for (auto& [pi, k] : hexp)
    for (int i = 0; i < k; ++i) h = h * pi;

  int ginf = g.multiplicity(place_at_infinity());
  int dp_max = ginf + 2 * h.degree();      // v_inf(x^i / h) = -2i + 2 deg h >= -ginf
  int ds_max = ginf + 2 * h.degree() - 3;  // v_inf(x^i y / h) = -2i - 3 + 2 deg h
  int np = dp_max >= 0 ? dp_max / 2 + 1 : 0;
  int ns = ds_max >= 0 ? ds_max / 2 + 1 : 0;
  int ncols = np + ns;
  if (ncols == 0) return basis;

  // local vanishing conditions
  std::vector<XCondition> conds;
  std::set<Place> cond_places;
  for (auto& [pi, k] : hexp)
    for (auto& [pl, vp] : places_over_irreducible(c, pi)) cond_places.insert(pl);
  for (auto& [pl, m] : g.mult)
    if (!pl.is_infinity()) cond_places.insert(pl);
  for (const Place& pl : cond_places) {
    int vh = 0;
    Poly pi = x_minimal_poly(pl);
    auto it = hexp.find(pi);
    if (it != hexp.end()) vh = it->second * pi_valuation(pl);
    int need = vh - g.multiplicity(pl);
    if (need > 0) conds.push_back({pl, need});
  }

  RowBuilder rb(ncols, c.q);
  for (auto& cd : conds) {
    int len = cd.need + 8;
    ExpansionFrame fr = make_frame(c, cd.place, len);
    std::vector<LaurentSeries> cand;
    cand.reserve(static_cast<size_t>(ncols));
    LaurentSeries xpow = LaurentSeries::constant(FqExt::from_base(Fq(c.q, 1), fr.rd), len);
    for (int i = 0; i < np; ++i) {
      cand.push_back(xpow);
      xpow = xpow * fr.xs;
    }
    xpow = fr.ys;
    for (int i = 0; i < ns; ++i) {
      cand.push_back(xpow);
      xpow = xpow * fr.xs;
    }
    for (int e = 0; e < cd.need; ++e)
      rb.add_coefficient_rows(cand, e, FqExt(c.q, fr.rd));
  }

  MatX<Fq> A = MatX<Fq>(static_cast<int>(rb.rows.size()), ncols);
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < ncols; ++j) A(i, j) = rb.rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  auto ker = kernel_basis(std::move(A), Fq(c.q, 0), Fq(c.q, 1));
  for (auto& vec : ker) {
    std::vector<long long> pc(static_cast<size_t>(np), 0), sc(static_cast<size_t>(ns), 0);
    for (int i = 0; i < np; ++i) pc[static_cast<size_t>(i)] = vec(i).v;
    for (int i = 0; i < ns; ++i) sc[static_cast<size_t>(i)] = vec(np + i).v;
    basis.emplace_back(c, Poly(c.q, pc), Poly(c.q, sc), h);
  }
  if (deg >= 1)
    BIQORB_CHECK(static_cast<int>(basis.size()) == deg,
                 "Riemann-Roch dimension mismatch on the base curve");
  return basis;
}

RRSpace rr_space(const TowerConfig& t, const CoverDivisor& m) {
  RRSpace sp;
  sp.m = m;
  int deg = m.degree();
  if (deg < 0) return sp;
  if (deg == 0) {
    // constants iff M = 0 (degree-0 effective divisors are trivial)
    if (m.is_zero()) sp.basis.push_back(cover_one(t));
    return sp;
  }
  const Curve& c = t.curve;
  // dominating pullback divisor G on X
  Divisor g;
  for (auto& [w, mm] : m.mult) {
    int cur = g.multiplicity(w.base);
    int want = std::max(cur, mm);
    if (want != cur) g.add(w.base, want - cur);
  }
  // keep entries where all cover multiplicities are negative, too
  for (auto& [w, mm] : m.mult) {
    // ensure g has an entry >= mm for each w; max was taken above
    BIQORB_CHECK(g.multiplicity(w.base) >= mm, "dominating divisor not dominating");
  }
  Place t3 = place_of_point(c, Point::affine(FqExt::from_base(c.e3, 1), FqExt(c.q, 1)));
  Divisor gv = g;
  gv.add(t3, 1);
  gv.add(place_at_infinity(), -1);
  std::vector<FuncElem> bu = rr_space_x(c, g);
  std::vector<FuncElem> bv = rr_space_x(c, gv);
  int nu = static_cast<int>(bu.size()), nv = static_cast<int>(bv.size());
  int ncols = nu + nv;
  if (ncols == 0) return sp;

  // candidate cover elements
  std::vector<CoverElem> cand;
  cand.reserve(static_cast<size_t>(ncols));
  for (auto& b : bu) cand.push_back(cover_from_func(b));
  for (auto& b : bv) cand.push_back(CoverElem{FuncElem::zero(c), b});

  // extra conditions at every cover place where the pullback of G exceeds M
  std::set<CoverPlace> cond_ws;
  for (auto& [x, gm] : g.mult)
    for (auto& w : places_over(t, x)) cond_ws.insert(w);
  for (auto& [w, mm] : m.mult) cond_ws.insert(w);
  RowBuilder rb(ncols, c.q);
  for (const CoverPlace& w : cond_ws) {
    int gm = g.multiplicity(w.base);   // pullback multiplicity at w
    int need_from = -gm;               // candidates have v_w >= -gm
    int need_to = -m.multiplicity(w);  // required v_w >= -M_w
    if (need_to <= need_from) continue;
    int hi = need_to;  // impose zero coefficients for exponents < need_to
    std::vector<LaurentSeries> ser;
    ser.reserve(static_cast<size_t>(ncols));
    int len = (need_to - need_from) + 18;
    ExpansionFrame fr = make_frame(t, w, len);
    for (auto& ce : cand) {
      LaurentSeries s = cover_series(ce, fr, len);
      BIQORB_CHECK(s.exact_zero || s.valuation().value_or(need_from) >= need_from,
                   "candidate violates pole bound");
      BIQORB_CHECK(s.end() >= hi, "condition window too small");
      ser.push_back(std::move(s));
    }
    for (int e = need_from; e < hi; ++e) rb.add_coefficient_rows(ser, e, FqExt(c.q, fr.rd));
  }

  MatX<Fq> A = MatX<Fq>(static_cast<int>(rb.rows.size()), ncols);
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < ncols; ++j)
      A(i, j) = rb.rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  auto ker = kernel_basis(std::move(A), Fq(c.q, 0), Fq(c.q, 1));
  for (auto& vec : ker) {
    CoverElem acc = cover_zero(t);
    for (int j = 0; j < ncols; ++j) {
      if (vec(j).is_zero()) continue;
      FuncElem coeff = FuncElem::from_const(c, vec(j));
      CoverElem term = cand[static_cast<size_t>(j)];
      acc = acc + CoverElem{term.u * coeff, term.v * coeff};
    }
    sp.basis.push_back(acc);
  }
  BIQORB_CHECK(static_cast<int>(sp.basis.size()) == deg,
               "Riemann-Roch dimension mismatch on the cover");
  return sp;
}

bool rr_member(const TowerConfig& t, const CoverElem& a, const CoverDivisor& m) {
  if (a.is_zero()) return true;
  CoverDivisor d = divisor_of(t, a) + m;
  return d.is_effective();
}

}  // namespace biqorb
