#include "biqorb/curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace biqorb {

Curve::Curve(int q_, long long r1, long long r2, long long r3)
    : q(static_cast<int16_t>(q_)), e1(q_, r1), e2(q_, r2), e3(q_, r3) {
  validate_prime_q(q_);
  if (e1 == e2 || e1 == e3 || e2 == e3)
    throw ConfigError("curve roots must be pairwise distinct");
}

Fq Curve::eval_f(const Fq& x) const { return (x - e1) * (x - e2) * (x - e3); }

FqExt Curve::eval_f(const FqExt& x) const {
  int d = x.deg;
  return (x - FqExt::from_base(e1, d)) * (x - FqExt::from_base(e2, d)) *
         (x - FqExt::from_base(e3, d));
}

Point Point::affine(const FqExt& x, const FqExt& y) {
  Point p;
  p.infinity = false;
  p.x = x;
  p.y = y;
  return p;
}

namespace {

Point frobenius_point(const Point& p) {
  if (p.infinity) return p;
  return Point::affine(frobenius(p.x), frobenius(p.y));
}

void require_on_curve(const Curve& c, const Point& p) {
  if (p.infinity) return;
  BIQORB_CHECK(p.x.q == c.q && p.x.deg == p.y.deg, "point coordinates malformed");
  BIQORB_CHECK(p.y * p.y == c.eval_f(p.x), "point not on curve");
}

}  // namespace

Place place_at_infinity() { return Place{1, Point::at_infinity()}; }

Place place_of_point(const Curve& c, const Point& pt) {
  if (pt.infinity) return place_at_infinity();
  require_on_curve(c, pt);
  // Walk the Frobenius orbit; the representative coordinates must live in
  // F_{q^orbit}, so points given in a larger ambient field are re-expressed.
  int orbit = 1;
  Point cur = frobenius_point(pt);
  while (!(cur == pt)) {
    cur = frobenius_point(cur);
    ++orbit;
    BIQORB_CHECK(orbit <= pt.x.deg, "frobenius orbit did not close");
  }
  Point canonical = pt;
  if (orbit != pt.x.deg) {
    long sub_total = ipow(c.q, orbit);
    FqExt xs(c.q, orbit), ys(c.q, orbit);
    bool fx = false, fy = false;
    for (long i = 0; i < sub_total && !(fx && fy); ++i) {
      FqExt cand = FqExt::from_index(c.q, orbit, i);
      FqExt lifted = embed(cand, pt.x.deg);
      if (!fx && lifted == pt.x) {
        xs = cand;
        fx = true;
      }
      if (!fy && lifted == pt.y) {
        ys = cand;
        fy = true;
      }
    }
    BIQORB_CHECK(fx && fy, "orbit coordinates not in expected subfield");
    canonical = Point::affine(xs, ys);
  }
  // Canonical representative: lexicographically least (x, y) in the orbit.
  Point best = canonical;
  Point cur2 = frobenius_point(canonical);
  while (!(cur2 == canonical)) {
    if (cur2 < best) best = cur2;
    cur2 = frobenius_point(cur2);
  }
  return Place{static_cast<int16_t>(orbit), best};
}

std::string place_label(const Place& p) {
  if (p.is_infinity()) return "inf";
  std::ostringstream os;
  os << p.deg << ":" << ext_to_string(p.rep.x) << ":" << ext_to_string(p.rep.y);
  return os.str();
}

Place place_from_label(const Curve& c, const std::string& s) {
  if (s == "inf") return place_at_infinity();
  auto p1 = s.find(':');
  auto p2 = s.rfind(':');
  if (p1 == std::string::npos || p2 == p1)
    throw ConfigError("bad place label: " + s);
  int deg = 0;
  try {
    deg = std::stoi(s.substr(0, p1));
  } catch (...) {
    throw ConfigError("bad place degree in label: " + s);
  }
  if (deg < 1 || deg > kMaxExtDeg) throw ConfigError("place degree out of range: " + s);
  FqExt x = ext_from_string(c.q, s.substr(p1 + 1, p2 - p1 - 1));
  FqExt y = ext_from_string(c.q, s.substr(p2 + 1));
  if (x.deg != deg || y.deg != deg)
    throw ConfigError("place label coordinates disagree with degree: " + s);
  Point pt = Point::affine(x, y);
  if (!(pt.y * pt.y == c.eval_f(pt.x)))
    throw ConfigError("place label point is not on the curve: " + s);
  Place pl = place_of_point(c, pt);
  if (pl.deg != deg) throw ConfigError("place label degree is not the orbit size: " + s);
  return pl;
}

int Divisor::multiplicity(const Place& p) const {
  auto it = mult.find(p);
  return it == mult.end() ? 0 : it->second;
}

void Divisor::add(const Place& p, int m) {
  if (m == 0) return;
  auto [it, inserted] = mult.try_emplace(p, 0);
  it->second += m;
  if (it->second == 0) mult.erase(it);
}

int Divisor::degree() const {
  int d = 0;
  for (auto& [p, m] : mult) d += p.deg * m;
  return d;
}

bool Divisor::is_effective() const {
  for (auto& [p, m] : mult)
    if (m < 0) return false;
  return true;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
  Divisor r = a;
  for (auto& [p, m] : b.mult) r.add(p, m);
  return r;
}

Divisor operator-(const Divisor& a) {
  Divisor r;
  for (auto& [p, m] : a.mult) r.mult[p] = -m;
  return r;
}

Divisor operator-(const Divisor& a, const Divisor& b) { return a + (-b); }

Divisor operator*(int n, const Divisor& a) {
  Divisor r;
  if (n == 0) return r;
  for (auto& [p, m] : a.mult) r.mult[p] = n * m;
  return r;
}

std::string divisor_to_string(const Divisor& d) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto& [p, m] : d.mult) {
    if (!first) os << ",";
    first = false;
    os << place_label(p) << "^" << m;
  }
  os << "}";
  return os.str();
}

Divisor divisor_from_string(const Curve& c, const std::string& s) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw ConfigError("bad divisor encoding: " + s);
  Divisor d;
  std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) return d;
  std::istringstream is(body);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto caret = item.rfind('^');
    if (caret == std::string::npos) throw ConfigError("divisor term needs ^mult: " + item);
    int m = 0;
    try {
      m = std::stoi(item.substr(caret + 1));
    } catch (...) {
      throw ConfigError("bad multiplicity in divisor term: " + item);
    }
    d.add(place_from_label(c, item.substr(0, caret)), m);
  }
  return d;
}

std::vector<Point> points_over(const Curve& c, int d) {
  BIQORB_CHECK(d >= 1 && d <= kMaxExtDeg, "points_over degree out of range");
  long total = ipow(c.q, d);
  if (total > kMaxFieldScan) throw CapacityError("field too large for point scan");
  std::vector<Point> pts;
  pts.push_back(Point::at_infinity());
  std::vector<long> sqrt_of(total, -1);
  for (long i = 0; i < total; ++i) {
    FqExt s = FqExt::from_index(c.q, d, i);
    sqrt_of[(s * s).index()] = i;
  }
  for (long i = 0; i < total; ++i) {
    FqExt x = FqExt::from_index(c.q, d, i);
    FqExt z = c.eval_f(x);
    if (z.is_zero()) {
      pts.push_back(Point::affine(x, FqExt(c.q, d)));
      continue;
    }
    long s = sqrt_of[z.index()];
    if (s < 0) continue;
    FqExt y = FqExt::from_index(c.q, d, s);
    pts.push_back(Point::affine(x, y));
    pts.push_back(Point::affine(x, -y));
  }
  double bound = 2.0 * std::sqrt(static_cast<double>(total));
  BIQORB_CHECK(std::llabs(static_cast<long long>(pts.size()) - (total + 1)) <=
                   static_cast<long long>(bound) + 1,
               "point count violates the Hasse bound");
  return pts;
}

std::vector<Place> places_up_to(const Curve& c, int n) {
  BIQORB_CHECK(n >= 1 && n <= kMaxExtDeg, "places_up_to degree out of range");
  std::vector<Place> places;
  places.push_back(place_at_infinity());
  for (int d = 1; d <= n; ++d) {
    std::vector<Place> of_deg;
    for (const Point& pt : points_over(c, d)) {
      if (pt.infinity) continue;
      // A point over F_{q^d} generates a degree-d place iff its orbit has
      // size exactly d; smaller orbits already appeared at lower levels.
      Point cur = frobenius_point(pt);
      int orbit = 1;
      while (!(cur == pt)) {
        cur = frobenius_point(cur);
        ++orbit;
      }
      if (orbit != d) continue;
      of_deg.push_back(place_of_point(c, pt));
    }
    std::sort(of_deg.begin(), of_deg.end());
    of_deg.erase(std::unique(of_deg.begin(), of_deg.end()), of_deg.end());
    places.insert(places.end(), of_deg.begin(), of_deg.end());
  }
  // Zeta consistency: sum over d | m of d * a_d = #points over F_{q^m}.
  for (int m = 1; m <= n; ++m) {
    long long lhs = 0;
    for (const Place& p : places)
      if (m % p.deg == 0) lhs += p.deg;
    BIQORB_CHECK(lhs == static_cast<long long>(points_over(c, m).size()),
                 "place counts disagree with point counts");
  }
  return places;
}

std::vector<Divisor> effective_divisors(const Curve& c, int n) {
  BIQORB_CHECK(n >= 0, "negative divisor degree");
  std::vector<Divisor> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<Place> places = places_up_to(c, n);
  Divisor current;
  std::function<void(size_t, int)> rec = [&](size_t idx, int remaining) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    if (idx >= places.size()) return;
    const Place& p = places[idx];
    int maxm = remaining / p.deg;
    for (int m = maxm; m >= 1; --m) {
      current.add(p, m);
      rec(idx + 1, remaining - m * p.deg);
      current.add(p, -m);
    }
    rec(idx + 1, remaining);
    if (out.size() > static_cast<size_t>(kMaxSolutionEnum))
      throw CapacityError("too many effective divisors");
  };
  rec(0, n);
  std::sort(out.begin(), out.end(),
            [](const Divisor& a, const Divisor& b) { return a.mult < b.mult; });
  return out;
}

std::vector<std::pair<Place, int>> places_over_irreducible(const Curve& c, const Poly& pi) {
  BIQORB_CHECK(pi.degree() >= 1 && pi.lead() == Fq(c.q, 1), "need monic irreducible");
  int m = pi.degree();
  if (m > kMaxExtDeg) throw CapacityError("place degree beyond session bound");
  auto roots = poly_roots_in(pi, m);
  BIQORB_CHECK(static_cast<int>(roots.size()) == m, "irreducible has wrong root count");
  FqExt x0 = roots.front();
  FqExt fx = c.eval_f(x0);
  std::vector<std::pair<Place, int>> result;
  if (fx.is_zero()) {
    // x0 is a 2-torsion root, necessarily rational; pi = x - e_i and v = 2.
    BIQORB_CHECK(m == 1, "2-torsion root must be rational");
    result.emplace_back(place_of_point(c, Point::affine(x0, FqExt(c.q, 1))), 2);
    return result;
  }
  if (legendre(fx) == 1) {
    FqExt y0 = *ext_sqrt(fx);
    Place p1 = place_of_point(c, Point::affine(x0, y0));
    Place p2 = place_of_point(c, Point::affine(x0, -y0));
    BIQORB_CHECK(!(p1 == p2), "split places over irreducible must differ");
    if (p2 < p1) std::swap(p1, p2);
    result.emplace_back(p1, 1);
    result.emplace_back(p2, 1);
    return result;
  }
  int big = 2 * m;
  if (big > kMaxExtDeg) throw CapacityError("inert place degree beyond session bound");
  FqExt lifted = embed(x0, big);
  auto y0 = ext_sqrt(c.eval_f(lifted));
  BIQORB_CHECK(y0.has_value(), "sqrt must exist in the quadratic extension");
  Place p = place_of_point(c, Point::affine(lifted, *y0));
  BIQORB_CHECK(p.deg == big, "inert place has doubled degree");
  result.emplace_back(p, 1);
  return result;
}

Divisor divisor_of_poly(const Curve& c, const Poly& r) {
  BIQORB_CHECK(!r.is_zero(), "divisor of the zero polynomial");
  Divisor d;
  if (r.degree() == 0) return d;
  auto fz = factor(r);
  for (auto& [pi, e] : fz.factors)
    for (auto& [pl, v] : places_over_irreducible(c, pi)) d.add(pl, v * e);
  d.add(place_at_infinity(), -2 * r.degree());
  BIQORB_CHECK(d.degree() == 0, "principal divisor must have degree zero");
  return d;
}

Divisor divisor_of_coordinate_function(const Curve& c, CoordFunctionKind kind, const Fq& c0) {
  if (kind == CoordFunctionKind::XMinusConst) {
    Poly p(c.q, {-static_cast<long long>(c0.v), 1});
    return divisor_of_poly(c, p);
  }
  // div(y) = (T1) + (T2) + (T3) - 3(inf)
  Divisor d;
  for (const Fq& e : {c.e1, c.e2, c.e3})
    d.add(place_of_point(c, Point::affine(FqExt::from_base(e, 1), FqExt(c.q, 1))), 1);
  d.add(place_at_infinity(), -3);
  return d;
}

}  // namespace biqorb
