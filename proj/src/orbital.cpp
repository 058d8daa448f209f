#include "biqorb/orbital.hpp"

#include "biqorb/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace biqorb {

namespace {

void require_admissible(const TowerConfig& t, const Divisor& d) {
  if (!d.is_effective()) throw ConfigError("D must be effective");
  for (auto& [pl, m] : d.mult)
    if (t.in_sigma(pl))
      throw ConfigError("D must be an effective divisor on X - Sigma; it meets " +
                        place_label(pl));
}

Place torsion3_place(const TowerConfig& t) {
  return place_of_point(t.curve, Point::affine(FqExt::from_base(t.curve.e3, 1),
                                               FqExt(t.curve.q, 1)));
}

FuncElem half(const Curve& c) { return FuncElem::from_const(c, inverse(Fq(c.q, 2))); }

}  // namespace

std::vector<InvariantPoint> enumerate_invariants(const TowerConfig& t, const Divisor& d) {
  require_admissible(t, d);
  std::vector<InvariantPoint> out;
  if (2 * d.degree() < t.N + 1) return out;  // degree obstruction: empty set
  const Curve& c = t.curve;
  const int q = c.q;

  // v ranges over L(D + T3 - inf); the defining conditions are the value
  // equations (1/2 + v beta)(w'_x) = 0 at each level place.
  Divisor gv = d;
  gv.add(torsion3_place(t), 1);
  gv.add(place_at_infinity(), -1);
  std::vector<FuncElem> basis = rr_space_x(c, gv);
  int ncols = static_cast<int>(basis.size());
  if (ncols == 0) return out;

  std::vector<std::vector<Fq>> rows;
  std::vector<Fq> rhs;
  Fq minus_half = -inverse(Fq(q, 2));
  for (auto& x : t.sigma()) {
    CoverPlace wp = t.wprime(x);
    std::vector<FqExt> values;
    values.reserve(static_cast<size_t>(ncols));
    for (auto& b : basis) {
      CoverElem vb{FuncElem::zero(c), b};
      LaurentSeries s = expand_at(t, vb, wp, 1);
      BIQORB_CHECK(s.exact_zero || s.valuation().value_or(0) >= 0,
                   "candidate has a pole at a level place");
      values.push_back(s.at(0));
    }
    for (int comp = 0; comp < x.deg; ++comp) {
      std::vector<Fq> row(static_cast<size_t>(ncols), Fq(q, 0));
      for (int j = 0; j < ncols; ++j) row[static_cast<size_t>(j)] = values[static_cast<size_t>(j)].coord(comp);
      rows.push_back(std::move(row));
      rhs.push_back(comp == 0 ? minus_half : Fq(q, 0));
    }
  }

  MatX<Fq> A = MatX<Fq>(static_cast<int>(rows.size()), ncols);
  VecX<Fq> bvec(static_cast<int>(rows.size()));
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < ncols; ++j) A(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    bvec(i) = rhs[static_cast<size_t>(i)];
  }
  auto sol = solve_affine(A, bvec, Fq(q, 0), Fq(q, 1));
  if (!sol.consistent) return out;

  long count = ipow(q, static_cast<int>(sol.kernel.size()));
  if (count > kMaxSolutionEnum) throw CapacityError("invariant set too large to enumerate");
  for (long idx = 0; idx < count; ++idx) {
    VecX<Fq> lambda = sol.particular;
    long rem = idx;
    for (auto& kv : sol.kernel) {
      int digit = static_cast<int>(rem % q);
      rem /= q;
      if (digit != 0)
        for (int j = 0; j < ncols; ++j) lambda(j) = lambda(j) + Fq(q, digit) * kv(j);
    }
    FuncElem v = FuncElem::zero(c);
    for (int j = 0; j < ncols; ++j) {
      if (lambda(j).is_zero()) continue;
      v = v + basis[static_cast<size_t>(j)] * FuncElem::from_const(c, lambda(j));
    }
    CoverElem a{half(c), v};
    BIQORB_CHECK(trace_k3(a) == FuncElem::one(c), "invariant has trace != 1");
    CoverDivisor b = divisor_of(t, a) + pullback_divisor(t, d) - t.dprime3;
    BIQORB_CHECK(b.is_effective(), "enumerated invariant fails the divisor condition");
    BIQORB_CHECK(b.degree() == 2 * d.degree() - t.N, "invariant divisor has wrong degree");
    out.push_back(InvariantPoint{a, b});
  }
  std::sort(out.begin(), out.end(), [](const InvariantPoint& l, const InvariantPoint& r) {
    return cover_to_string(l.a) < cover_to_string(r.a);
  });
  return out;
}

SpectralPoly orbital_poly(const TowerConfig& t, const Divisor& d, const InvariantPoint& ip) {
  require_admissible(t, d);
  // product over places of B of (sum_{j <= m_w} eta(w)^j u^{2 j deg w}),
  // shifted by u^{-2d}
  SpectralPoly acc = SpectralPoly::monomial(Rat(1), 0);
  for (auto& [w, m] : ip.b.mult) {
    BIQORB_CHECK(m >= 0, "B must be effective");
    SpectralPoly factor;
    int eta = eta_value(t, w);
    Rat sign(1);
    for (int j = 0; j <= m; ++j) {
      factor.add_term(2 * j * w.degree(), sign);
      sign *= Rat(eta);
    }
    acc = acc * factor;
  }
  return acc.shifted(-2 * d.degree());
}

SpectralPoly orbital_poly_any(const TowerConfig& t, const Divisor& d, const CoverElem& a) {
  require_admissible(t, d);
  BIQORB_CHECK(trace_k3(a) == FuncElem::one(t.curve), "invariant must have trace 1");
  CoverDivisor b = divisor_of(t, a) + pullback_divisor(t, d) - t.dprime3;
  if (!b.is_effective()) return SpectralPoly::zero();
  return orbital_poly(t, d, InvariantPoint{a, b});
}

SpectralPoly orbital_sum(const TowerConfig& t, const Divisor& d,
                         const std::vector<InvariantPoint>& pts) {
  SpectralPoly acc;
  for (auto& ip : pts) acc = acc + orbital_poly(t, d, ip);
  return acc;
}

Rat orbital_derivative(const SpectralPoly& j, int n, int r) {
  BIQORB_CHECK(r >= 0, "derivative order must be nonnegative");
  return j.derivative_weight(n, r);
}

Rat orbital_derivative_direct(const TowerConfig& t, const Divisor& d, const InvariantPoint& ip,
                              int r) {
  // direct enumeration of ordered splittings B = E1 + E2 with weight
  // eta(E1) (deg E1 - deg E2)^r
  std::vector<std::pair<CoverPlace, int>> places(ip.b.mult.begin(), ip.b.mult.end());
  int degb = ip.b.degree();
  Rat total(0);
  std::function<void(size_t, int, int)> rec = [&](size_t idx, int deg1, int eta1) {
    if (idx == places.size()) {
      int base = 2 * deg1 - degb;  // deg E1 - deg E2
      total += Rat(eta1) * rat_pow(Rat(base), r);
      return;
    }
    auto& [w, m] = places[idx];
    int eta = eta_value(t, w);
    int sign = 1;
    for (int j = 0; j <= m; ++j) {
      rec(idx + 1, deg1 + j * w.degree(), eta1 * sign);
      sign *= eta;
    }
  };
  rec(0, 0, 1);
  return total;
}

bool functional_equation_holds(const TowerConfig& t, const InvariantPoint& ip,
                               const SpectralPoly& j) {
  SpectralPoly shifted = j.shifted(t.N);
  int etab = eta_value(t, ip.b);
  SpectralPoly lhs = shifted.reciprocal();
  SpectralPoly rhs = etab == 1 ? shifted : SpectralPoly::zero() - shifted;
  return lhs == rhs;
}

TracePairMap map_of_invariant(const TowerConfig& t, const CoverElem& a) {
  BIQORB_CHECK(trace_k3(a) == FuncElem::one(t.curve), "invariant must have trace 1");
  return TracePairMap{cover_one(t), cover_mul(t, cover_beta(t), sigma3(a))};
}

CoverElem invariant_of_map(const TowerConfig& t, const TracePairMap& m) {
  CoverElem num = cover_mul(t, m.alpha1, sigma3(m.alpha2));
  CoverElem det = num - cover_mul(t, sigma3(m.alpha1), m.alpha2);
  BIQORB_CHECK(!det.is_zero(), "map is not regular: determinant form vanishes");
  return cover_mul(t, num, cover_inverse(t, det));
}

// ---------------------------------------------------------------------------
// Lattice-counting oracle
// ---------------------------------------------------------------------------

LatticeCount lattice_count(const TowerConfig& t, const Divisor& d, const CoverElem& a) {
  require_admissible(t, d);
  BIQORB_CHECK(trace_k3(a) == FuncElem::one(t.curve), "invariant must have trace 1");
  TracePairMap gamma = map_of_invariant(t, a);
  // determinant form alpha1 sigma(alpha2) - sigma(alpha1) alpha2
  CoverElem delta = cover_mul(t, gamma.alpha1, sigma3(gamma.alpha2)) -
                    cover_mul(t, sigma3(gamma.alpha1), gamma.alpha2);
  BIQORB_CHECK(!delta.is_zero(), "map of invariant is not regular");

  CoverDivisor div_a2 = divisor_of(t, gamma.alpha2);
  CoverDivisor div_delta = divisor_of(t, delta);
  // sigma-antiinvariance pins equal valuations on the two split labels
  for (auto& [w, m] : div_delta.mult)
    if (w.is_split()) {
      CoverPlace other = w;
      other.tag = (w.tag == CoverTag::Split0) ? CoverTag::Split1 : CoverTag::Split0;
      BIQORB_CHECK(div_delta.multiplicity(other) == m,
                   "determinant form valuations differ across split labels");
    }

  // support set: every base place where any datum is nonzero
  std::set<Place> support;
  for (auto& [w, m] : div_a2.mult) support.insert(w.base);
  for (auto& [w, m] : div_delta.mult) support.insert(w.base);
  for (auto& [x, m] : d.mult) support.insert(x);
  for (auto& x : t.sigma()) support.insert(x);

  int maxval = 0;
  for (auto& [w, m] : div_a2.mult) maxval = std::max(maxval, std::abs(m));
  for (auto& [w, m] : div_delta.mult) maxval = std::max(maxval, std::abs(m));
  for (auto& [x, m] : d.mult) maxval = std::max(maxval, std::abs(m));
  const int window = 2 * d.degree() + t.N + maxval;

  LatticeCount result;
  result.poly = SpectralPoly::monomial(Rat(1), 0);
  result.triples = 1;

  for (const Place& x : support) {
    auto ws = places_over(t, x);
    int cx = div_delta.multiplicity(ws[0]);
    int dx = d.multiplicity(x);
    bool level = t.in_sigma(x);
    CoverPlace wp{};  // the chosen w'_x when x is a level place
    if (level) wp = t.wprime(x);

    SpectralPoly local;
    long long local_count = 0;
    int nw = static_cast<int>(ws.size());
    std::vector<int> e(static_cast<size_t>(nw), -window);
    bool boundary_hit = false;
    while (true) {
      // determinant condition fixes the E1 multiplicity at x
      int nm = 0;
      for (int i = 0; i < nw; ++i) nm += (nw == 1 ? 2 : 1) * e[static_cast<size_t>(i)];
      int e1 = nm + cx - dx;
      bool ok = true;
      for (int i = 0; i < nw && ok; ++i) {
        // alpha1 = 1 everywhere defined into O(-E1)
        if (e[static_cast<size_t>(i)] < e1) ok = false;
      }
      for (int i = 0; i < nw && ok; ++i) {
        int va2 = div_a2.multiplicity(ws[static_cast<size_t>(i)]);
        int target = 0;
        if (level && !(ws[static_cast<size_t>(i)] == wp)) target = 1;  // Iwahori deepening at w_x
        if (va2 + e[static_cast<size_t>(i)] < target) ok = false;
      }
      if (ok) {
        for (int i = 0; i < nw; ++i)
          if (std::abs(e[static_cast<size_t>(i)]) == window) boundary_hit = true;
        Rat w(1);
        for (int i = 0; i < nw; ++i) {
          int ev = eta_value(t, ws[static_cast<size_t>(i)]);
          int m = e[static_cast<size_t>(i)];
          if (ev == -1 && (m % 2 != 0)) w = -w;
        }
        local.add_term(-2 * e1 * x.deg, w);
        ++local_count;
      }
      // advance the tuple
      int pos = 0;
      while (pos < nw) {
        if (e[static_cast<size_t>(pos)] < window) {
          ++e[static_cast<size_t>(pos)];
          break;
        }
        e[static_cast<size_t>(pos)] = -window;
        ++pos;
      }
      if (pos == nw) break;
    }
    if (boundary_hit)
      throw InternalError("lattice window exhausted at " + place_label(x) +
                          "; the bound derivation is violated");
    if (local_count == 0) return LatticeCount{};  // empty local set kills the product
    result.poly = result.poly * local;
    result.triples *= local_count;
  }
  return result;
}

}  // namespace biqorb
