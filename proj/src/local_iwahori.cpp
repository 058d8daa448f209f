#include "biqorb/local_iwahori.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace biqorb {

LocalElem::LocalElem(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
  BIQORB_CHECK(!den.is_zero(), "local element with zero denominator");
  BIQORB_CHECK(num.q == den.q, "mixed fields in local element");
  Poly g = poly_gcd(num, den);
  if (g.degree() >= 1) {
    num = poly_divexact(num, g);
    den = poly_divexact(den, g);
  }
  if (!den.is_zero() && !(den.lead() == Fq(den.q, 1))) {
    Fq il = inverse(den.lead());
    num = il * num;
    den = il * den;
  }
  if (num.is_zero()) den = Poly(den.q, {1});
}

LocalElem LocalElem::zero(int q) { return LocalElem(Poly(q), Poly(q, {1})); }
LocalElem LocalElem::one(int q) { return LocalElem(Poly(q, {1}), Poly(q, {1})); }

LocalElem LocalElem::uniformizer_power(int q, int k) {
  std::vector<long long> cs(static_cast<size_t>(std::abs(k)) + 1, 0);
  cs.back() = 1;
  Poly pk(q, cs);
  if (k >= 0) return LocalElem(pk, Poly(q, {1}));
  return LocalElem(Poly(q, {1}), pk);
}

LocalElem LocalElem::from_const(const Fq& a) { return LocalElem(poly_const(a), Poly(a.q, {1})); }

namespace {
int poly_ord(const Poly& p) {
  BIQORB_CHECK(!p.is_zero(), "order of zero polynomial");
  for (size_t i = 0; i < p.c.size(); ++i)
    if (p.c[i] != 0) return static_cast<int>(i);
  throw InternalError("unreachable");
}
}  // namespace

int LocalElem::valuation() const {
  BIQORB_CHECK(!is_zero(), "valuation of zero local element");
  return poly_ord(num) - poly_ord(den);
}

bool operator==(const LocalElem& a, const LocalElem& b) {
  return a.num == b.num && a.den == b.den;
}

LocalElem operator+(const LocalElem& a, const LocalElem& b) {
  return LocalElem(a.num * b.den + b.num * a.den, a.den * b.den);
}
LocalElem operator-(const LocalElem& a) { return LocalElem(-a.num, a.den); }
LocalElem operator-(const LocalElem& a, const LocalElem& b) { return a + (-b); }
LocalElem operator*(const LocalElem& a, const LocalElem& b) {
  return LocalElem(a.num * b.num, a.den * b.den);
}
LocalElem inverse(const LocalElem& a) {
  BIQORB_CHECK(!a.is_zero(), "inverse of zero local element");
  return LocalElem(a.den, a.num);
}

std::pair<int, int> elementary_divisor_valuations(const LocalLattice& m) {
  LocalElem det = m.a11 * m.a22 - m.a12 * m.a21;
  if (det.is_zero()) throw ConfigError("singular lattice matrix rejected");
  int vmin = std::numeric_limits<int>::max();
  for (const LocalElem* e : {&m.a11, &m.a12, &m.a21, &m.a22})
    if (!e->is_zero()) vmin = std::min(vmin, e->valuation());
  // Smith form over the valuation ring: d1 = min entry valuation,
  // d1 + d2 = valuation of the determinant.
  int v2 = det.valuation() - vmin;
  BIQORB_CHECK(v2 >= vmin, "elementary divisor ordering violated");
  return {vmin, v2};
}

namespace {
LocalLattice mat_mul(const LocalLattice& a, const LocalLattice& b) {
  return LocalLattice{a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
                      a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

LocalLattice mat_inverse(const LocalLattice& m) {
  LocalElem det = m.a11 * m.a22 - m.a12 * m.a21;
  BIQORB_CHECK(!det.is_zero(), "inverse of singular matrix");
  LocalElem id = inverse(det);
  return LocalLattice{m.a22 * id, -(m.a12 * id), -(m.a21 * id), m.a11 * id};
}
}  // namespace

ScalingWitness lattice_equal_up_to_scaling(const LocalLattice& l1, const LocalLattice& l2) {
  LocalLattice b = mat_mul(mat_inverse(l2), l1);
  auto [v1, v2] = elementary_divisor_valuations(b);
  ScalingWitness w;
  if (v1 == v2) {
    w.equal = true;
    w.alpha = -v1;
  }
  return w;
}

namespace {

// pi^alpha L1 = L2 for the specific alpha.
bool equal_with_scaling(const LocalLattice& l1, const LocalLattice& l2, int alpha) {
  LocalLattice b = mat_mul(mat_inverse(l2), l1);
  auto [v1, v2] = elementary_divisor_valuations(b);
  return v1 == v2 && v1 == -alpha;
}

}  // namespace

std::vector<OrbitSolution> iwahori_orbit_search(int q, int k0, int window, SearchMode mode) {
  validate_prime_q(q);
  BIQORB_CHECK(window >= std::abs(k0) + 3, "window must be at least |k0| + 3");
  const Fq halfq = inverse(Fq(q, 2));
  const LocalElem half = LocalElem::from_const(halfq);
  const LocalElem c = LocalElem::uniformizer_power(q, k0);
  const LocalElem zero = LocalElem::zero(q), one = LocalElem::one(q);

  // image of the lattice spanned by e, pi^l f under
  // (z_e, z_f) -> ((z_e + z_f)/2, c (z_e - z_f)/2)
  auto image_lattice = [&](int le, int lf) {
    LocalElem pe = LocalElem::uniformizer_power(q, le);
    LocalElem pf = LocalElem::uniformizer_power(q, lf);
    return LocalLattice{half * pe, half * pf, c * half * pe, -(c * half * pf)};
  };
  auto target_lattice = [&](int k) {
    return LocalLattice{one, zero, zero, LocalElem::uniformizer_power(q, k)};
  };

  std::vector<OrbitSolution> sols;
  for (int k = -window; k <= window; ++k) {
    for (int l = -window; l <= window; ++l) {
      ScalingWitness full = lattice_equal_up_to_scaling(image_lattice(0, l), target_lattice(k));
      // Iwahori deepening: which of e, f sits over the distinguished place is
      // not pinned down, so both orientations are admitted.
      auto sub_ok = [&](std::optional<int> alpha) {
        for (int o = 0; o < 2; ++o) {
          LocalLattice sub_img = (o == 0) ? image_lattice(0, l + 1) : image_lattice(1, l);
          LocalLattice sub_tgt = target_lattice(k + 1);
          if (alpha.has_value()) {
            if (equal_with_scaling(sub_img, sub_tgt, *alpha)) return true;
          } else {
            if (lattice_equal_up_to_scaling(sub_img, sub_tgt).equal) return true;
          }
        }
        return false;
      };
      bool accept = false;
      switch (mode) {
        case SearchMode::FullOnly:
          accept = full.equal;
          break;
        case SearchMode::SublatticeOnly:
          accept = sub_ok(std::nullopt);
          break;
        case SearchMode::Both:
          accept = full.equal && sub_ok(full.alpha);
          break;
      }
      if (accept) sols.push_back(OrbitSolution{k, l});
    }
  }
  return sols;
}

}  // namespace biqorb
