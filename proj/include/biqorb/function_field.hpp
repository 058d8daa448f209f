#pragma once

// The function field F = F_q(x)[y]/(y^2 - f) of the base curve, its
// quadratic extension by beta with beta^2 = x - e3 (the function field of
// the third cover), exact valuations and divisors of elements, and
// Riemann-Roch spaces computed by exact linear algebra over F_q.

#include "biqorb/characters.hpp"
#include "biqorb/curve.hpp"
#include "biqorb/series.hpp"

#include <string>
#include <vector>

namespace biqorb {

// (p(x) + s(x) y) / r(x), reduced: gcd(p, s, r) cancelled, r monic.
struct FuncElem {
  Curve curve;
  Poly p, s, r;

  FuncElem() = default;
  FuncElem(const Curve& c, Poly p_, Poly s_, Poly r_);
  static FuncElem zero(const Curve& c);
  static FuncElem one(const Curve& c);
  static FuncElem from_const(const Curve& c, const Fq& a);
  static FuncElem from_poly(const Curve& c, const Poly& p);
  static FuncElem coordinate_x(const Curve& c);
  static FuncElem coordinate_y(const Curve& c);

  bool is_zero() const { return p.is_zero() && s.is_zero(); }
  FuncElem conj_y() const;  // y -> -y

  friend bool operator==(const FuncElem& a, const FuncElem& b) = default;
};

FuncElem operator+(const FuncElem& a, const FuncElem& b);
FuncElem operator-(const FuncElem& a, const FuncElem& b);
FuncElem operator-(const FuncElem& a);
FuncElem operator*(const FuncElem& a, const FuncElem& b);
FuncElem inverse(const FuncElem& a);
FuncElem operator/(const FuncElem& a, const FuncElem& b);

std::string func_to_string(const FuncElem& a);  // "(p|s|r)"

// u + v beta over the tower's third cover.
struct CoverElem {
  FuncElem u, v;

  bool is_zero() const { return u.is_zero() && v.is_zero(); }
  friend bool operator==(const CoverElem& a, const CoverElem& b) = default;
};

CoverElem cover_zero(const TowerConfig& t);
CoverElem cover_one(const TowerConfig& t);
CoverElem cover_beta(const TowerConfig& t);
CoverElem cover_from_func(const FuncElem& u);
CoverElem operator+(const CoverElem& a, const CoverElem& b);
CoverElem operator-(const CoverElem& a, const CoverElem& b);
CoverElem operator-(const CoverElem& a);
CoverElem cover_mul(const TowerConfig& t, const CoverElem& a, const CoverElem& b);
CoverElem cover_inverse(const TowerConfig& t, const CoverElem& a);

CoverElem sigma3(const CoverElem& a);             // u - v beta
FuncElem trace_k3(const CoverElem& a);            // 2u
FuncElem norm_k3(const TowerConfig& t, const CoverElem& a);  // u^2 - v^2 (x - e3)

std::string cover_to_string(const CoverElem& a);  // "(p|s|r)+(p|s|r)b"

// Exact valuations via adaptive-precision expansion (the a-priori zero-order
// bound certifies termination).
int valuation(const FuncElem& a, const Place& p);
int valuation(const TowerConfig& t, const CoverElem& a, const CoverPlace& w);

// Laurent expansion of a at w covering all exponents < hi.
LaurentSeries expand_at(const TowerConfig& t, const CoverElem& a, const CoverPlace& w, int hi);

// Exact principal divisors (degree 0; asserted).
Divisor divisor_of(const FuncElem& a);
CoverDivisor divisor_of(const TowerConfig& t, const CoverElem& a);

// Riemann-Roch space L(G) on the base curve: all (p + s y)/h with
// div + G >= 0, by spanning monomials over the pole bound and imposing the
// finitely many local vanishing conditions as an exact F_q linear system.
std::vector<FuncElem> rr_space_x(const Curve& c, const Divisor& g);

struct RRSpace {
  CoverDivisor m;
  std::vector<CoverElem> basis;
  int dimension() const { return static_cast<int>(basis.size()); }
};

// L(M) on the third cover, via the sigma-split superspace
// L(G) + beta L(G + T3 - inf) for a dominating pullback divisor G.
RRSpace rr_space(const TowerConfig& t, const CoverDivisor& m);

bool rr_member(const TowerConfig& t, const CoverElem& a, const CoverDivisor& m);

}  // namespace biqorb
