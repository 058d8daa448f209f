#pragma once

// Exact arithmetic in F_q (q an odd prime), univariate polynomials over F_q,
// and the extension fields F_{q^d} for d <= 6 in a fixed polynomial basis.
//
// The degree-d modulus is the lexicographically first monic irreducible
// (coefficient vector (c_0,...,c_{d-1}) read as a base-q integer, smallest
// first), so element encodings are reproducible across runs.

#include "biqorb/common.hpp"

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace biqorb {

// ---------------------------------------------------------------------------
// Prime field
// ---------------------------------------------------------------------------

struct Fq {
  int16_t q = 0;
  int16_t v = 0;  // 0 <= v < q

  Fq() = default;
  Fq(int q_, long long v_) : q(static_cast<int16_t>(q_)) {
    long long m = v_ % q_;
    if (m < 0) m += q_;
    v = static_cast<int16_t>(m);
  }

  bool is_zero() const { return v == 0; }
  friend bool operator==(const Fq& a, const Fq& b) = default;
  auto operator<=>(const Fq&) const = default;
};

void require_same_field(const Fq& a, const Fq& b);

Fq operator+(const Fq& a, const Fq& b);
Fq operator-(const Fq& a, const Fq& b);
Fq operator*(const Fq& a, const Fq& b);
Fq operator-(const Fq& a);
Fq inverse(const Fq& a);
Fq operator/(const Fq& a, const Fq& b);
Fq fq_pow(const Fq& a, long long e);

// Quadratic residue symbol on the prime field: 0, +1 or -1.
int legendre(const Fq& a);

// Square root in F_q, if one exists.
std::optional<Fq> fq_sqrt(const Fq& a);

void validate_prime_q(int q);

// ---------------------------------------------------------------------------
// Polynomials over F_q
// ---------------------------------------------------------------------------

// Coefficients low-to-high, trailing zeros trimmed. The zero polynomial has
// empty coefficient vector and degree -1.
struct Poly {
  int16_t q = 0;
  std::vector<int16_t> c;

  Poly() = default;
  explicit Poly(int q_) : q(static_cast<int16_t>(q_)) {}
  Poly(int q_, std::vector<long long> coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Fq coeff(int i) const;
  Fq lead() const;
  void trim();

  friend bool operator==(const Poly& a, const Poly& b) = default;
};

Poly poly_x(int q);
Poly poly_const(const Fq& a);
Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Fq& a, const Poly& b);
Poly operator-(const Poly& a);
Poly poly_mod(const Poly& a, const Poly& m);
Poly poly_divexact(const Poly& a, const Poly& b);
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic gcd, or zero
Poly poly_make_monic(const Poly& a);
Poly poly_pow_mod(const Poly& a, long long e, const Poly& m);
Poly poly_derivative(const Poly& a);
bool poly_is_irreducible(const Poly& p);
std::string poly_to_string(const Poly& p);  // "c0.c1...." low-to-high, "0" if zero

// Factorization into monic irreducibles with multiplicities; the leading
// unit is returned separately so the product reproduces the input exactly.
struct PolyFactorization {
  Fq unit;
  std::vector<std::pair<Poly, int>> factors;  // sorted canonically
};
PolyFactorization factor(const Poly& p);

// ---------------------------------------------------------------------------
// Extension fields F_{q^d}
// ---------------------------------------------------------------------------

struct FqExt {
  int16_t q = 0;
  int16_t deg = 0;                       // ambient field degree d
  std::array<int16_t, kMaxExtDeg> c{};  // coords in the power basis, c[i] for g^i

  FqExt() = default;
  FqExt(int q_, int deg_);
  static FqExt from_base(const Fq& a, int deg);
  static FqExt generator(int q, int deg);

  Fq coord(int i) const { return Fq(q, c[i]); }
  bool is_zero() const;
  // Dense index in [0, q^deg): coords as base-q digits, c[0] least significant.
  long index() const;
  static FqExt from_index(int q, int deg, long idx);

  friend bool operator==(const FqExt& a, const FqExt& b) = default;
  auto operator<=>(const FqExt&) const = default;
};

// Fixed irreducible modulus of degree d over F_q (cached, deterministic).
const Poly& ext_modulus(int q, int d);

FqExt operator+(const FqExt& a, const FqExt& b);
FqExt operator-(const FqExt& a, const FqExt& b);
FqExt operator*(const FqExt& a, const FqExt& b);
FqExt operator-(const FqExt& a);
FqExt inverse(const FqExt& a);
FqExt operator/(const FqExt& a, const FqExt& b);
FqExt ext_pow(const FqExt& a, long long e);
FqExt frobenius(const FqExt& a);           // a -> a^q
FqExt frobenius_iter(const FqExt& a, int k);

// Size of the Frobenius orbit of a (the degree of its minimal subfield).
int frobenius_orbit_size(const FqExt& a);

int legendre(const FqExt& a);              // symbol in the ambient F_{q^d}
std::optional<FqExt> ext_sqrt(const FqExt& a);

Fq norm_to_base(const FqExt& a);
Fq trace_to_base(const FqExt& a);

// Minimal polynomial over F_q (degree = Frobenius orbit size).
Poly minimal_polynomial(const FqExt& a);

// Compatible embedding F_{q^a} -> F_{q^b} for a | b, realized by mapping the
// degree-a generator to the lexicographically least root of its modulus.
FqExt embed(const FqExt& x, int target_deg);

// Evaluate p at a point of F_{q^d}.
FqExt poly_eval(const Poly& p, const FqExt& x);
Fq poly_eval(const Poly& p, const Fq& x);

// Roots of p lying in F_{q^d} (exhaustive scan; capacity-guarded).
std::vector<FqExt> poly_roots_in(const Poly& p, int d);

std::string ext_to_string(const FqExt& a);               // "c0.c1..." low-to-high
FqExt ext_from_string(int q, const std::string& s);      // inverse of the above

}  // namespace biqorb
