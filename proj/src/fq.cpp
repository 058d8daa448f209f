#include "biqorb/fq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace biqorb {

// ---------------------------------------------------------------------------
// Prime field
// ---------------------------------------------------------------------------

void validate_prime_q(int q) {
  static const int allowed[] = {3, 5, 7, 11, 13};
  for (int p : allowed)
    if (q == p) return;
  throw ConfigError("q must be an odd prime <= " + std::to_string(kMaxQ) +
                    ", got " + std::to_string(q));
}

void require_same_field(const Fq& a, const Fq& b) {
  BIQORB_CHECK(a.q == b.q, "mixed prime fields");
}

Fq operator+(const Fq& a, const Fq& b) {
  require_same_field(a, b);
  return Fq(a.q, a.v + b.v);
}
Fq operator-(const Fq& a, const Fq& b) {
  require_same_field(a, b);
  return Fq(a.q, a.v - b.v);
}
Fq operator*(const Fq& a, const Fq& b) {
  require_same_field(a, b);
  return Fq(a.q, static_cast<long long>(a.v) * b.v);
}
Fq operator-(const Fq& a) { return Fq(a.q, -a.v); }

Fq fq_pow(const Fq& a, long long e) {
  BIQORB_CHECK(e >= 0, "fq_pow: negative exponent");
  Fq acc(a.q, 1), base = a;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Fq inverse(const Fq& a) {
  BIQORB_CHECK(!a.is_zero(), "division by zero in F_q");
  return fq_pow(a, a.q - 2);
}
Fq operator/(const Fq& a, const Fq& b) { return a * inverse(b); }

int legendre(const Fq& a) {
  if (a.is_zero()) return 0;
  Fq s = fq_pow(a, (a.q - 1) / 2);
  return s.v == 1 ? 1 : -1;
}

std::optional<Fq> fq_sqrt(const Fq& a) {
  if (a.is_zero()) return Fq(a.q, 0);
  for (int w = 1; w < a.q; ++w) {
    Fq c(a.q, w);
    if (c * c == a) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

Poly::Poly(int q_, std::vector<long long> coeffs) : q(static_cast<int16_t>(q_)) {
  c.reserve(coeffs.size());
  for (long long x : coeffs) {
    long long m = x % q_;
    if (m < 0) m += q_;
    c.push_back(static_cast<int16_t>(m));
  }
  trim();
}

void Poly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Fq Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c.size())) return Fq(q, 0);
  return Fq(q, c[i]);
}

Fq Poly::lead() const {
  BIQORB_CHECK(!is_zero(), "lead of zero polynomial");
  return Fq(q, c.back());
}

Poly poly_x(int q) { return Poly(q, {0, 1}); }

Poly poly_const(const Fq& a) {
  Poly p(a.q);
  if (!a.is_zero()) p.c = {a.v};
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  BIQORB_CHECK(a.q == b.q, "mixed fields in poly add");
  Poly r(a.q);
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) {
    int s = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
    r.c[i] = static_cast<int16_t>(s % a.q);
  }
  r.trim();
  return r;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& x : r.c) x = static_cast<int16_t>((a.q - x) % a.q);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  BIQORB_CHECK(a.q == b.q, "mixed fields in poly mul");
  Poly r(a.q);
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      long long s = r.c[i + j] + static_cast<long long>(a.c[i]) * b.c[j];
      r.c[i + j] = static_cast<int16_t>(s % a.q);
    }
  }
  r.trim();
  return r;
}

Poly operator*(const Fq& a, const Poly& b) { return poly_const(a) * b; }

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  BIQORB_CHECK(!b.is_zero(), "poly division by zero");
  Poly rem = a, quot(a.q);
  if (a.degree() >= b.degree())
    quot.c.assign(a.degree() - b.degree() + 1, 0);
  Fq ilead = inverse(b.lead());
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int k = rem.degree() - b.degree();
    Fq f = rem.lead() * ilead;
    quot.c[k] = f.v;
    for (int i = 0; i <= b.degree(); ++i) {
      Fq nv = rem.coeff(i + k) - f * b.coeff(i);
      rem.c[i + k] = nv.v;
    }
    rem.trim();
  }
  quot.trim();
  return {quot, rem};
}

Poly poly_mod(const Poly& a, const Poly& m) { return poly_divmod(a, m).second; }

Poly poly_divexact(const Poly& a, const Poly& b) {
  auto [q, r] = poly_divmod(a, b);
  BIQORB_CHECK(r.is_zero(), "poly_divexact: nonzero remainder");
  return q;
}

Poly poly_make_monic(const Poly& a) {
  if (a.is_zero()) return a;
  return inverse(a.lead()) * a;
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return poly_make_monic(a);
}

Poly poly_pow_mod(const Poly& a, long long e, const Poly& m) {
  Poly acc = poly_const(Fq(a.q, 1)), base = poly_mod(a, m);
  while (e > 0) {
    if (e & 1) acc = poly_mod(acc * base, m);
    base = poly_mod(base * base, m);
    e >>= 1;
  }
  return acc;
}

Poly poly_derivative(const Poly& a) {
  Poly r(a.q);
  if (a.degree() < 1) return r;
  r.c.resize(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i)
    r.c[i - 1] = static_cast<int16_t>((static_cast<long long>(i) * a.c[i]) % a.q);
  r.trim();
  return r;
}

bool poly_is_irreducible(const Poly& p) {
  int d = p.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  const Poly x = poly_x(p.q);
  // x^{q^d} == x mod p, and gcd(x^{q^{d/l}} - x, p) = 1 for primes l | d.
  Poly xq = poly_pow_mod(x, ipow(p.q, d), p);
  if (!(xq - poly_mod(x, p)).is_zero()) return false;
  for (int l = 2; l <= d; ++l) {
    if (d % l != 0) continue;
    bool prime = true;
    for (int t = 2; t * t <= l; ++t)
      if (l % t == 0) prime = false;
    if (!prime) continue;
    Poly g = poly_gcd(poly_pow_mod(x, ipow(p.q, d / l), p) - poly_mod(x, p), p);
    if (g.degree() != 0) return false;
  }
  return true;
}

std::string poly_to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < p.c.size(); ++i) {
    if (i) os << '.';
    os << p.c[i];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Extension field context (modulus / sqrt tables / embeddings), cached per
// (q, d). Built once under a lock, read-only afterwards.
// ---------------------------------------------------------------------------

namespace {

struct ExtContext {
  Poly modulus;
  std::vector<long> sqrt_of;  // dense index -> index of a sqrt, or -1
};

std::map<std::pair<int, int>, ExtContext>& ext_registry() {
  static std::map<std::pair<int, int>, ExtContext> reg;
  return reg;
}

std::recursive_mutex& ext_mutex() {
  static std::recursive_mutex m;
  return m;
}

Poly find_modulus(int q, int d) {
  if (d == 1) return poly_x(q);  // unused placeholder for degree 1
  long total = ipow(q, d);
  for (long n = 0; n < total; ++n) {
    std::vector<long long> coeffs(d + 1, 0);
    long m = n;
    for (int i = 0; i < d; ++i) {
      coeffs[i] = m % q;
      m /= q;
    }
    coeffs[d] = 1;
    Poly p(q, coeffs);
    if (poly_is_irreducible(p)) return p;
  }
  throw InternalError("no irreducible modulus found");
}

const ExtContext& ext_context(int q, int d) {
  validate_prime_q(q);
  BIQORB_CHECK(d >= 1 && d <= kMaxExtDeg, "extension degree out of range");
  std::lock_guard<std::recursive_mutex> lock(ext_mutex());
  auto key = std::make_pair(q, d);
  auto it = ext_registry().find(key);
  if (it != ext_registry().end()) return it->second;
  ExtContext ctx;
  ctx.modulus = find_modulus(q, d);
  ext_registry()[key] = std::move(ctx);
  return ext_registry()[key];
}

}  // namespace

const Poly& ext_modulus(int q, int d) { return ext_context(q, d).modulus; }

FqExt::FqExt(int q_, int deg_) : q(static_cast<int16_t>(q_)), deg(static_cast<int16_t>(deg_)) {
  BIQORB_CHECK(deg_ >= 1 && deg_ <= kMaxExtDeg, "extension degree out of range");
}

FqExt FqExt::from_base(const Fq& a, int deg) {
  FqExt r(a.q, deg);
  r.c[0] = a.v;
  return r;
}

FqExt FqExt::generator(int q, int deg) {
  BIQORB_CHECK(deg >= 2, "generator needs degree >= 2");
  FqExt r(q, deg);
  r.c[1] = 1;
  return r;
}

bool FqExt::is_zero() const {
  for (int i = 0; i < deg; ++i)
    if (c[i] != 0) return false;
  return true;
}

long FqExt::index() const {
  long idx = 0;
  for (int i = deg - 1; i >= 0; --i) idx = idx * q + c[i];
  return idx;
}

FqExt FqExt::from_index(int q, int deg, long idx) {
  FqExt r(q, deg);
  for (int i = 0; i < deg; ++i) {
    r.c[i] = static_cast<int16_t>(idx % q);
    idx /= q;
  }
  return r;
}

namespace {
void require_same_ext(const FqExt& a, const FqExt& b) {
  BIQORB_CHECK(a.q == b.q && a.deg == b.deg, "mixed extension fields");
}
}  // namespace

FqExt operator+(const FqExt& a, const FqExt& b) {
  require_same_ext(a, b);
  FqExt r(a.q, a.deg);
  for (int i = 0; i < a.deg; ++i) r.c[i] = static_cast<int16_t>((a.c[i] + b.c[i]) % a.q);
  return r;
}

FqExt operator-(const FqExt& a, const FqExt& b) {
  require_same_ext(a, b);
  FqExt r(a.q, a.deg);
  for (int i = 0; i < a.deg; ++i)
    r.c[i] = static_cast<int16_t>(((a.c[i] - b.c[i]) % a.q + a.q) % a.q);
  return r;
}

FqExt operator-(const FqExt& a) {
  FqExt r(a.q, a.deg);
  for (int i = 0; i < a.deg; ++i) r.c[i] = static_cast<int16_t>((a.q - a.c[i]) % a.q);
  return r;
}

FqExt operator*(const FqExt& a, const FqExt& b) {
  require_same_ext(a, b);
  if (a.deg == 1) {
    FqExt r(a.q, 1);
    r.c[0] = static_cast<int16_t>((static_cast<long long>(a.c[0]) * b.c[0]) % a.q);
    return r;
  }
  std::array<int, 2 * kMaxExtDeg> prod{};
  for (int i = 0; i < a.deg; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < b.deg; ++j) prod[i + j] = (prod[i + j] + a.c[i] * b.c[j]) % a.q;
  }
  const Poly& m = ext_modulus(a.q, a.deg);
  // Reduce by the monic modulus: g^deg = -(lower coefficients).
  for (int k = 2 * a.deg - 2; k >= a.deg; --k) {
    int t = prod[k];
    if (t == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < a.deg; ++i) {
      int sub = static_cast<int>((static_cast<long long>(t) * m.c[i]) % a.q);
      prod[k - a.deg + i] = ((prod[k - a.deg + i] - sub) % a.q + a.q) % a.q;
    }
  }
  FqExt r(a.q, a.deg);
  for (int i = 0; i < a.deg; ++i) r.c[i] = static_cast<int16_t>(prod[i]);
  return r;
}

FqExt ext_pow(const FqExt& a, long long e) {
  BIQORB_CHECK(e >= 0, "ext_pow: negative exponent");
  FqExt acc = FqExt::from_base(Fq(a.q, 1), a.deg), base = a;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

FqExt inverse(const FqExt& a) {
  BIQORB_CHECK(!a.is_zero(), "division by zero in F_{q^d}");
  return ext_pow(a, ipow(a.q, a.deg) - 2);
}

FqExt operator/(const FqExt& a, const FqExt& b) { return a * inverse(b); }

FqExt frobenius(const FqExt& a) { return ext_pow(a, a.q); }

FqExt frobenius_iter(const FqExt& a, int k) {
  FqExt r = a;
  for (int i = 0; i < k; ++i) r = frobenius(r);
  return r;
}

int frobenius_orbit_size(const FqExt& a) {
  FqExt r = a;
  for (int k = 1; k <= a.deg; ++k) {
    r = frobenius(r);
    if (r == a) {
      BIQORB_CHECK(a.deg % k == 0, "orbit size must divide ambient degree");
      return k;
    }
  }
  throw InternalError("frobenius orbit did not close");
}

int legendre(const FqExt& a) {
  if (a.is_zero()) return 0;
  FqExt s = ext_pow(a, (ipow(a.q, a.deg) - 1) / 2);
  FqExt one = FqExt::from_base(Fq(a.q, 1), a.deg);
  return s == one ? 1 : -1;
}

std::optional<FqExt> ext_sqrt(const FqExt& a) {
  if (a.is_zero()) return a;
  if (legendre(a) != 1) return std::nullopt;
  long total = ipow(a.q, a.deg);
  if (total > kMaxFieldScan) throw CapacityError("field too large for sqrt scan");
  // q^d = 3 mod 4 admits the direct exponent formula; otherwise scan.
  long qd = total;
  if (qd % 4 == 3) {
    FqExt r = ext_pow(a, (qd + 1) / 4);
    if (r * r == a) return r;
  }
  for (long i = 1; i < total; ++i) {
    FqExt x = FqExt::from_index(a.q, a.deg, i);
    if (x * x == a) return x;
  }
  throw InternalError("sqrt scan failed on a residue");
}

Fq norm_to_base(const FqExt& a) {
  FqExt acc = FqExt::from_base(Fq(a.q, 1), a.deg), f = a;
  for (int i = 0; i < a.deg; ++i) {
    acc = acc * f;
    f = frobenius(f);
  }
  for (int i = 1; i < a.deg; ++i) BIQORB_CHECK(acc.c[i] == 0, "norm not in base field");
  return Fq(a.q, acc.c[0]);
}

Fq trace_to_base(const FqExt& a) {
  FqExt acc(a.q, a.deg), f = a;
  for (int i = 0; i < a.deg; ++i) {
    acc = acc + f;
    f = frobenius(f);
  }
  for (int i = 1; i < a.deg; ++i) BIQORB_CHECK(acc.c[i] == 0, "trace not in base field");
  return Fq(a.q, acc.c[0]);
}

Poly minimal_polynomial(const FqExt& a) {
  int m = frobenius_orbit_size(a);
  // prod over the orbit of (X - conj), computed with FqExt coefficients.
  std::vector<FqExt> poly{FqExt::from_base(Fq(a.q, 1), a.deg)};  // leading first
  FqExt conj = a;
  for (int i = 0; i < m; ++i) {
    std::vector<FqExt> next(poly.size() + 1, FqExt(a.q, a.deg));
    for (size_t j = 0; j < poly.size(); ++j) {
      next[j] = next[j] + poly[j];                 // X * term
      next[j + 1] = next[j + 1] - poly[j] * conj;  // -conj * term
    }
    poly = std::move(next);
    conj = frobenius(conj);
  }
  std::vector<long long> coeffs(poly.size());
  for (size_t j = 0; j < poly.size(); ++j) {
    const FqExt& cf = poly[poly.size() - 1 - j];
    for (int i = 1; i < a.deg; ++i) BIQORB_CHECK(cf.c[i] == 0, "min poly not over F_q");
    coeffs[j] = cf.c[0];
  }
  return Poly(a.q, coeffs);
}

namespace {

std::map<std::tuple<int, int, int>, FqExt>& embed_registry() {
  static std::map<std::tuple<int, int, int>, FqExt> reg;
  return reg;
}

// Image of the degree-a generator inside F_{q^b}: least root of modulus_a.
FqExt generator_image(int q, int a, int b) {
  std::lock_guard<std::recursive_mutex> lock(ext_mutex());
  auto key = std::make_tuple(q, a, b);
  auto it = embed_registry().find(key);
  if (it != embed_registry().end()) return it->second;
  const Poly m = (a == 1) ? poly_x(q) : find_modulus(q, a);
  long total = ipow(q, b);
  if (total > kMaxFieldScan) throw CapacityError("field too large for embedding scan");
  for (long i = 0; i < total; ++i) {
    FqExt x = FqExt::from_index(q, b, i);
    // evaluate m at x
    FqExt acc(q, b);
    for (int k = m.degree(); k >= 0; --k) acc = acc * x + FqExt::from_base(m.coeff(k), b);
    if (acc.is_zero()) {
      embed_registry()[key] = x;
      return x;
    }
  }
  throw InternalError("no root for embedding");
}

}  // namespace

FqExt embed(const FqExt& x, int target_deg) {
  if (x.deg == target_deg) return x;
  BIQORB_CHECK(target_deg % x.deg == 0 && target_deg <= kMaxExtDeg,
               "embedding requires a | b within degree cap");
  if (x.deg == 1) return FqExt::from_base(Fq(x.q, x.c[0]), target_deg);
  FqExt img = generator_image(x.q, x.deg, target_deg);
  FqExt acc(x.q, target_deg);
  for (int i = x.deg - 1; i >= 0; --i)
    acc = acc * img + FqExt::from_base(Fq(x.q, x.c[i]), target_deg);
  return acc;
}

FqExt poly_eval(const Poly& p, const FqExt& x) {
  FqExt acc(x.q, x.deg);
  for (int k = p.degree(); k >= 0; --k) acc = acc * x + FqExt::from_base(p.coeff(k), x.deg);
  return acc;
}

Fq poly_eval(const Poly& p, const Fq& x) {
  Fq acc(x.q, 0);
  for (int k = p.degree(); k >= 0; --k) acc = acc * x + p.coeff(k);
  return acc;
}

std::vector<FqExt> poly_roots_in(const Poly& p, int d) {
  BIQORB_CHECK(!p.is_zero(), "roots of zero polynomial");
  long total = ipow(p.q, d);
  if (total > kMaxFieldScan) throw CapacityError("field too large for root scan");
  std::vector<FqExt> roots;
  for (long i = 0; i < total; ++i) {
    FqExt x = FqExt::from_index(p.q, d, i);
    if (poly_eval(p, x).is_zero()) roots.push_back(x);
  }
  return roots;
}

// ---------------------------------------------------------------------------
// Factorization: squarefree split, distinct-degree split by gcd with
// x^{q^i} - x, then roots-in-F_{q^i} to peel off individual irreducibles.
// ---------------------------------------------------------------------------

namespace {

void factor_squarefree_part(const Poly& sf, std::vector<Poly>& out) {
  // sf squarefree, monic. Distinct-degree decomposition first.
  Poly rest = sf;
  const Poly x = poly_x(sf.q);
  for (int d = 1; d <= rest.degree() && rest.degree() > 0; ++d) {
    if (rest.degree() < 2 * d) break;
    Poly g = poly_gcd(poly_pow_mod(x, ipow(sf.q, d), rest) - poly_mod(x, rest), rest);
    if (g.degree() > 0) {
      // g = product of all irreducible factors of degree dividing d; since
      // lower degrees were removed already, all factors here have degree d.
      BIQORB_CHECK(g.degree() % d == 0, "distinct-degree split inconsistent");
      if (d > kMaxExtDeg)
        throw CapacityError("irreducible factor of degree > " + std::to_string(kMaxExtDeg));
      Poly part = g;
      while (part.degree() > 0) {
        auto roots = poly_roots_in(part, d);
        BIQORB_CHECK(!roots.empty(), "no root in the splitting field");
        Poly mp = minimal_polynomial(roots.front());
        BIQORB_CHECK(mp.degree() == d, "unexpected factor degree");
        out.push_back(mp);
        part = poly_divexact(part, mp);
      }
      rest = poly_divexact(rest, g);
    }
  }
  if (rest.degree() > 0) out.push_back(rest);  // irreducible remainder
}

}  // namespace

namespace {

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.c < b.c;
}

// Collect the distinct monic irreducible factors of f (multiplicities later).
void collect_irreducible(const Poly& f, std::vector<Poly>& out) {
  if (f.degree() <= 0) return;
  Poly df = poly_derivative(f);
  if (df.is_zero()) {
    // f = g(x^p) = g(x)^p over the prime field (coefficients are Frobenius-fixed).
    std::vector<long long> coeffs;
    for (int i = 0; i <= f.degree(); i += f.q) coeffs.push_back(f.coeff(i).v);
    collect_irreducible(Poly(f.q, coeffs), out);
    return;
  }
  Poly sf = poly_divexact(f, poly_gcd(f, df));  // factors of multiplicity prime to p
  std::vector<Poly> irr;
  factor_squarefree_part(sf, irr);
  Poly leftover = f;
  for (const Poly& fac : irr) {
    out.push_back(fac);
    while (true) {
      auto [quo, rem] = poly_divmod(leftover, fac);
      if (!rem.is_zero()) break;
      leftover = quo;
    }
  }
  collect_irreducible(leftover, out);  // factors with multiplicity divisible by p
}

}  // namespace

PolyFactorization factor(const Poly& p) {
  if (p.is_zero()) throw ConfigError("cannot factor the zero polynomial");
  PolyFactorization result;
  result.unit = p.lead();
  Poly work = poly_make_monic(p);
  std::vector<Poly> irr;
  collect_irreducible(work, irr);
  std::sort(irr.begin(), irr.end(), poly_less);
  irr.erase(std::unique(irr.begin(), irr.end()), irr.end());
  for (const Poly& fac : irr) {
    int e = 0;
    Poly rem = work;
    while (true) {
      auto [quo, r] = poly_divmod(rem, fac);
      if (!r.is_zero()) break;
      rem = quo;
      ++e;
    }
    result.factors.emplace_back(fac, e);
  }
  Poly check = poly_const(result.unit);
  for (auto& [fac, e] : result.factors)
    for (int i = 0; i < e; ++i) check = check * fac;
  BIQORB_CHECK(check == p, "factorization does not reproduce input");
  return result;
}

std::string ext_to_string(const FqExt& a) {
  std::ostringstream os;
  for (int i = 0; i < a.deg; ++i) {
    if (i) os << '.';
    os << a.c[i];
  }
  return os.str();
}

FqExt ext_from_string(int q, const std::string& s) {
  std::vector<int> coords;
  std::string cur;
  for (char ch : s) {
    if (ch == '.') {
      coords.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) coords.push_back(std::stoi(cur));
  if (coords.empty() || static_cast<int>(coords.size()) > kMaxExtDeg)
    throw ConfigError("bad field element encoding: " + s);
  FqExt r(q, static_cast<int>(coords.size()));
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= q) throw ConfigError("coordinate out of range: " + s);
    r.c[i] = static_cast<int16_t>(coords[i]);
  }
  return r;
}

}  // namespace biqorb
