#include "biqorb/spectral_poly.hpp"

#include <sstream>

namespace biqorb {

SpectralPoly SpectralPoly::monomial(const Rat& c, int e) {
  SpectralPoly p;
  p.add_term(e, c);
  return p;
}

Rat SpectralPoly::at(int e) const {
  auto it = coeff.find(e);
  return it == coeff.end() ? Rat(0) : it->second;
}

void SpectralPoly::add_term(int e, const Rat& c) {
  if (c == Rat(0)) return;
  auto [it, fresh] = coeff.try_emplace(e, Rat(0));
  it->second += c;
  if (it->second == Rat(0)) coeff.erase(it);
}

int SpectralPoly::min_exponent() const {
  BIQORB_CHECK(!is_zero(), "exponent range of the zero polynomial");
  return coeff.begin()->first;
}

int SpectralPoly::max_exponent() const {
  BIQORB_CHECK(!is_zero(), "exponent range of the zero polynomial");
  return coeff.rbegin()->first;
}

SpectralPoly SpectralPoly::reciprocal() const {
  SpectralPoly r;
  for (auto& [e, c] : coeff) r.coeff[-e] = c;
  return r;
}

SpectralPoly SpectralPoly::shifted(int k) const {
  SpectralPoly r;
  for (auto& [e, c] : coeff) r.coeff[e + k] = c;
  return r;
}

Rat SpectralPoly::value_at_one() const {
  Rat s(0);
  for (auto& [e, c] : coeff) s += c;
  return s;
}

Rat SpectralPoly::derivative_weight(int n, int r) const {
  Rat s(0);
  for (auto& [e, c] : coeff) {
    Rat base(e + n);
    s += c * rat_pow(base, r);
  }
  return s;
}

SpectralPoly operator+(const SpectralPoly& a, const SpectralPoly& b) {
  SpectralPoly r = a;
  for (auto& [e, c] : b.coeff) r.add_term(e, c);
  return r;
}

SpectralPoly operator-(const SpectralPoly& a, const SpectralPoly& b) {
  SpectralPoly r = a;
  for (auto& [e, c] : b.coeff) r.add_term(e, -c);
  return r;
}

SpectralPoly operator*(const SpectralPoly& a, const SpectralPoly& b) {
  SpectralPoly r;
  for (auto& [ea, ca] : a.coeff)
    for (auto& [eb, cb] : b.coeff) r.add_term(ea + eb, ca * cb);
  return r;
}

std::string to_string(const SpectralPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : p.coeff) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << "*u^" << e;
  }
  return os.str();
}

}  // namespace biqorb
