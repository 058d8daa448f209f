#include "biqorb/characters.hpp"

#include <algorithm>
#include <sstream>

namespace biqorb {

int DescentChar::value(const Place& p) const {
  if (p.is_infinity()) return 1;
  const FqExt& x = p.rep.x;
  FqExt ee = FqExt::from_base(e, x.deg);
  if (x == ee) {
    // own 2-torsion place: complementary-root product over F_q
    Fq o1 = curve.e1, o2 = curve.e2;
    if (e == curve.e1) {
      o1 = curve.e2;
      o2 = curve.e3;
    } else if (e == curve.e2) {
      o1 = curve.e1;
      o2 = curve.e3;
    }
    return legendre((e - o1) * (e - o2));
  }
  return legendre(x - ee);
}

int DescentChar::value(const Divisor& d) const {
  int sign = 1;
  for (auto& [p, m] : d.mult)
    if (m % 2 != 0) sign *= value(p);
  return sign;
}

std::string cover_place_label(const CoverPlace& w) {
  std::string tag = w.tag == CoverTag::Inert ? "i" : (w.tag == CoverTag::Split0 ? "0" : "1");
  return place_label(w.base) + "~" + tag;
}

int CoverDivisor::multiplicity(const CoverPlace& w) const {
  auto it = mult.find(w);
  return it == mult.end() ? 0 : it->second;
}

void CoverDivisor::add(const CoverPlace& w, int m) {
  if (m == 0) return;
  auto [it, inserted] = mult.try_emplace(w, 0);
  it->second += m;
  if (it->second == 0) mult.erase(it);
}

int CoverDivisor::degree() const {
  int d = 0;
  for (auto& [w, m] : mult) d += w.degree() * m;
  return d;
}

bool CoverDivisor::is_effective() const {
  for (auto& [w, m] : mult)
    if (m < 0) return false;
  return true;
}

CoverDivisor operator+(const CoverDivisor& a, const CoverDivisor& b) {
  CoverDivisor r = a;
  for (auto& [w, m] : b.mult) r.add(w, m);
  return r;
}

CoverDivisor operator-(const CoverDivisor& a) {
  CoverDivisor r;
  for (auto& [w, m] : a.mult) r.mult[w] = -m;
  return r;
}

CoverDivisor operator-(const CoverDivisor& a, const CoverDivisor& b) { return a + (-b); }

std::string cover_divisor_to_string(const CoverDivisor& d) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto& [w, m] : d.mult) {
    if (!first) os << ",";
    first = false;
    os << cover_place_label(w) << "^" << m;
  }
  os << "}";
  return os.str();
}

std::vector<Place> TowerConfig::sigma() const {
  std::vector<Place> all = sigma_f;
  all.insert(all.end(), sigma_inf.begin(), sigma_inf.end());
  std::sort(all.begin(), all.end());
  return all;
}

bool TowerConfig::in_sigma(const Place& p) const {
  for (auto& x : sigma_f)
    if (x == p) return true;
  for (auto& x : sigma_inf)
    if (x == p) return true;
  return false;
}

CoverPlace TowerConfig::wprime(const Place& x) const {
  auto it = wprime_label.find(x);
  BIQORB_CHECK(it != wprime_label.end(), "wprime requested for a non-level place");
  return CoverPlace{x, it->second == 0 ? CoverTag::Split0 : CoverTag::Split1};
}

std::vector<CoverPlace> places_over(const TowerConfig& t, const Place& x) {
  if (t.chi3().value(x) == 1)
    return {CoverPlace{x, CoverTag::Split0}, CoverPlace{x, CoverTag::Split1}};
  return {CoverPlace{x, CoverTag::Inert}};
}

TowerConfig make_tower(const Curve& curve, const std::vector<Place>& sigma_f,
                       const std::vector<Place>& sigma_inf,
                       const std::map<Place, int>& wprime_label) {
  TowerConfig t;
  t.curve = curve;
  t.sigma_f = sigma_f;
  t.sigma_inf = sigma_inf;
  std::sort(t.sigma_f.begin(), t.sigma_f.end());
  std::sort(t.sigma_inf.begin(), t.sigma_inf.end());
  t.wprime_label = wprime_label;

  if (t.sigma_f.empty() && t.sigma_inf.empty())
    throw ConfigError("the level Sigma must be nonempty (N >= 1)");
  for (auto& x : t.sigma_f)
    for (auto& y : t.sigma_inf)
      if (x == y)
        throw ConfigError("place " + place_label(x) + " listed in both sigma_f and sigma_inf");
  auto check_dup = [](const std::vector<Place>& v, const char* name) {
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i] == v[i - 1])
        throw ConfigError(std::string("duplicate place in ") + name + ": " + place_label(v[i]));
  };
  check_dup(t.sigma_f, "sigma_f");
  check_dup(t.sigma_inf, "sigma_inf");

  DescentChar c1 = t.chi1(), c2 = t.chi2(), c3 = t.chi3();
  for (auto& x : t.sigma_f) {
    if (c1.value(x) != 1 || c2.value(x) != 1)
      throw ConfigError("sigma_f place " + place_label(x) +
                        " must have chi1 = chi2 = +1, got chi1 = " +
                        std::to_string(c1.value(x)) + ", chi2 = " + std::to_string(c2.value(x)));
  }
  for (auto& x : t.sigma_inf) {
    if (c1.value(x) != -1 || c2.value(x) != -1)
      throw ConfigError("sigma_inf place " + place_label(x) +
                        " must have chi1 = chi2 = -1, got chi1 = " +
                        std::to_string(c1.value(x)) + ", chi2 = " + std::to_string(c2.value(x)));
  }
  for (auto& x : t.sigma()) {
    if (c3.value(x) != 1)
      throw ConfigError("level place " + place_label(x) + " does not split in the third cover");
    auto it = t.wprime_label.find(x);
    if (it == t.wprime_label.end())
      throw ConfigError("missing wprime choice for level place " + place_label(x));
    if (it->second != 0 && it->second != 1)
      throw ConfigError("wprime label must be 0 or 1 for place " + place_label(x));
  }
  for (auto& [x, lbl] : t.wprime_label)
    if (!t.in_sigma(x))
      throw ConfigError("wprime given for non-level place " + place_label(x));

  t.N = 0;
  for (auto& x : t.sigma()) {
    t.N += x.deg;
    t.dprime3.add(t.wprime(x), 1);
  }
  return t;
}

SigmaReport validate_sigma(const TowerConfig& t) {
  // Re-run the construction checks, then report candidates.
  make_tower(t.curve, t.sigma_f, t.sigma_inf, t.wprime_label);
  SigmaReport rep;
  DescentChar c1 = t.chi1(), c2 = t.chi2(), c3 = t.chi3();
  for (auto& x : t.sigma()) {
    SigmaReport::Entry e;
    e.x = x;
    e.in_sigma_f = std::find(t.sigma_f.begin(), t.sigma_f.end(), x) != t.sigma_f.end();
    e.chi1 = c1.value(x);
    e.chi2 = c2.value(x);
    e.chi3 = c3.value(x);
    e.wprime_candidates = places_over(t, x);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

int eta_value(const TowerConfig& t, const CoverPlace& w) {
  if (w.tag == CoverTag::Inert) return 1;
  return t.chi1().value(w.base);
}

int eta_value(const TowerConfig& t, const CoverDivisor& d) {
  int sign = 1;
  for (auto& [w, m] : d.mult)
    if (m % 2 != 0) sign *= eta_value(t, w);
  return sign;
}

Divisor norm_divisor(const TowerConfig& t, const CoverDivisor& e) {
  Divisor r;
  for (auto& [w, m] : e.mult) r.add(w.base, w.is_split() ? m : 2 * m);
  return r;
}

CoverDivisor pullback_divisor(const TowerConfig& t, const Divisor& d) {
  CoverDivisor r;
  for (auto& [x, m] : d.mult)
    for (auto& w : places_over(t, x)) r.add(w, m);
  return r;
}

CoverDivisor sigma3_divisor(const CoverDivisor& d) {
  CoverDivisor r;
  for (auto& [w, m] : d.mult) {
    CoverPlace swapped = w;
    if (w.tag == CoverTag::Split0) swapped.tag = CoverTag::Split1;
    else if (w.tag == CoverTag::Split1) swapped.tag = CoverTag::Split0;
    r.add(swapped, m);
  }
  return r;
}

}  // namespace biqorb
