#include "biqorb/spectra.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace biqorb {

SignedPerm SignedPerm::identity(int n) {
  SignedPerm g;
  g.n = n;
  for (int i = 0; i < n; ++i) {
    g.sign[static_cast<size_t>(i)] = 1;
    g.perm[static_cast<size_t>(i)] = static_cast<int8_t>(i);
  }
  return g;
}

SignedPerm compose(const SignedPerm& g, const SignedPerm& h) {
  BIQORB_CHECK(g.n == h.n, "signed permutations of different rank");
  SignedPerm r;
  r.n = g.n;
  for (int j = 0; j < g.n; ++j) {
    int gj = g.perm[static_cast<size_t>(h.perm[static_cast<size_t>(j)])];
    r.perm[static_cast<size_t>(j)] = static_cast<int8_t>(gj);
  }
  // sign_(gh)[g(j)] = sign_g[g(j)] * sign_h[j], indices through g's perm
  for (int j = 0; j < g.n; ++j) {
    int i = g.perm[static_cast<size_t>(j)];
    r.sign[static_cast<size_t>(i)] =
        static_cast<int8_t>(g.sign[static_cast<size_t>(i)] * h.sign[static_cast<size_t>(j)]);
  }
  return r;
}

SignedPerm inverse(const SignedPerm& g) {
  SignedPerm r;
  r.n = g.n;
  for (int j = 0; j < g.n; ++j) {
    int i = g.perm[static_cast<size_t>(j)];
    r.perm[static_cast<size_t>(i)] = static_cast<int8_t>(j);
    r.sign[static_cast<size_t>(j)] = g.sign[static_cast<size_t>(i)];
  }
  return r;
}

std::vector<SignedPerm> hyperoctahedral_elements(int n) {
  BIQORB_CHECK(n >= 1 && n <= kMaxHyperoctahedral, "rank out of range");
  std::vector<int> base(static_cast<size_t>(n));
  std::iota(base.begin(), base.end(), 0);
  std::vector<SignedPerm> out;
  std::vector<int> perm = base;
  do {
    for (int smask = 0; smask < (1 << n); ++smask) {
      SignedPerm g;
      g.n = n;
      for (int i = 0; i < n; ++i) {
        g.perm[static_cast<size_t>(i)] = static_cast<int8_t>(perm[static_cast<size_t>(i)]);
        g.sign[static_cast<size_t>(i)] = (smask >> i) & 1 ? -1 : 1;
      }
      out.push_back(g);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

int act_on_mask(const SignedPerm& g, int mask) {
  int placed = 0;
  for (int j = 0; j < g.n; ++j)
    if ((mask >> j) & 1) placed |= 1 << g.perm[static_cast<size_t>(j)];
  int smask = 0;
  for (int i = 0; i < g.n; ++i)
    if (g.sign[static_cast<size_t>(i)] == -1) smask |= 1 << i;
  return placed ^ smask;
}

RepModule build_module(int n) {
  BIQORB_CHECK(n >= 1 && n <= kMaxHyperoctahedral, "rank out of range");
  RepModule m;
  m.n = n;
  m.dim = 1 << n;
  m.h = MatX<Rat>::Constant(m.dim, m.dim, Rat(0));
  for (int x = 0; x < m.dim; ++x)
    for (int i = 0; i < n; ++i) m.h(x ^ (1 << i), x) += Rat(1);
  m.group = hyperoctahedral_elements(n);
  return m;
}

MatX<Rat> action_matrix(const RepModule& m, const SignedPerm& g) {
  MatX<Rat> a = MatX<Rat>::Constant(m.dim, m.dim, Rat(0));
  for (int x = 0; x < m.dim; ++x) a(act_on_mask(g, x), x) = Rat(1);
  return a;
}

namespace {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

MatX<Rat> invert_rational(const MatX<Rat>& a) {
  int n = static_cast<int>(a.rows());
  MatX<Rat> aug = MatX<Rat>::Constant(n, 2 * n, Rat(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Rat(1);
  }
  auto pivots = row_reduce(aug, Rat(0), Rat(1));
  BIQORB_CHECK(static_cast<int>(pivots.size()) == n, "singular matrix in projector");
  for (int i = 0; i < n; ++i) BIQORB_CHECK(pivots[static_cast<size_t>(i)] == i, "pivot drift");
  MatX<Rat> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Orthogonal projector onto the column span (the module carries the
// permutation-invariant inner product, so B (B^T B)^{-1} B^T works).
MatX<Rat> projector(const MatX<Rat>& basis) {
  MatX<Rat> bt = basis.transpose();
  MatX<Rat> gram = bt * basis;
  return basis * invert_rational(gram) * bt;
}

Rat character_value(const MatX<Rat>& proj, const SignedPerm& ginv) {
  // tr(rho(g) P) = sum_x P[g^{-1} x, x]
  Rat s(0);
  int dim = static_cast<int>(proj.rows());
  for (int x = 0; x < dim; ++x) s += proj(act_on_mask(ginv, x), x);
  return s;
}

bool in_span(const MatX<Rat>& reduced_basis_t, const std::vector<int>& pivots,
             VecX<Rat> v) {
  // reduce v against the row-reduced transposed basis
  for (size_t r = 0; r < pivots.size(); ++r) {
    int c = pivots[r];
    if (v(c) == Rat(0)) continue;
    Rat f = v(c);
    for (int j = 0; j < v.size(); ++j) v(j) -= f * reduced_basis_t(static_cast<int>(r), j);
  }
  for (int j = 0; j < v.size(); ++j)
    if (!(v(j) == Rat(0))) return false;
  return true;
}

// conjugacy class key: sorted (cycle length, cycle sign) pairs
std::vector<std::pair<int, int>> class_key(const SignedPerm& g) {
  std::vector<std::pair<int, int>> key;
  std::vector<bool> seen(static_cast<size_t>(g.n), false);
  for (int i = 0; i < g.n; ++i) {
    if (seen[static_cast<size_t>(i)]) continue;
    int len = 0, sgn = 1, j = i;
    do {
      seen[static_cast<size_t>(j)] = true;
      sgn *= g.sign[static_cast<size_t>(j)];
      j = g.perm[static_cast<size_t>(j)];
      ++len;
    } while (j != i);
    key.emplace_back(len, sgn);
  }
  std::sort(key.begin(), key.end());
  return key;
}

MatX<Rat> eigenspace_basis(const RepModule& m, int lambda) {
  MatX<Rat> shifted = m.h;
  for (int i = 0; i < m.dim; ++i) shifted(i, i) -= Rat(lambda);
  auto ker = kernel_basis(std::move(shifted), Rat(0), Rat(1));
  MatX<Rat> basis = MatX<Rat>::Constant(m.dim, static_cast<int>(ker.size()), Rat(0));
  for (size_t j = 0; j < ker.size(); ++j)
    for (int i = 0; i < m.dim; ++i) basis(i, static_cast<int>(j)) = ker[j](i);
  return basis;
}

}  // namespace

std::vector<EigenComponent> decompose(const RepModule& m) {
  std::vector<EigenComponent> out;
  int total_dim = 0;
  for (int d1 = m.n; d1 >= 0; --d1) {
    EigenComponent ec;
    ec.d1 = d1;
    ec.d2 = m.n - d1;
    ec.eigenvalue = ec.d1 - ec.d2;
    ec.basis = eigenspace_basis(m, ec.eigenvalue);
    ec.dim = static_cast<int>(ec.basis.cols());
    BIQORB_CHECK(ec.dim == static_cast<int>(binomial(m.n, d1)),
                 "eigenspace dimension differs from the binomial coefficient");
    total_dim += ec.dim;

    // stability under the generators (one flip and the adjacent transpositions
    // generate the group together)
    std::vector<SignedPerm> gens;
    {
      SignedPerm flip = SignedPerm::identity(m.n);
      flip.sign[0] = -1;
      gens.push_back(flip);
      for (int i = 0; i + 1 < m.n; ++i) {
        SignedPerm tr = SignedPerm::identity(m.n);
        std::swap(tr.perm[static_cast<size_t>(i)], tr.perm[static_cast<size_t>(i + 1)]);
        gens.push_back(tr);
      }
    }
    MatX<Rat> bt = ec.basis.transpose();
    auto pivots = row_reduce(bt, Rat(0), Rat(1));
    ec.gamma_stable = true;
    for (auto& g : gens) {
      for (int j = 0; j < ec.dim && ec.gamma_stable; ++j) {
        VecX<Rat> moved = VecX<Rat>::Constant(m.dim, Rat(0));
        for (int i = 0; i < m.dim; ++i) {
          if (ec.basis(i, j) == Rat(0)) continue;
          moved(act_on_mask(g, i)) += ec.basis(i, j);
        }
        if (!in_span(bt, pivots, moved)) ec.gamma_stable = false;
      }
    }

    // irreducibility: <chi, chi> = 1 by exact summation over the group
    MatX<Rat> proj = projector(ec.basis);
    Rat norm(0);
    for (auto& g : m.group) {
      Rat c1 = character_value(proj, inverse(g));
      Rat c2 = character_value(proj, g);
      norm += c1 * c2;
    }
    ec.character_norm = norm / Rat(static_cast<long long>(m.group.size()));
    out.push_back(std::move(ec));
  }
  BIQORB_CHECK(total_dim == m.dim, "eigenspace dimensions do not fill the module");
  return out;
}

InducedCheck verify_induced_iso(const RepModule& m, int d1, int d2) {
  BIQORB_CHECK(d1 >= 0 && d2 >= 0 && d1 + d2 == m.n, "block sizes must sum to the rank");
  InducedCheck chk;
  chk.d1 = d1;
  chk.d2 = d2;

  MatX<Rat> proj_plus = projector(eigenspace_basis(m, d1 - d2));
  MatX<Rat> proj_minus = projector(eigenspace_basis(m, d2 - d1));

  // one representative per conjugacy class
  std::map<std::vector<std::pair<int, int>>, SignedPerm> reps;
  for (auto& g : m.group) reps.try_emplace(class_key(g), g);

  // induced character from the block subgroup of shape (a | b), with the
  // product-of-signs character on the chosen block
  auto induced_char = [&](const SignedPerm& g, int a, bool eta_on_second) {
    // membership: the permutation preserves {0..a-1}
    Rat total(0);
    for (auto& s : m.group) {
      SignedPerm c = compose(compose(s, g), inverse(s));
      bool inside = true;
      for (int i = 0; i < a && inside; ++i)
        if (c.perm[static_cast<size_t>(i)] >= a) inside = false;
      if (!inside) continue;
      int val = 1;
      if (eta_on_second) {
        for (int i = a; i < m.n; ++i) val *= c.sign[static_cast<size_t>(i)];
      } else {
        for (int i = 0; i < a; ++i) val *= c.sign[static_cast<size_t>(i)];
      }
      total += Rat(val);
    }
    long long subgroup_order = (1LL << m.n);
    for (int i = 2; i <= a; ++i) subgroup_order *= i;
    for (int i = 2; i <= m.n - a; ++i) subgroup_order *= i;
    return total / Rat(subgroup_order);
  };

  chk.eigenspace_matches_induced = true;
  chk.conjugate_subgroup_matches = true;
  chk.swap_symmetry = true;
  for (auto& [key, g] : reps) {
    Rat chi_plus = character_value(proj_plus, inverse(g));
    Rat chi_minus = character_value(proj_minus, inverse(g));
    // eig(d1 - d2) carries the sign character on a block of size d2
    if (!(chi_plus == induced_char(g, d1, /*eta_on_second=*/true)))
      chk.eigenspace_matches_induced = false;
    if (!(chi_plus == induced_char(g, d2, /*eta_on_second=*/false)))
      chk.conjugate_subgroup_matches = false;
    // swapping (d1, d2) twists by the total sign character
    int eta_tot = 1;
    for (int i = 0; i < m.n; ++i) eta_tot *= g.sign[static_cast<size_t>(i)];
    if (!(chi_minus == chi_plus * Rat(eta_tot))) chk.swap_symmetry = false;
  }
  return chk;
}

}  // namespace biqorb
