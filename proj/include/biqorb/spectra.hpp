#pragma once

// The hyperoctahedral group {+-1}^n x| S_n acting on the 2^n-dimensional
// permutation module induced from S_n, the sign-flip sum operator H, its
// exact rational eigendecomposition, and induced-character identifications.

#include "biqorb/common.hpp"
#include "biqorb/linalg.hpp"

#include <array>
#include <vector>

namespace biqorb {

inline constexpr int kMaxHyperoctahedral = 5;

struct SignedPerm {
  int n = 0;
  std::array<int8_t, kMaxHyperoctahedral> sign{};  // +-1 entries
  std::array<int8_t, kMaxHyperoctahedral> perm{};  // images of 0..n-1

  static SignedPerm identity(int n);
  friend bool operator==(const SignedPerm& a, const SignedPerm& b) = default;
};

SignedPerm compose(const SignedPerm& g, const SignedPerm& h);  // g then-after h: g*h
SignedPerm inverse(const SignedPerm& g);

// All 2^n n! elements, in a fixed order.
std::vector<SignedPerm> hyperoctahedral_elements(int n);

// Action on sign vectors (basis of the induced module): x -> sign * perm(x),
// with sign vectors encoded as bitmasks (bit i set <-> entry i is -1).
int act_on_mask(const SignedPerm& g, int mask);

struct RepModule {
  int n = 0;
  int dim = 0;                    // 2^n
  MatX<Rat> h;                    // sum of the sign-flip generators
  std::vector<SignedPerm> group;  // full element list
};

RepModule build_module(int n);  // 1 <= n <= 5

MatX<Rat> action_matrix(const RepModule& m, const SignedPerm& g);

struct EigenComponent {
  int d1 = 0, d2 = 0;   // d1 + d2 = n, eigenvalue d1 - d2
  int eigenvalue = 0;
  int dim = 0;
  bool gamma_stable = false;
  Rat character_norm;        // <chi, chi>, 1 for irreducible
  MatX<Rat> basis;           // columns span the eigenspace
};

// Exact eigendecomposition of H: eigenvalues {n - 2j} with multiplicities
// binomial(n, j), each eigenspace stable and irreducible.
std::vector<EigenComponent> decompose(const RepModule& m);

struct InducedCheck {
  int d1 = 0, d2 = 0;
  bool eigenspace_matches_induced = false;  // char of eig(d1 - d2) vs the
                                            // induced character carrying the
                                            // sign character on the d2 block
  bool conjugate_subgroup_matches = false;  // same rep induced from the
                                            // swapped block subgroup
  bool swap_symmetry = false;               // chi_{(d2,d1)} = chi_{(d1,d2)} *
                                            // (total sign character)
};

// Exact induced-character verification for the (d1, d2) component.
InducedCheck verify_induced_iso(const RepModule& m, int d1, int d2);

}  // namespace biqorb
