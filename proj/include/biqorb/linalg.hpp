#pragma once

// Dense exact linear algebra on Eigen containers: Gaussian elimination,
// kernels, and affine solves, templated on the scalar (F_q elements or
// rationals). The scalar's zero/one are passed explicitly because F_q
// elements carry their modulus.

#include "biqorb/common.hpp"
#include "biqorb/fq.hpp"

#include <Eigen/Core>

#include <vector>

namespace Eigen {

template <>
struct NumTraits<biqorb::Fq> {
  using Real = biqorb::Fq;
  using NonInteger = biqorb::Fq;
  using Literal = biqorb::Fq;
  using Nested = biqorb::Fq;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2
  };
  static int digits10() { return 0; }
};

template <>
struct NumTraits<biqorb::Rat> {
  using Real = biqorb::Rat;
  using NonInteger = biqorb::Rat;
  using Literal = biqorb::Rat;
  using Nested = biqorb::Rat;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 6,
    MulCost = 8
  };
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace biqorb {

template <typename T>
using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

// Row echelon form in place; returns the pivot column of each pivot row.
template <typename T>
std::vector<int> row_reduce(MatX<T>& a, const T& zero, const T& one) {
  std::vector<int> pivots;
  int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (!(a(i, c) == zero)) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < cols; ++j) std::swap(a(r, j), a(pr, j));
    T inv = one / a(r, c);
    for (int j = c; j < cols; ++j) a(r, j) = a(r, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == zero) continue;
      T f = a(i, c);
      for (int j = c; j < cols; ++j) a(i, j) = a(i, j) - f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Basis of the null space of a.
template <typename T>
std::vector<VecX<T>> kernel_basis(MatX<T> a, const T& zero, const T& one) {
  int cols = static_cast<int>(a.cols());
  auto pivots = row_reduce(a, zero, one);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<VecX<T>> basis;
  for (int fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    VecX<T> v(cols);
    for (int i = 0; i < cols; ++i) v(i) = zero;
    v(fc) = one;
    for (size_t r = 0; r < pivots.size(); ++r) v(pivots[r]) = zero - a(static_cast<int>(r), fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename T>
struct AffineSolution {
  bool consistent = false;
  VecX<T> particular;
  std::vector<VecX<T>> kernel;
};

// All solutions of A x = b as particular + kernel.
template <typename T>
AffineSolution<T> solve_affine(const MatX<T>& a0, const VecX<T>& b, const T& zero,
                               const T& one) {
  int rows = static_cast<int>(a0.rows()), cols = static_cast<int>(a0.cols());
  MatX<T> aug(rows, cols + 1);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) aug(i, j) = a0(i, j);
    aug(i, cols) = b(i);
  }
  auto pivots = row_reduce(aug, zero, one);
  AffineSolution<T> sol;
  for (int c : pivots)
    if (c == cols) return sol;  // inconsistent
  sol.consistent = true;
  sol.particular = VecX<T>(cols);
  for (int i = 0; i < cols; ++i) sol.particular(i) = zero;
  for (size_t r = 0; r < pivots.size(); ++r)
    sol.particular(pivots[r]) = aug(static_cast<int>(r), cols);
  MatX<T> a = a0;
  sol.kernel = kernel_basis(std::move(a), zero, one);
  return sol;
}

}  // namespace biqorb
