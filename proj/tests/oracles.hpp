// Test-side reference constructions. Structure constants here come from
// explicit matrix models (products of concrete matrices), never from the
// library's own algorithms, so they serve as independent oracles.
#ifndef PATHALG_TESTS_ORACLES_HPP
#define PATHALG_TESTS_ORACLES_HPP

#include <random>
#include <string>
#include <vector>

#include "pathalg/algebra.hpp"

namespace oracle {

using namespace pathalg;

template <class T>
Mat<T> zeros(const FieldDescriptor& f, Index r, Index c) {
  return Mat<T>::Constant(r, c, scalar<T>(f, 0));
}

template <class T>
Mat<T> matrix_unit(const FieldDescriptor& f, Index n, Index a, Index b) {
  Mat<T> m = zeros<T>(f, n, n);
  m(a, b) = scalar<T>(f, 1);
  return m;
}

/// Flattened entries of a square matrix, row major.
template <class T>
std::vector<T> flatten(const Mat<T>& m) {
  std::vector<T> v;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

/// Coordinates of m in a basis of matrices whose supports are disjoint single
/// entries (matrix units, possibly scaled); exact by construction.
template <class T>
Vec<T> unit_coords(const std::vector<Mat<T>>& basis, const Mat<T>& m, const FieldDescriptor& f) {
  Vec<T> c = Vec<T>::Constant(static_cast<Index>(basis.size()), scalar<T>(f, 0));
  Mat<T> rest = m;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j)
        if (!is_zero(basis[k](i, j))) {
          c(static_cast<Index>(k)) = m(i, j) / basis[k](i, j);
          rest -= c(static_cast<Index>(k)) * basis[k];
          goto next;
        }
  next:;
  }
  for (Index i = 0; i < rest.rows(); ++i)
    for (Index j = 0; j < rest.cols(); ++j)
      if (!is_zero(rest(i, j))) throw std::runtime_error("oracle: product leaves the matrix subalgebra");
  return c;
}

/// Algebra spanned by a family of matrix units (closed under products).
template <class T>
FDAlgebra<T> unit_span_algebra(const FieldDescriptor& f, const std::vector<Mat<T>>& basis,
                               std::vector<std::string> labels) {
  const Index n = static_cast<Index>(basis.size());
  std::vector<T> c(static_cast<std::size_t>(n * n * n), scalar<T>(f, 0));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Vec<T> p = unit_coords<T>(basis, Mat<T>(basis[i] * basis[j]), f);
      for (Index k = 0; k < n; ++k) c[static_cast<std::size_t>((i * n + j) * n + k)] = p(k);
    }
  return FDAlgebra<T>::from_tensor(f, n, c, std::move(labels));
}

/// M_n(k) on E_11, E_12, ..., E_nn (row major).
template <class T>
FDAlgebra<T> full_matrix(const FieldDescriptor& f, Index n) {
  std::vector<Mat<T>> basis;
  std::vector<std::string> labels;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      basis.push_back(matrix_unit<T>(f, n, a, b));
      labels.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1));
    }
  return unit_span_algebra<T>(f, basis, labels);
}

/// Upper-triangular n x n matrices on E_ab with a <= b, ordered E11, E12, ..., E22, ...
template <class T>
FDAlgebra<T> upper_triangular(const FieldDescriptor& f, Index n) {
  std::vector<Mat<T>> basis;
  std::vector<std::string> labels;
  for (Index a = 0; a < n; ++a)
    for (Index b = a; b < n; ++b) {
      basis.push_back(matrix_unit<T>(f, n, a, b));
      labels.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1));
    }
  return unit_span_algebra<T>(f, basis, labels);
}

/// k[x]/(x^n) on 1, x, ..., x^(n-1).
template <class T>
FDAlgebra<T> truncated_polynomial(const FieldDescriptor& f, Index n) {
  std::vector<T> c(static_cast<std::size_t>(n * n * n), scalar<T>(f, 0));
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x" + std::to_string(i));
    for (Index j = 0; i + j < n; ++j) c[static_cast<std::size_t>((i * n + j) * n + i + j)] = scalar<T>(f, 1);
  }
  return FDAlgebra<T>::from_tensor(f, n, c, labels);
}

/// k^n with coordinate idempotents.
template <class T>
FDAlgebra<T> diagonal(const FieldDescriptor& f, Index n) {
  std::vector<T> c(static_cast<std::size_t>(n * n * n), scalar<T>(f, 0));
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) {
    c[static_cast<std::size_t>((i * n + i) * n + i)] = scalar<T>(f, 1);
    labels.push_back("e" + std::to_string(i + 1));
  }
  return FDAlgebra<T>::from_tensor(f, n, c, labels);
}

/// A x B with A's basis first.
template <class T>
FDAlgebra<T> product(const FDAlgebra<T>& a, const FDAlgebra<T>& b) {
  const Index n = a.dim() + b.dim();
  std::vector<T> c(static_cast<std::size_t>(n * n * n), scalar<T>(a.field(), 0));
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j)
      for (Index k = 0; k < a.dim(); ++k) c[static_cast<std::size_t>((i * n + j) * n + k)] = a.structure(i, j, k);
  const Index o = a.dim();
  for (Index i = 0; i < b.dim(); ++i)
    for (Index j = 0; j < b.dim(); ++j)
      for (Index k = 0; k < b.dim(); ++k)
        c[static_cast<std::size_t>(((o + i) * n + o + j) * n + o + k)] = b.structure(i, j, k);
  std::vector<std::string> labels = a.labels();
  for (const auto& l : b.labels()) labels.push_back(l + "'");
  return FDAlgebra<T>::from_tensor(a.field(), n, c, labels);
}

/// Q(i) as a 2-dim Q-algebra on 1, i (a non-split division algebra).
inline FDAlgebra<Rational> gaussian_rationals() {
  const FieldDescriptor f = FieldDescriptor::rationals();
  std::vector<Rational> c(8, Rational(0));
  auto at = [&](int i, int j, int k) -> Rational& { return c[static_cast<std::size_t>((i * 2 + j) * 2 + k)]; };
  at(0, 0, 0) = 1;
  at(0, 1, 1) = 1;
  at(1, 0, 1) = 1;
  at(1, 1, 0) = -1;
  return FDAlgebra<Rational>::from_tensor(f, 2, c, {"1", "i"});
}

template <class T>
Vec<T> random_vector(const FieldDescriptor& f, Index n, std::mt19937_64& rng, long lo = -3, long hi = 3) {
  Vec<T> v(n);
  for (Index i = 0; i < n; ++i) v(i) = random_scalar<T>(f, rng, lo, hi);
  return v;
}

template <class T>
Mat<T> random_matrix(const FieldDescriptor& f, Index r, Index c, std::mt19937_64& rng, long lo = -3, long hi = 3) {
  Mat<T> m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = random_scalar<T>(f, rng, lo, hi);
  return m;
}

/// (I + L)(I + U) with random strictly triangular integer L, U, and its exact
/// inverse from the finite Neumann series of the nilpotent parts.
template <class T>
std::pair<Mat<T>, Mat<T>> random_unimodular(const FieldDescriptor& f, Index n, std::mt19937_64& rng) {
  Mat<T> id = zeros<T>(f, n, n), l = zeros<T>(f, n, n), u = zeros<T>(f, n, n);
  for (Index i = 0; i < n; ++i) id(i, i) = scalar<T>(f, 1);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (i > j) l(i, j) = random_scalar<T>(f, rng, -2, 2);
      if (i < j) u(i, j) = random_scalar<T>(f, rng, -2, 2);
    }
  auto series_inverse = [&](const Mat<T>& nil) {
    Mat<T> inv = id, power = id;
    for (Index k = 1; k < n; ++k) {
      power = Mat<T>(-power * nil);
      inv += power;
    }
    return inv;
  };
  Mat<T> p = (id + l) * (id + u);
  Mat<T> pinv = series_inverse(u) * series_inverse(l);
  return {p, pinv};
}

/// The same algebra on the basis b'_i = sum_k P(k, i) b_k.
template <class T>
FDAlgebra<T> change_basis(const FDAlgebra<T>& a, const Mat<T>& p, const Mat<T>& pinv) {
  const Index n = a.dim();
  std::vector<T> c(static_cast<std::size_t>(n * n * n), scalar<T>(a.field(), 0));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Vec<T> prod = pinv * a.multiply(Vec<T>(p.col(i)), Vec<T>(p.col(j)));
      for (Index k = 0; k < n; ++k) c[static_cast<std::size_t>((i * n + j) * n + k)] = prod(k);
    }
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) labels.push_back("c" + std::to_string(i + 1));
  return FDAlgebra<T>::from_tensor(a.field(), n, c, labels);
}

/// Brute-force nilpotency of a linear map: M^n = 0.
template <class T>
bool matrix_nilpotent(const Mat<T>& m) {
  Mat<T> p = m;
  for (Index k = 1; k < m.rows(); ++k) p = Mat<T>(p * m);
  return m.rows() == 0 || all_zero<T>(p);
}

}  // namespace oracle

#endif  // PATHALG_TESTS_ORACLES_HPP
