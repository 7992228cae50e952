// Finite-dimensional associative algebras given by structure constants:
// products, unity, ideals, quotients, center and the Jacobson radical.
#ifndef PATHALG_ALGEBRA_HPP
#define PATHALG_ALGEBRA_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathalg/linalg.hpp"
#include "pathalg/polynomial.hpp"

namespace pathalg {

/// Sparse coordinate vector: (basis index, nonzero coefficient), indices increasing.
template <class T>
using SparseVec = std::vector<std::pair<Index, T>>;

template <class T>
SparseVec<T> to_sparse(const Vec<T>& v);

/// b_i b_j = sum_k c_ijk b_k, stored sparsely as products[i * n + j].
template <class T>
class FDAlgebra {
 public:
  FDAlgebra() = default;

  /// Verifies associativity on all basis triples (NonAssociative) and detects
  /// a unity by solving u b_i = b_i = b_i u. A unity hint that passes those
  /// identities is taken as is, since a unity is unique.
  FDAlgebra(FieldDescriptor field, Index dim, std::vector<SparseVec<T>> products,
            std::vector<std::string> labels = {}, const std::optional<Vec<T>>& unity_hint = std::nullopt);

  /// From the dense tensor c[i][j][k].
  static FDAlgebra from_tensor(FieldDescriptor field, Index dim, const std::vector<T>& c,
                               std::vector<std::string> labels = {});

  const FieldDescriptor& field() const { return field_; }
  Index dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index i) const { return labels_[i]; }

  bool has_unity() const { return unity_.has_value(); }
  const std::optional<Vec<T>>& unity() const { return unity_; }
  /// Throws NoUnity.
  const Vec<T>& one() const;

  const SparseVec<T>& product(Index i, Index j) const { return products_[i * dim_ + j]; }
  T structure(Index i, Index j, Index k) const;

  Vec<T> zero() const { return Vec<T>::Zero(dim_); }
  Vec<T> basis_vector(Index i) const { return unit_vector<T>(dim_, i); }
  Vec<T> multiply(const Vec<T>& x, const Vec<T>& y) const;
  /// Matrix of y -> x y (column j is x b_j).
  Mat<T> left_matrix(const Vec<T>& x) const;
  /// Matrix of x -> x y (column i is b_i y).
  Mat<T> right_matrix(const Vec<T>& y) const;
  /// Trace of y -> x y.
  T left_trace(const Vec<T>& x) const;

 private:
  void check_shapes() const;
  void check_associative() const;
  void detect_unity();
  bool acts_as_unity(const Vec<T>& u) const;
  void check_element(const Vec<T>& x) const;

  FieldDescriptor field_ = FieldDescriptor::rationals();
  Index dim_ = 0;
  std::vector<SparseVec<T>> products_;
  std::vector<std::string> labels_;
  std::optional<Vec<T>> unity_;
};

/// span{x y : x in a, y in b}
template <class T>
Subspace<T> product_space(const FDAlgebra<T>& alg, const Subspace<T>& a, const Subspace<T>& b);

template <class T>
bool is_ideal(const FDAlgebra<T>& alg, const Subspace<T>& space);

/// Smallest two-sided ideal containing the generators. If the basis elements
/// listed in multipliers generate alg as an algebra with unity, closing under
/// them alone is enough; by default every basis element is used.
template <class T>
Subspace<T> ideal_closure(const FDAlgebra<T>& alg, const std::vector<Vec<T>>& generators,
                          const std::vector<Index>& multipliers = {});

/// Smallest subalgebra (no unity forced) containing the generators.
template <class T>
Subspace<T> generated_subalgebra(const FDAlgebra<T>& alg, const std::vector<Vec<T>>& generators);

/// Minimal t >= 1 with space^t = 0, where space^1 = space and
/// space^(k+1) = space^k * space; nullopt if the powers stall above zero.
template <class T>
std::optional<int> nilpotency_index(const FDAlgebra<T>& alg, const Subspace<T>& space);

/// {x : x b_i = b_i x for all i}
template <class T>
Subspace<T> center(const FDAlgebra<T>& alg);

template <class T>
struct Quotient {
  FDAlgebra<T> algebra;
  QuotientBasis<T> basis;
  Mat<T> map;  // pi, quotient_dim x dim
};

/// Throws NotAnIdeal.
template <class T>
Quotient<T> quotient_algebra(const FDAlgebra<T>& alg, const Subspace<T>& ideal);

/// Structure constants of a multiplicatively closed subspace in the given basis
/// rows; throws NotAnIdeal if the span is not closed.
template <class T>
FDAlgebra<T> restrict_algebra(const FDAlgebra<T>& alg, const Mat<T>& basis_rows,
                              std::vector<std::string> labels = {});

/// k 1 + A with the adjoined unity as basis element 0.
template <class T>
FDAlgebra<T> adjoin_unity(const FDAlgebra<T>& alg);

/// m(x) = 0 for the least-degree monic m, powers taken with x^0 = unit
/// (unit must act as identity on x).
template <class T>
Polynomial<T> minimal_polynomial(const FDAlgebra<T>& alg, const Vec<T>& x, const Vec<T>& unit);

/// p(x) with x^0 = unit.
template <class T>
Vec<T> evaluate(const FDAlgebra<T>& alg, const Polynomial<T>& p, const Vec<T>& x, const Vec<T>& unit);

/// True if the matrix (tgt.dim x src.dim) is multiplicative on all basis pairs.
template <class T>
bool is_multiplicative(const FDAlgebra<T>& src, const FDAlgebra<T>& tgt, const Mat<T>& map);

struct RadicalOptions {
  /// For algebras without unity, compute inside k 1 + A (otherwise NoUnity).
  bool adjoin_unity = false;
};

template <class T>
struct RadicalData {
  Subspace<T> radical;
  int nilpotency_index = 1;
  Quotient<T> quotient;
  bool adjoined_unity = false;
  bool quotient_radical_zero = false;
};

/// Trace-form radical {x : Tr(L_{xy}) = 0 for all y}, shrunk to the largest
/// ideal inside it. Valid in characteristic 0 and p > dim; other inputs are
/// rejected with CharacteristicTooSmall. Certified: the radical is nilpotent
/// (NotNilpotent otherwise) and the quotient has zero trace radical.
template <class T>
RadicalData<T> radical(const FDAlgebra<T>& alg, RadicalOptions options = {});

/// The trace-form step alone, without certificates.
template <class T>
Subspace<T> trace_radical(const FDAlgebra<T>& alg, RadicalOptions options = {});

}  // namespace pathalg

#endif  // PATHALG_ALGEBRA_HPP
