// Exact dense linear algebra over Rational / Modp: reduced row echelon form,
// kernels, canonical subspaces and quotient bases.
#ifndef PATHALG_LINALG_HPP
#define PATHALG_LINALG_HPP

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "pathalg/scalar.hpp"

namespace pathalg {

using Index = Eigen::Index;

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <class T>
struct Rref {
  Mat<T> reduced;  // same shape as the input, zero rows last
  Index rank = 0;
  std::vector<Index> pivots;
};

template <class T>
Rref<T> rref(const Mat<T>& m);

template <class T>
Index rank(const Mat<T>& m) {
  return rref(m).rank;
}

template <class T>
bool all_zero(const Mat<T>& m);
template <class T>
bool all_zero(const Vec<T>& v);

/// Some x with a*x = b, if one exists.
template <class T>
std::optional<Mat<T>> solve(const Mat<T>& a, const Mat<T>& b);
template <class T>
std::optional<Vec<T>> solve(const Mat<T>& a, const Vec<T>& b);

template <class T>
std::optional<Mat<T>> inverse(const Mat<T>& a);

template <class T>
Vec<T> unit_vector(Index n, Index i) {
  Vec<T> v = Vec<T>::Zero(n);
  v(i) = T(1);
  return v;
}

/// A linear subspace of T^n held by its reduced row echelon basis (rows).
/// Two subspaces of the same ambient space are equal iff their bases are
/// entrywise equal.
template <class T>
class Subspace {
 public:
  explicit Subspace(Index ambient_dim = 0);

  static Subspace span(Index ambient_dim, const Mat<T>& generator_rows);
  static Subspace span(Index ambient_dim, const std::vector<Vec<T>>& generators);
  static Subspace full(Index ambient_dim);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  bool is_trivial() const { return basis_.rows() == 0; }
  const Mat<T>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  Vec<T> basis_vector(Index i) const { return basis_.row(i).transpose(); }

  /// v minus its component along the echelon basis; zero iff v is contained.
  Vec<T> reduce(const Vec<T>& v) const;
  bool contains(const Vec<T>& v) const;
  bool contains(const Subspace& other) const;
  /// Coefficients of v in the echelon basis, if v is contained.
  std::optional<Vec<T>> coordinates(const Vec<T>& v) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  bool operator==(const Subspace& other) const;
  bool operator!=(const Subspace& other) const { return !(*this == other); }

 private:
  void check_ambient(const Subspace& other) const;

  Index ambient_;
  Mat<T> basis_;
  std::vector<Index> pivots_;
};

/// Incremental span with fully reduced rows; add() reports whether the span grew.
template <class T>
class SpanBuilder {
 public:
  explicit SpanBuilder(Index ambient_dim) : ambient_(ambient_dim) {}

  bool add(const Vec<T>& v);
  bool contains(const Vec<T>& v) const;
  Index dim() const { return static_cast<Index>(rows_.size()); }
  Subspace<T> finish() const;

 private:
  Vec<T> reduce(Vec<T> v) const;

  Index ambient_;
  std::vector<Vec<T>> rows_;
  std::vector<Index> pivots_;
};

/// {v : m v = 0}
template <class T>
Subspace<T> kernel(const Mat<T>& m);

/// Column space of m.
template <class T>
Subspace<T> image(const Mat<T>& m);

/// Complement of a subspace by standard basis vectors, with the linear
/// projection onto the quotient coordinates.
template <class T>
struct QuotientBasis {
  Index ambient_dim = 0;
  std::vector<Index> representative_indices;
  std::vector<Vec<T>> representatives;
  Mat<T> projection;  // quotient_dim x ambient_dim, kills the subspace

  Index dim() const { return static_cast<Index>(representative_indices.size()); }
  Vec<T> project(const Vec<T>& v) const { return projection * v; }
  /// Sum of representatives with the given quotient coordinates.
  Vec<T> lift(const Vec<T>& q) const;
};

template <class T>
QuotientBasis<T> quotient_basis(Index ambient_dim, const Subspace<T>& sub);

/// Coordinates with respect to an arbitrary (independent) list of basis rows.
template <class T>
class BasisCoordinates {
 public:
  BasisCoordinates() = default;
  /// Throws DimensionMismatch if the rows are dependent.
  explicit BasisCoordinates(Mat<T> basis_rows);

  Index size() const { return basis_.rows(); }
  const Mat<T>& basis() const { return basis_; }
  std::optional<Vec<T>> coordinates(const Vec<T>& v) const;
  /// Coordinates of a vector known to lie in the span; throws otherwise.
  Vec<T> operator()(const Vec<T>& v) const;

 private:
  Mat<T> basis_;
  Subspace<T> span_;
  std::vector<Index> pivot_cols_;
  Mat<T> pivot_inverse_;  // (basis restricted to pivot columns)^-1
};

}  // namespace pathalg

#endif  // PATHALG_LINALG_HPP
