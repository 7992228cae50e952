#include "pathalg/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace pathalg {

template <class T>
Rref<T> rref(const Mat<T>& m) {
  Rref<T> out;
  out.reduced = m;
  Mat<T>& a = out.reduced;
  const Index rows = a.rows(), cols = a.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot = -1;
    for (Index i = r; i < rows; ++i) {
      if (!is_zero(a(i, c))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) a.row(pivot).swap(a.row(r));
    const T inv = ScalarTraits<T>::inverse(a(r, c));
    for (Index j = c; j < cols; ++j) a(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      const T factor = a(i, c);
      for (Index j = c; j < cols; ++j) {
        if (!is_zero(a(r, j))) a(i, j) -= factor * a(r, j);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

template <class T>
bool all_zero(const Mat<T>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class T>
bool all_zero(const Vec<T>& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) return false;
  return true;
}

template <class T>
std::optional<Mat<T>> solve(const Mat<T>& a, const Mat<T>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: row counts differ");
  Mat<T> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  Rref<T> r = rref(aug);
  Mat<T> x = Mat<T>::Zero(a.cols(), b.cols());
  for (Index k = 0; k < r.rank; ++k) {
    Index c = r.pivots[k];
    if (c >= a.cols()) return std::nullopt;  // inconsistent
    x.row(c) = r.reduced.row(k).tail(b.cols());
  }
  return x;
}

template <class T>
std::optional<Vec<T>> solve(const Mat<T>& a, const Vec<T>& b) {
  Mat<T> bm = b;
  auto x = solve<T>(a, bm);
  if (!x) return std::nullopt;
  return Vec<T>(x->col(0));
}

template <class T>
std::optional<Mat<T>> inverse(const Mat<T>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank<T>(a) != a.rows()) return std::nullopt;
  return solve<T>(a, Mat<T>(Mat<T>::Identity(a.rows(), a.rows())));
}

// --- Subspace ---------------------------------------------------------------

template <class T>
Subspace<T>::Subspace(Index ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

template <class T>
Subspace<T> Subspace<T>::span(Index ambient_dim, const Mat<T>& generator_rows) {
  if (generator_rows.cols() != ambient_dim && generator_rows.rows() > 0) {
    throw Error(ErrorCode::DimensionMismatch, "span: generator length differs from ambient dimension");
  }
  Subspace s(ambient_dim);
  if (generator_rows.rows() == 0) return s;
  Rref<T> r = rref(generator_rows);
  s.basis_ = r.reduced.topRows(r.rank);
  s.pivots_ = r.pivots;
  return s;
}

template <class T>
Subspace<T> Subspace<T>::span(Index ambient_dim, const std::vector<Vec<T>>& generators) {
  SpanBuilder<T> b(ambient_dim);
  for (const auto& g : generators) b.add(g);
  return b.finish();
}

template <class T>
Subspace<T> Subspace<T>::full(Index ambient_dim) {
  Subspace s(ambient_dim);
  s.basis_ = Mat<T>::Identity(ambient_dim, ambient_dim);
  s.pivots_.resize(ambient_dim);
  std::iota(s.pivots_.begin(), s.pivots_.end(), Index{0});
  return s;
}

template <class T>
void Subspace<T>::check_ambient(const Subspace& other) const {
  if (other.ambient_ != ambient_) {
    throw Error(ErrorCode::DimensionMismatch,
                "subspaces of different ambient dimensions " + std::to_string(ambient_) + " and " +
                    std::to_string(other.ambient_));
  }
}

template <class T>
Vec<T> Subspace<T>::reduce(const Vec<T>& v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from ambient dimension");
  Vec<T> r = v;
  for (Index k = 0; k < dim(); ++k) {
    const T c = r(pivots_[k]);
    if (is_zero(c)) continue;
    for (Index j = 0; j < ambient_; ++j) {
      if (!is_zero(basis_(k, j))) r(j) -= c * basis_(k, j);
    }
  }
  return r;
}

template <class T>
bool Subspace<T>::contains(const Vec<T>& v) const {
  return all_zero<T>(reduce(v));
}

template <class T>
bool Subspace<T>::contains(const Subspace& other) const {
  check_ambient(other);
  for (Index k = 0; k < other.dim(); ++k) {
    if (!contains(other.basis_vector(k))) return false;
  }
  return true;
}

template <class T>
std::optional<Vec<T>> Subspace<T>::coordinates(const Vec<T>& v) const {
  if (!contains(v)) return std::nullopt;
  Vec<T> c(dim());
  for (Index k = 0; k < dim(); ++k) c(k) = v(pivots_[k]);
  return c;
}

template <class T>
Subspace<T> Subspace<T>::operator+(const Subspace& other) const {
  check_ambient(other);
  Mat<T> stacked(dim() + other.dim(), ambient_);
  stacked << basis_, other.basis_;
  return span(ambient_, stacked);
}

template <class T>
Subspace<T> Subspace<T>::intersect(const Subspace& other) const {
  check_ambient(other);
  if (dim() == 0 || other.dim() == 0) return Subspace(ambient_);
  // (x, y) with x^T A + y^T B = 0 gives x^T A in both row spaces.
  Mat<T> stacked(dim() + other.dim(), ambient_);
  stacked << basis_, other.basis_;
  Subspace<T> rel = kernel<T>(Mat<T>(stacked.transpose()));
  Mat<T> gens = rel.basis().leftCols(dim()) * basis_;
  return span(ambient_, gens);
}

template <class T>
bool Subspace<T>::operator==(const Subspace& other) const {
  if (ambient_ != other.ambient_ || dim() != other.dim()) return false;
  if (pivots_ != other.pivots_) return false;
  return basis_ == other.basis_;
}

// --- SpanBuilder ------------------------------------------------------------

template <class T>
Vec<T> SpanBuilder<T>::reduce(Vec<T> v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const T c = v(pivots_[k]);
    if (is_zero(c)) continue;
    const Vec<T>& row = rows_[k];
    for (Index j = pivots_[k]; j < ambient_; ++j) {
      if (!is_zero(row(j))) v(j) -= c * row(j);
    }
  }
  return v;
}

template <class T>
bool SpanBuilder<T>::contains(const Vec<T>& v) const {
  return all_zero<T>(reduce(v));
}

template <class T>
bool SpanBuilder<T>::add(const Vec<T>& v) {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from ambient dimension");
  Vec<T> r = reduce(v);
  Index pivot = -1;
  for (Index j = 0; j < ambient_; ++j) {
    if (!is_zero(r(j))) {
      pivot = j;
      break;
    }
  }
  if (pivot < 0) return false;
  const T inv = ScalarTraits<T>::inverse(r(pivot));
  for (Index j = pivot; j < ambient_; ++j) r(j) *= inv;
  for (auto& row : rows_) {
    const T c = row(pivot);
    if (is_zero(c)) continue;
    for (Index j = pivot; j < ambient_; ++j) {
      if (!is_zero(r(j))) row(j) -= c * r(j);
    }
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(pivot);
  return true;
}

template <class T>
Subspace<T> SpanBuilder<T>::finish() const {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  Mat<T> basis(static_cast<Index>(rows_.size()), ambient_);
  for (std::size_t k = 0; k < order.size(); ++k) basis.row(static_cast<Index>(k)) = rows_[order[k]].transpose();
  // Already reduced; span() re-derives the pivots.
  return Subspace<T>::span(ambient_, basis);
}

// --- kernels, images, quotients ----------------------------------------------

template <class T>
Subspace<T> kernel(const Mat<T>& m) {
  const Index n = m.cols();
  if (m.rows() == 0) return Subspace<T>::full(n);
  Rref<T> r = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (Index c : r.pivots) is_pivot[c] = true;
  Mat<T> gens(n - r.rank, n);
  Index g = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec<T> v = Vec<T>::Zero(n);
    v(free) = T(1);
    for (Index k = 0; k < r.rank; ++k) v(r.pivots[k]) = -r.reduced(k, free);
    gens.row(g++) = v.transpose();
  }
  return Subspace<T>::span(n, gens);
}

template <class T>
Subspace<T> image(const Mat<T>& m) {
  return Subspace<T>::span(m.rows(), Mat<T>(m.transpose()));
}

template <class T>
Vec<T> QuotientBasis<T>::lift(const Vec<T>& q) const {
  Vec<T> v = Vec<T>::Zero(ambient_dim);
  for (Index k = 0; k < dim(); ++k) v(representative_indices[k]) = q(k);
  return v;
}

template <class T>
QuotientBasis<T> quotient_basis(Index ambient_dim, const Subspace<T>& sub) {
  if (sub.ambient_dim() != ambient_dim) {
    throw Error(ErrorCode::DimensionMismatch, "quotient_basis: ambient dimension mismatch");
  }
  QuotientBasis<T> q;
  q.ambient_dim = ambient_dim;
  std::vector<bool> is_pivot(ambient_dim, false);
  for (Index c : sub.pivots()) is_pivot[c] = true;
  for (Index j = 0; j < ambient_dim; ++j) {
    if (!is_pivot[j]) {
      q.representative_indices.push_back(j);
      q.representatives.push_back(unit_vector<T>(ambient_dim, j));
    }
  }
  // project(v) = v_free - R_free^T v_pivot
  q.projection = Mat<T>::Zero(q.dim(), ambient_dim);
  for (Index k = 0; k < q.dim(); ++k) {
    const Index col = q.representative_indices[k];
    q.projection(k, col) = T(1);
    for (Index r = 0; r < sub.dim(); ++r) {
      q.projection(k, sub.pivots()[r]) = -sub.basis()(r, col);
    }
  }
  return q;
}

template <class T>
BasisCoordinates<T>::BasisCoordinates(Mat<T> basis_rows) : basis_(std::move(basis_rows)) {
  span_ = Subspace<T>::span(basis_.cols(), basis_);
  if (span_.dim() != basis_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "basis rows are linearly dependent");
  }
  pivot_cols_ = span_.pivots();
  Mat<T> restricted(basis_.rows(), basis_.rows());
  for (Index k = 0; k < basis_.rows(); ++k) restricted.col(k) = basis_.col(pivot_cols_[k]);
  pivot_inverse_ = *inverse<T>(restricted);
}

template <class T>
std::optional<Vec<T>> BasisCoordinates<T>::coordinates(const Vec<T>& v) const {
  if (!span_.contains(v)) return std::nullopt;
  Vec<T> vp(basis_.rows());
  for (Index k = 0; k < basis_.rows(); ++k) vp(k) = v(pivot_cols_[k]);
  // c^T B_P = v_P^T
  return Vec<T>(pivot_inverse_.transpose() * vp);
}

template <class T>
Vec<T> BasisCoordinates<T>::operator()(const Vec<T>& v) const {
  auto c = coordinates(v);
  if (!c) throw Error(ErrorCode::Internal, "vector outside the span of the basis");
  return *c;
}

#define PATHALG_INSTANTIATE_LINALG(T)                                        \
  template Rref<T> rref<T>(const Mat<T>&);                                   \
  template bool all_zero<T>(const Mat<T>&);                                  \
  template bool all_zero<T>(const Vec<T>&);                                  \
  template std::optional<Mat<T>> solve<T>(const Mat<T>&, const Mat<T>&);     \
  template std::optional<Vec<T>> solve<T>(const Mat<T>&, const Vec<T>&);     \
  template std::optional<Mat<T>> inverse<T>(const Mat<T>&);                  \
  template class Subspace<T>;                                                \
  template class SpanBuilder<T>;                                             \
  template Subspace<T> kernel<T>(const Mat<T>&);                             \
  template Subspace<T> image<T>(const Mat<T>&);                              \
  template struct QuotientBasis<T>;                                          \
  template QuotientBasis<T> quotient_basis<T>(Index, const Subspace<T>&); \
  template class BasisCoordinates<T>;

PATHALG_INSTANTIATE_LINALG(Rational)
PATHALG_INSTANTIATE_LINALG(Modp)

}  // namespace pathalg
