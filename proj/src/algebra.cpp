#include "pathalg/algebra.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace pathalg {

template <class T>
SparseVec<T> to_sparse(const Vec<T>& v) {
  SparseVec<T> out;
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) out.emplace_back(i, v(i));
  return out;
}

namespace {

// Dense accumulator that remembers which coordinates were touched.
template <class T>
class Accumulator {
 public:
  explicit Accumulator(Index n) : v_(static_cast<std::size_t>(n), T(0)), touched_(static_cast<std::size_t>(n), false) {}

  void add(Index k, const T& c) {
    if (!touched_[k]) {
      touched_[k] = true;
      list_.push_back(k);
    }
    v_[k] += c;
  }
  bool is_zero_vector() const {
    for (Index k : list_)
      if (!is_zero(v_[k])) return false;
    return true;
  }
  Index first_nonzero() const {
    Index best = -1;
    for (Index k : list_)
      if (!is_zero(v_[k]) && (best < 0 || k < best)) best = k;
    return best;
  }
  void clear() {
    for (Index k : list_) {
      v_[k] = T(0);
      touched_[k] = false;
    }
    list_.clear();
  }

 private:
  std::vector<T> v_;
  std::vector<bool> touched_;
  std::vector<Index> list_;
};

template <class T>
SparseVec<T> normalize(const FieldDescriptor& field, Index dim, SparseVec<T> s) {
  std::map<Index, T> merged;
  for (auto& [k, c] : s) {
    if (k < 0 || k >= dim) {
      throw Error(ErrorCode::DimensionMismatch, "structure constant index " + std::to_string(k) + " outside 0.." +
                                                    std::to_string(dim - 1));
    }
    T b = ScalarTraits<T>::bind(field, c);
    auto it = merged.find(k);
    if (it == merged.end()) merged.emplace(k, b);
    else it->second += b;
  }
  SparseVec<T> out;
  for (auto& [k, c] : merged)
    if (!is_zero(c)) out.emplace_back(k, c);
  return out;
}

}  // namespace

// --- FDAlgebra --------------------------------------------------------------

template <class T>
FDAlgebra<T>::FDAlgebra(FieldDescriptor field, Index dim, std::vector<SparseVec<T>> products,
                        std::vector<std::string> labels, const std::optional<Vec<T>>& unity_hint)
    : field_(field), dim_(dim), products_(std::move(products)), labels_(std::move(labels)) {
  ScalarTraits<T>::check_field(field_);
  check_shapes();
  for (auto& p : products_) p = normalize(field_, dim_, std::move(p));
  if (labels_.empty()) {
    for (Index i = 0; i < dim_; ++i) labels_.push_back("b" + std::to_string(i));
  }
  check_associative();
  if (unity_hint && unity_hint->size() == dim_) {
    Vec<T> u = *unity_hint;
    for (Index k = 0; k < dim_; ++k) u(k) = ScalarTraits<T>::bind(field_, u(k));
    if (acts_as_unity(u)) {
      unity_ = std::move(u);
      return;
    }
  }
  detect_unity();
}

template <class T>
bool FDAlgebra<T>::acts_as_unity(const Vec<T>& u) const {
  for (Index i = 0; i < dim_; ++i) {
    Vec<T> b = basis_vector(i);
    if (!all_zero<T>(Vec<T>(multiply(u, b) - b)) || !all_zero<T>(Vec<T>(multiply(b, u) - b))) return false;
  }
  return true;
}

template <class T>
FDAlgebra<T> FDAlgebra<T>::from_tensor(FieldDescriptor field, Index dim, const std::vector<T>& c,
                                       std::vector<std::string> labels) {
  if (static_cast<Index>(c.size()) != dim * dim * dim) {
    throw Error(ErrorCode::DimensionMismatch, "structure tensor must have n^3 entries");
  }
  std::vector<SparseVec<T>> products(static_cast<std::size_t>(dim * dim));
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j)
      for (Index k = 0; k < dim; ++k) {
        const T& x = c[static_cast<std::size_t>((i * dim + j) * dim + k)];
        if (!is_zero(x)) products[i * dim + j].emplace_back(k, x);
      }
  return FDAlgebra(field, dim, std::move(products), std::move(labels));
}

template <class T>
void FDAlgebra<T>::check_shapes() const {
  if (dim_ < 0) throw Error(ErrorCode::DimensionMismatch, "negative dimension");
  if (static_cast<Index>(products_.size()) != dim_ * dim_) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim_ * dim_) + " basis products");
  }
  if (!labels_.empty() && static_cast<Index>(labels_.size()) != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim_) + " basis labels");
  }
}

template <class T>
void FDAlgebra<T>::check_associative() const {
  // Only triples where (b_i b_j) b_k or b_i (b_j b_k) can be nonzero are visited:
  // k ranges over right partners of the terms of b_i b_j, i over left partners
  // of the terms of b_j b_k.
  std::vector<std::vector<Index>> right(static_cast<std::size_t>(dim_)), left(static_cast<std::size_t>(dim_));
  for (Index i = 0; i < dim_; ++i)
    for (Index j = 0; j < dim_; ++j)
      if (!product(i, j).empty()) {
        right[i].push_back(j);
        left[j].push_back(i);
      }
  Accumulator<T> acc(dim_);
  std::vector<char> mark(static_cast<std::size_t>(dim_), 0);
  std::vector<Index> partners;
  std::optional<std::tuple<Index, Index, Index>> bad;  // smallest failing triple
  auto check = [&](Index i, Index j, Index k) {
    for (const auto& [m, c] : product(i, j))
      for (const auto& [l, d] : product(m, k)) acc.add(l, c * d);
    for (const auto& [m, c] : product(j, k))
      for (const auto& [l, d] : product(i, m)) acc.add(l, -(c * d));
    bool ok = acc.is_zero_vector();
    acc.clear();
    if (!ok && (!bad || std::tuple(i, j, k) < *bad)) bad = std::tuple(i, j, k);
  };
  auto collect = [&](const SparseVec<T>& terms, const std::vector<std::vector<Index>>& table) {
    partners.clear();
    for (const auto& [m, c] : terms)
      for (Index x : table[m])
        if (!mark[x]) {
          mark[x] = 1;
          partners.push_back(x);
        }
    for (Index x : partners) mark[x] = 0;
    std::sort(partners.begin(), partners.end());
  };
  for (Index i = 0; i < dim_; ++i)
    for (Index j = 0; j < dim_; ++j) {
      if (product(i, j).empty()) continue;
      collect(product(i, j), right);
      for (Index k : partners) check(i, j, k);
    }
  for (Index j = 0; j < dim_; ++j)
    for (Index k = 0; k < dim_; ++k) {
      if (product(j, k).empty()) continue;
      collect(product(j, k), left);
      for (Index i : partners) check(i, j, k);
    }
  if (bad) {
    const auto [i, j, k] = *bad;
    const std::string si = std::to_string(i), sj = std::to_string(j), sk = std::to_string(k);
    throw Error(ErrorCode::NonAssociative, "(b" + si + " b" + sj + ") b" + sk + " != b" + si + " (b" + sj + " b" +
                                               sk + ") at (" + si + "," + sj + "," + sk + ")");
  }
}

template <class T>
void FDAlgebra<T>::detect_unity() {
  if (dim_ == 0) {
    unity_ = Vec<T>(0);
    return;
  }
  // Unknowns u_m: sum_m u_m c_{m i k} = delta_ik and sum_m u_m c_{i m k} = delta_ik.
  SpanBuilder<T> eqs(dim_ + 1);
  const T one = scalar<T>(field_, 1);
  for (int side = 0; side < 2; ++side) {
    for (Index i = 0; i < dim_; ++i) {
      Mat<T> rows = Mat<T>::Zero(dim_, dim_ + 1);
      for (Index m = 0; m < dim_; ++m) {
        const auto& p = side == 0 ? product(m, i) : product(i, m);
        for (const auto& [k, c] : p) rows(k, m) += c;
      }
      for (Index k = 0; k < dim_; ++k) {
        rows(k, dim_) = k == i ? one : scalar<T>(field_, 0);
        Vec<T> r = rows.row(k).transpose();
        eqs.add(r);
      }
    }
  }
  Subspace<T> s = eqs.finish();
  const auto& piv = s.pivots();
  if (!piv.empty() && piv.back() == dim_) return;  // inconsistent
  if (s.dim() != dim_) return;                     // unity is unique when it exists
  Vec<T> u(dim_);
  for (Index m = 0; m < dim_; ++m) u(m) = s.basis()(m, dim_);
  unity_ = u;
}

template <class T>
const Vec<T>& FDAlgebra<T>::one() const {
  if (!unity_) throw Error(ErrorCode::NoUnity, "algebra has no unity element");
  return *unity_;
}

template <class T>
T FDAlgebra<T>::structure(Index i, Index j, Index k) const {
  for (const auto& [m, c] : product(i, j))
    if (m == k) return c;
  return scalar<T>(field_, 0);
}

template <class T>
void FDAlgebra<T>::check_element(const Vec<T>& x) const {
  if (x.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "element of length " + std::to_string(x.size()) +
                                                  " in an algebra of dimension " + std::to_string(dim_));
  }
}

template <class T>
Vec<T> FDAlgebra<T>::multiply(const Vec<T>& x, const Vec<T>& y) const {
  check_element(x);
  check_element(y);
  Vec<T> out = Vec<T>::Constant(dim_, scalar<T>(field_, 0));
  std::vector<Index> ys;
  for (Index j = 0; j < dim_; ++j)
    if (!is_zero(y(j))) ys.push_back(j);
  for (Index i = 0; i < dim_; ++i) {
    if (is_zero(x(i))) continue;
    for (Index j : ys) {
      const T xy = x(i) * y(j);
      for (const auto& [k, c] : product(i, j)) out(k) += xy * c;
    }
  }
  return out;
}

template <class T>
Mat<T> FDAlgebra<T>::left_matrix(const Vec<T>& x) const {
  check_element(x);
  Mat<T> m = Mat<T>::Constant(dim_, dim_, scalar<T>(field_, 0));
  for (Index i = 0; i < dim_; ++i) {
    if (is_zero(x(i))) continue;
    for (Index j = 0; j < dim_; ++j)
      for (const auto& [k, c] : product(i, j)) m(k, j) += x(i) * c;
  }
  return m;
}

template <class T>
Mat<T> FDAlgebra<T>::right_matrix(const Vec<T>& y) const {
  check_element(y);
  Mat<T> m = Mat<T>::Constant(dim_, dim_, scalar<T>(field_, 0));
  for (Index j = 0; j < dim_; ++j) {
    if (is_zero(y(j))) continue;
    for (Index i = 0; i < dim_; ++i)
      for (const auto& [k, c] : product(i, j)) m(k, i) += y(j) * c;
  }
  return m;
}

template <class T>
T FDAlgebra<T>::left_trace(const Vec<T>& x) const {
  check_element(x);
  T tr = scalar<T>(field_, 0);
  for (Index i = 0; i < dim_; ++i) {
    if (is_zero(x(i))) continue;
    for (Index j = 0; j < dim_; ++j)
      for (const auto& [k, c] : product(i, j))
        if (k == j) tr += x(i) * c;
  }
  return tr;
}

// --- subspaces of an algebra ------------------------------------------------

template <class T>
Subspace<T> product_space(const FDAlgebra<T>& alg, const Subspace<T>& a, const Subspace<T>& b) {
  SpanBuilder<T> out(alg.dim());
  for (Index i = 0; i < a.dim(); ++i) {
    Vec<T> x = a.basis_vector(i);
    for (Index j = 0; j < b.dim(); ++j) out.add(alg.multiply(x, b.basis_vector(j)));
  }
  return out.finish();
}

template <class T>
bool is_ideal(const FDAlgebra<T>& alg, const Subspace<T>& space) {
  for (Index r = 0; r < space.dim(); ++r) {
    Vec<T> v = space.basis_vector(r);
    for (Index i = 0; i < alg.dim(); ++i) {
      Vec<T> b = alg.basis_vector(i);
      if (!space.contains(alg.multiply(b, v)) || !space.contains(alg.multiply(v, b))) return false;
    }
  }
  return true;
}

template <class T>
Subspace<T> ideal_closure(const FDAlgebra<T>& alg, const std::vector<Vec<T>>& generators,
                          const std::vector<Index>& multipliers) {
  std::vector<Index> by = multipliers;
  if (by.empty())
    for (Index i = 0; i < alg.dim(); ++i) by.push_back(i);
  SpanBuilder<T> span(alg.dim());
  std::vector<Vec<T>> queue;
  for (const auto& g : generators)
    if (span.add(g)) queue.push_back(g);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Vec<T> v = queue[q];
    for (Index i : by) {
      Vec<T> b = alg.basis_vector(i);
      for (Vec<T> w : {alg.multiply(b, v), alg.multiply(v, b)})
        if (span.add(w)) queue.push_back(std::move(w));
    }
  }
  return span.finish();
}

template <class T>
Subspace<T> generated_subalgebra(const FDAlgebra<T>& alg, const std::vector<Vec<T>>& generators) {
  SpanBuilder<T> span(alg.dim());
  std::vector<Vec<T>> accepted;
  std::vector<Vec<T>> queue;
  for (const auto& g : generators)
    if (span.add(g)) queue.push_back(g);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Vec<T> v = queue[q];
    accepted.push_back(v);
    for (const auto& w : accepted) {
      for (Vec<T> p : {alg.multiply(v, w), alg.multiply(w, v)})
        if (span.add(p)) queue.push_back(std::move(p));
    }
  }
  return span.finish();
}

template <class T>
std::optional<int> nilpotency_index(const FDAlgebra<T>& alg, const Subspace<T>& space) {
  if (space.is_trivial()) return 1;
  Subspace<T> power = space;
  for (int t = 2; t <= alg.dim() + 2; ++t) {
    Subspace<T> next = product_space(alg, power, space);
    if (next.is_trivial()) return t;
    if (next == power) return std::nullopt;
    power = std::move(next);
  }
  return std::nullopt;
}

template <class T>
Subspace<T> center(const FDAlgebra<T>& alg) {
  const Index n = alg.dim();
  Mat<T> eqs = Mat<T>::Constant(n * n, n, scalar<T>(alg.field(), 0));
  // row (i, k): sum_m x_m (c_{m i k} - c_{i m k})
  for (Index i = 0; i < n; ++i)
    for (Index m = 0; m < n; ++m) {
      for (const auto& [k, c] : alg.product(m, i)) eqs(i * n + k, m) += c;
      for (const auto& [k, c] : alg.product(i, m)) eqs(i * n + k, m) -= c;
    }
  return kernel<T>(eqs);
}

template <class T>
bool is_multiplicative(const FDAlgebra<T>& src, const FDAlgebra<T>& tgt, const Mat<T>& map) {
  if (map.rows() != tgt.dim() || map.cols() != src.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "map shape does not match the algebras");
  }
  std::vector<SparseVec<T>> images;
  for (Index i = 0; i < src.dim(); ++i) images.push_back(to_sparse<T>(Vec<T>(map.col(i))));
  const T zero = scalar<T>(tgt.field(), 0);
  Vec<T> diff = Vec<T>::Constant(tgt.dim(), zero);
  std::vector<Index> touched;
  for (Index i = 0; i < src.dim(); ++i)
    for (Index j = 0; j < src.dim(); ++j) {
      touched.clear();
      auto add = [&](Index k, const T& c) {
        diff(k) += c;
        touched.push_back(k);
      };
      for (const auto& [k, c] : src.product(i, j))
        for (const auto& [l, m] : images[k]) add(l, c * m);
      for (const auto& [p, x] : images[i])
        for (const auto& [q, y] : images[j]) {
          const T xy = x * y;
          for (const auto& [l, c] : tgt.product(p, q)) add(l, -(xy * c));
        }
      bool ok = true;
      for (Index k : touched) {
        if (!is_zero(diff(k))) ok = false;
        diff(k) = zero;
      }
      if (!ok) return false;
    }
  return true;
}

template <class T>
Quotient<T> quotient_algebra(const FDAlgebra<T>& alg, const Subspace<T>& ideal) {
  if (ideal.ambient_dim() != alg.dim()) throw Error(ErrorCode::DimensionMismatch, "ideal of another algebra");
  if (!is_ideal(alg, ideal)) throw Error(ErrorCode::NotAnIdeal, "subspace is not a two-sided ideal");
  Quotient<T> q;
  q.basis = quotient_basis(alg.dim(), ideal);
  q.map = q.basis.projection;
  const Index d = q.basis.dim();
  std::vector<SparseVec<T>> products(static_cast<std::size_t>(d * d));
  std::vector<std::string> labels;
  std::vector<SparseVec<T>> columns;
  for (Index k = 0; k < alg.dim(); ++k) columns.push_back(to_sparse<T>(Vec<T>(q.map.col(k))));
  for (Index a = 0; a < d; ++a) {
    labels.push_back(alg.label(q.basis.representative_indices[a]));
    for (Index b = 0; b < d; ++b) {
      Vec<T> image = Vec<T>::Constant(d, scalar<T>(alg.field(), 0));
      for (const auto& [k, c] : alg.product(q.basis.representative_indices[a], q.basis.representative_indices[b]))
        for (const auto& [l, m] : columns[k]) image(l) += c * m;
      products[a * d + b] = to_sparse<T>(image);
    }
  }
  std::optional<Vec<T>> unit;
  if (alg.has_unity()) unit = Vec<T>(q.map * alg.one());
  q.algebra = FDAlgebra<T>(alg.field(), d, std::move(products), std::move(labels), unit);
  if (!is_multiplicative(alg, q.algebra, q.map)) {
    throw Error(ErrorCode::Internal, "quotient map is not multiplicative");
  }
  return q;
}

template <class T>
FDAlgebra<T> restrict_algebra(const FDAlgebra<T>& alg, const Mat<T>& basis_rows, std::vector<std::string> labels) {
  BasisCoordinates<T> coords(basis_rows);
  const Index d = basis_rows.rows();
  std::vector<SparseVec<T>> products(static_cast<std::size_t>(d * d));
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) {
      auto c = coords.coordinates(alg.multiply(basis_rows.row(a).transpose(), basis_rows.row(b).transpose()));
      if (!c) throw Error(ErrorCode::Internal, "subspace is not closed under multiplication");
      products[a * d + b] = to_sparse<T>(*c);
    }
  return FDAlgebra<T>(alg.field(), d, std::move(products), std::move(labels));
}

template <class T>
FDAlgebra<T> adjoin_unity(const FDAlgebra<T>& alg) {
  const Index n = alg.dim(), d = n + 1;
  const T one = scalar<T>(alg.field(), 1);
  std::vector<SparseVec<T>> products(static_cast<std::size_t>(d * d));
  for (Index j = 0; j < d; ++j) {
    products[0 * d + j] = {{j, one}};
    products[j * d + 0] = {{j, one}};
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (const auto& [k, c] : alg.product(i, j)) products[(i + 1) * d + (j + 1)].emplace_back(k + 1, c);
  std::vector<std::string> labels{"1"};
  for (const auto& l : alg.labels()) labels.push_back(l);
  return FDAlgebra<T>(alg.field(), d, std::move(products), std::move(labels));
}

template <class T>
Polynomial<T> minimal_polynomial(const FDAlgebra<T>& alg, const Vec<T>& x, const Vec<T>& unit) {
  std::vector<Vec<T>> powers{unit};
  for (;;) {
    Vec<T> next = alg.multiply(x, powers.back());
    Mat<T> cols(alg.dim(), static_cast<Index>(powers.size()));
    for (std::size_t k = 0; k < powers.size(); ++k) cols.col(static_cast<Index>(k)) = powers[k];
    if (auto c = solve<T>(cols, next)) {
      // x^d = sum c_k x^k
      std::vector<T> coeffs(powers.size() + 1, scalar<T>(alg.field(), 0));
      for (std::size_t k = 0; k < powers.size(); ++k) coeffs[k] = -(*c)(static_cast<Index>(k));
      coeffs.back() = scalar<T>(alg.field(), 1);
      return Polynomial<T>(std::move(coeffs));
    }
    powers.push_back(std::move(next));
    if (static_cast<Index>(powers.size()) > alg.dim() + 1) {
      throw Error(ErrorCode::Internal, "minimal polynomial degree exceeds dimension");
    }
  }
}

template <class T>
Vec<T> evaluate(const FDAlgebra<T>& alg, const Polynomial<T>& p, const Vec<T>& x, const Vec<T>& unit) {
  Vec<T> acc = alg.zero();
  for (int k = p.degree(); k >= 0; --k) acc = Vec<T>(alg.multiply(x, acc) + p[static_cast<std::size_t>(k)] * unit);
  return acc;
}

// --- radical ----------------------------------------------------------------

namespace {

// Largest subspace of k closed under left and right multiplication by A.
template <class T>
Subspace<T> largest_ideal_inside(const FDAlgebra<T>& alg, Subspace<T> k) {
  for (;;) {
    if (k.is_trivial()) return k;
    QuotientBasis<T> qb = quotient_basis(alg.dim(), k);
    const Index r = k.dim(), q = qb.dim();
    Mat<T> cond = Mat<T>::Constant(2 * alg.dim() * q, r, scalar<T>(alg.field(), 0));
    for (Index c = 0; c < r; ++c) {
      Vec<T> x = k.basis_vector(c);
      for (Index i = 0; i < alg.dim(); ++i) {
        Vec<T> b = alg.basis_vector(i);
        cond.block(2 * i * q, c, q, 1) = qb.project(alg.multiply(b, x));
        cond.block((2 * i + 1) * q, c, q, 1) = qb.project(alg.multiply(x, b));
      }
    }
    Subspace<T> coeffs = kernel<T>(cond);
    if (coeffs.dim() == r) return k;
    k = Subspace<T>::span(alg.dim(), Mat<T>(coeffs.basis() * k.basis()));
  }
}

}  // namespace

template <class T>
Subspace<T> trace_radical(const FDAlgebra<T>& alg, RadicalOptions options) {
  if (alg.dim() == 0) return Subspace<T>(0);
  const bool adjoin = !alg.has_unity();
  if (adjoin && !options.adjoin_unity) throw Error(ErrorCode::NoUnity, "radical requires a unity element");
  const FDAlgebra<T> work = adjoin ? adjoin_unity(alg) : alg;
  const auto p = alg.field().characteristic;
  if (p != 0 && static_cast<Index>(p) <= work.dim()) {
    throw Error(ErrorCode::CharacteristicTooSmall, "trace-form radical needs p > dim, got p = " + std::to_string(p) +
                                                       ", dim = " + std::to_string(work.dim()));
  }
  const Index n = work.dim();
  std::vector<T> tr;
  for (Index k = 0; k < n; ++k) tr.push_back(work.left_trace(work.basis_vector(k)));
  Mat<T> gram = Mat<T>::Constant(n, n, scalar<T>(alg.field(), 0));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (const auto& [k, c] : work.product(i, j)) gram(i, j) += c * tr[k];
  Subspace<T> rad = largest_ideal_inside(work, kernel<T>(gram));
  if (!adjoin) return rad;
  // rad(k1 + A) lies in A; drop the adjoined coordinate.
  Mat<T> rows = rad.basis();
  for (Index r = 0; r < rows.rows(); ++r)
    if (!is_zero(rows(r, 0))) throw Error(ErrorCode::Internal, "radical meets the adjoined unity");
  return Subspace<T>::span(alg.dim(), Mat<T>(rows.rightCols(alg.dim())));
}

template <class T>
RadicalData<T> radical(const FDAlgebra<T>& alg, RadicalOptions options) {
  RadicalData<T> out;
  out.adjoined_unity = !alg.has_unity();
  out.radical = trace_radical(alg, options);
  auto t = nilpotency_index(alg, out.radical);
  if (!t) throw Error(ErrorCode::NotNilpotent, "trace-form radical is not nilpotent");
  out.nilpotency_index = *t;
  out.quotient = quotient_algebra(alg, out.radical);
  RadicalOptions qopt = options;
  qopt.adjoin_unity = true;
  out.quotient_radical_zero = trace_radical(out.quotient.algebra, qopt).is_trivial();
  return out;
}

#define PATHALG_INSTANTIATE_ALGEBRA(T)                                                                   \
  template SparseVec<T> to_sparse<T>(const Vec<T>&);                                                     \
  template class FDAlgebra<T>;                                                                           \
  template Subspace<T> product_space<T>(const FDAlgebra<T>&, const Subspace<T>&, const Subspace<T>&);     \
  template bool is_ideal<T>(const FDAlgebra<T>&, const Subspace<T>&);                                     \
  template Subspace<T> ideal_closure<T>(const FDAlgebra<T>&, const std::vector<Vec<T>>&, const std::vector<Index>&);\
  template Subspace<T> generated_subalgebra<T>(const FDAlgebra<T>&, const std::vector<Vec<T>>&);          \
  template std::optional<int> nilpotency_index<T>(const FDAlgebra<T>&, const Subspace<T>&);               \
  template Subspace<T> center<T>(const FDAlgebra<T>&);                                                    \
  template Quotient<T> quotient_algebra<T>(const FDAlgebra<T>&, const Subspace<T>&);                      \
  template FDAlgebra<T> restrict_algebra<T>(const FDAlgebra<T>&, const Mat<T>&, std::vector<std::string>); \
  template FDAlgebra<T> adjoin_unity<T>(const FDAlgebra<T>&);                                             \
  template Polynomial<T> minimal_polynomial<T>(const FDAlgebra<T>&, const Vec<T>&, const Vec<T>&);         \
  template Vec<T> evaluate<T>(const FDAlgebra<T>&, const Polynomial<T>&, const Vec<T>&, const Vec<T>&);    \
  template bool is_multiplicative<T>(const FDAlgebra<T>&, const FDAlgebra<T>&, const Mat<T>&);            \
  template Subspace<T> trace_radical<T>(const FDAlgebra<T>&, RadicalOptions);                             \
  template RadicalData<T> radical<T>(const FDAlgebra<T>&, RadicalOptions);

PATHALG_INSTANTIATE_ALGEBRA(Rational)
PATHALG_INSTANTIATE_ALGEBRA(Modp)

}  // namespace pathalg
