#include "pathalg/idempotents.hpp"

#include <algorithm>
#include <cmath>

namespace pathalg {

template <class T>
Vec<T> IdempotentSet<T>::sum() const {
  if (elements.empty()) return Vec<T>(0);
  Vec<T> s = elements.front();
  for (std::size_t i = 1; i < elements.size(); ++i) s += elements[i];
  return s;
}

template <class T>
bool canonical_less(const Vec<T>& a, const Vec<T>& b) {
  auto first = [](const Vec<T>& v) {
    for (Index i = 0; i < v.size(); ++i)
      if (!is_zero(v(i))) return i;
    return v.size();
  };
  Index fa = first(a), fb = first(b);
  if (fa != fb) return fa < fb;
  for (Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (ScalarTraits<T>::less(a(i), b(i))) return true;
    if (ScalarTraits<T>::less(b(i), a(i))) return false;
  }
  return a.size() < b.size();
}

namespace {

[[noreturn]] void invalid(const std::string& reason) { throw Error(ErrorCode::InvalidIdempotentSet, reason); }

template <class T>
bool equal(const Vec<T>& a, const Vec<T>& b) {
  return all_zero<T>(Vec<T>(a - b));
}

}  // namespace

template <class T>
IdempotentSet<T> validate_complete_set(const FDAlgebra<T>& alg, std::vector<Vec<T>> candidates) {
  const Index n = alg.dim();
  for (auto& e : candidates) {
    if (e.size() != n) throw Error(ErrorCode::DimensionMismatch, "idempotent of the wrong length");
    for (Index k = 0; k < n; ++k) e(k) = ScalarTraits<T>::bind(alg.field(), e(k));
  }
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (all_zero<T>(candidates[i])) invalid("zero-element: e" + std::to_string(i + 1) + " = 0");
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      Vec<T> p = alg.multiply(candidates[i], candidates[j]);
      bool ok = i == j ? equal<T>(p, candidates[i]) : all_zero<T>(p);
      if (!ok) {
        invalid("orthogonality: e" + std::to_string(i + 1) + " e" + std::to_string(j + 1) +
                (i == j ? " != e" + std::to_string(i + 1) : " != 0"));
      }
    }
  IdempotentSet<T> out{std::move(candidates)};
  Vec<T> s = out.elements.empty() ? alg.zero() : out.sum();
  for (Index k = 0; k < n; ++k) {
    Vec<T> b = alg.basis_vector(k);
    if (!equal<T>(alg.multiply(s, b), b) || !equal<T>(alg.multiply(b, s), b)) {
      invalid("completeness: the sum of the idempotents does not act as unity on " + alg.label(k));
    }
  }
  if (alg.has_unity() && !equal<T>(s, alg.one())) invalid("completeness: the sum is not the unity element");
  return out;
}

template <class T>
GmCheck check_gm_decomposition(const FDAlgebra<T>& alg, const GmDecomposition<T>& d) {
  GmCheck c;
  const Index m = d.size();
  Index total = 0;
  Subspace<T> all(alg.dim());
  for (const auto& b : d.blocks) {
    total += b.dim();
    all = all + b;
  }
  c.direct_sum = total == alg.dim() && all.dim() == alg.dim();
  c.block_products = true;
  for (Index i = 0; i < m && c.block_products; ++i)
    for (Index j = 0; j < m && c.block_products; ++j)
      for (Index s = 0; s < m && c.block_products; ++s)
        for (Index t = 0; t < m && c.block_products; ++t) {
          const Subspace<T>& a = d.block(i, j);
          const Subspace<T>& b = d.block(s, t);
          for (Index x = 0; x < a.dim() && c.block_products; ++x)
            for (Index y = 0; y < b.dim() && c.block_products; ++y) {
              Vec<T> p = alg.multiply(a.basis_vector(x), b.basis_vector(y));
              c.block_products = j == s ? d.block(i, t).contains(p) : all_zero<T>(p);
            }
        }
  return c;
}

template <class T>
GmDecomposition<T> gm_decompose(const FDAlgebra<T>& alg, const IdempotentSet<T>& idems) {
  GmDecomposition<T> d;
  d.unit = validate_complete_set(alg, idems.elements);
  std::vector<Mat<T>> left, right;
  for (const auto& e : d.unit.elements) {
    left.push_back(alg.left_matrix(e));
    right.push_back(alg.right_matrix(e));
  }
  for (Index i = 0; i < d.size(); ++i)
    for (Index j = 0; j < d.size(); ++j) d.blocks.push_back(image<T>(Mat<T>(left[i] * right[j])));
  if (!check_gm_decomposition(alg, d).ok()) throw Error(ErrorCode::Internal, "gm decomposition check failed");
  return d;
}

template <class T>
Vec<T> refine_idempotent(const FDAlgebra<T>& alg, Vec<T> e) {
  const T three = scalar<T>(alg.field(), 3), two = scalar<T>(alg.field(), 2);
  for (int iter = 0; iter < 64; ++iter) {
    Vec<T> e2 = alg.multiply(e, e);
    if (equal<T>(e2, e)) return e;
    Vec<T> e3 = alg.multiply(e2, e);
    e = three * e2 - two * e3;
  }
  throw Error(ErrorCode::LiftDiverged, "idempotent refinement did not converge in 64 steps");
}

template <class T>
IdempotentSet<T> lift_idempotents(const FDAlgebra<T>& alg, const Subspace<T>& ideal, const Quotient<T>& quotient,
                                  const IdempotentSet<T>& residual) {
  if (!nilpotency_index(alg, ideal)) throw Error(ErrorCode::NotNilpotent, "cannot lift through a non-nilpotent ideal");
  validate_complete_set(quotient.algebra, residual.elements);
  std::vector<Vec<T>> lifted;
  Vec<T> s = alg.zero();
  for (const auto& f : residual.elements) {
    Vec<T> e = refine_idempotent(alg, quotient.basis.lift(f));
    // (1 - s) e (1 - s) without needing a unity
    Vec<T> se = alg.multiply(s, e), es = alg.multiply(e, s);
    Vec<T> x = refine_idempotent(alg, Vec<T>(e - se - es + alg.multiply(se, s)));
    if (!equal<T>(Vec<T>(quotient.map * x), f)) throw Error(ErrorCode::Internal, "lift does not project to residue");
    s += x;
    lifted.push_back(std::move(x));
  }
  return validate_complete_set(alg, std::move(lifted));
}

// --- Wedderburn blocks ------------------------------------------------------

namespace {

template <class T>
Vec<T> random_in(const Mat<T>& basis_rows, const FieldDescriptor& f, std::mt19937_64& rng) {
  Vec<T> v = Vec<T>::Constant(basis_rows.cols(), scalar<T>(f, 0));
  for (Index r = 0; r < basis_rows.rows(); ++r) v += random_scalar<T>(f, rng) * Vec<T>(basis_rows.row(r).transpose());
  return v;
}

template <class T>
Subspace<T> times_space(const FDAlgebra<T>& alg, const Vec<T>& e, const Subspace<T>& s) {
  SpanBuilder<T> b(alg.dim());
  for (Index k = 0; k < s.dim(); ++k) b.add(alg.multiply(e, s.basis_vector(k)));
  return b.finish();
}

template <class T>
Polynomial<T> linear(const FieldDescriptor& f, const T& root) {
  return Polynomial<T>({-root, scalar<T>(f, 1)});
}

// Idempotents of k[z] ~ k[x]/(m) for each rational root, plus the remainder.
template <class T>
std::vector<Vec<T>> split_by_roots(const FDAlgebra<T>& alg, const Polynomial<T>& m, const std::vector<T>& rts,
                                   const Vec<T>& z, const Vec<T>& e) {
  std::vector<Vec<T>> pieces;
  Vec<T> rest = e;
  for (const T& lambda : rts) {
    Polynomial<T> h = m.divmod(linear<T>(alg.field(), lambda)).first;
    Polynomial<T> g = h * Polynomial<T>({ScalarTraits<T>::inverse(h(lambda))});
    Vec<T> piece = evaluate(alg, g, z, e);
    rest -= piece;
    pieces.push_back(std::move(piece));
  }
  if (!all_zero<T>(rest)) pieces.push_back(std::move(rest));
  return pieces;
}

}  // namespace

template <class T>
WedderburnData<T> wedderburn_blocks(const FDAlgebra<T>& s, std::mt19937_64& rng) {
  if (!s.has_unity()) throw Error(ErrorCode::NoUnity, "Wedderburn decomposition needs a unity element");
  if (!trace_radical(s).is_trivial()) throw Error(ErrorCode::NotSemisimple, "algebra has a nonzero radical");
  WedderburnData<T> out;
  if (s.dim() == 0) return out;
  const Subspace<T> z = center(s);
  std::vector<Vec<T>> work{s.one()}, done;
  while (!work.empty()) {
    Vec<T> e = work.back();
    work.pop_back();
    Subspace<T> ez = times_space(s, e, z);
    if (ez.dim() == 1) {
      done.push_back(e);
      continue;
    }
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 32) {
        throw Error(ErrorCode::SplittingFailed, "center splitting failed after 32 retries");
      }
      Vec<T> x = random_in<T>(ez.basis(), s.field(), rng);
      Polynomial<T> m = minimal_polynomial(s, x, e);
      if (m.degree() <= 1) continue;
      std::vector<T> rts = roots(m, s.field(), rng);
      if (rts.empty()) {
        throw Error(ErrorCode::NotSplit, "a simple block has center larger than " + s.field().name() +
                                             " (minimal polynomial of degree " + std::to_string(m.degree()) +
                                             " without roots)");
      }
      for (auto& p : split_by_roots(s, m, rts, x, e)) work.push_back(std::move(p));
      break;
    }
  }
  std::sort(done.begin(), done.end(), canonical_less<T>);
  out.central.elements = done;
  for (std::size_t i = 0; i < done.size(); ++i) {
    Subspace<T> block = image<T>(s.left_matrix(done[i]));
    std::vector<std::string> labels;
    for (Index k = 0; k < block.dim(); ++k) labels.push_back("z" + std::to_string(i + 1) + "_" + std::to_string(k + 1));
    out.block_bases.push_back(block.basis());
    out.blocks.push_back(restrict_algebra(s, block.basis(), labels));
  }
  return out;
}

template <class T>
Corner<T> corner_algebra(const FDAlgebra<T>& alg, const Vec<T>& e) {
  Subspace<T> c = image<T>(Mat<T>(alg.left_matrix(e) * alg.right_matrix(e)));
  return {c.basis(), restrict_algebra(alg, c.basis())};
}

namespace {

// A nonzero non-invertible element of the corner e B e, if the candidates reveal one.
template <class T>
std::optional<Vec<T>> zero_divisor(const FDAlgebra<T>& b, const Vec<T>& e, const Mat<T>& corner,
                                   std::mt19937_64& rng) {
  std::vector<Vec<T>> candidates;
  const Index c = corner.rows();
  for (Index i = 0; i < c; ++i) candidates.push_back(corner.row(i).transpose());
  for (Index i = 0; i < c; ++i)
    for (Index j = i + 1; j < c; ++j) {
      candidates.push_back(Vec<T>((corner.row(i) + corner.row(j)).transpose()));
      candidates.push_back(Vec<T>((corner.row(i) - corner.row(j)).transpose()));
    }
  for (int r = 0; r < 64; ++r) candidates.push_back(random_in<T>(corner, b.field(), rng));
  for (const auto& a : candidates) {
    Polynomial<T> m = minimal_polynomial(b, a, e);
    if (m.degree() <= 1) continue;
    Polynomial<T> sq = m.divmod(gcd(m, m.derivative())).first;
    if (sq.degree() < m.degree()) return evaluate(b, sq, a, e);  // nonzero nilpotent
    std::vector<T> rts = roots(m, b.field(), rng);
    if (!rts.empty()) return Vec<T>(a - rts.front() * e);
  }
  return std::nullopt;
}

}  // namespace

template <class T>
MatrixUnits<T> matrix_units(const FDAlgebra<T>& blk, std::mt19937_64& rng) {
  const Index d = blk.dim();
  Index n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(d))));
  if (n * n != d) throw Error(ErrorCode::NotSplit, "simple block of non-square dimension " + std::to_string(d));
  if (!blk.has_unity()) throw Error(ErrorCode::NoUnity, "block without unity");
  if (center(blk).dim() != 1) throw Error(ErrorCode::NotSplit, "simple block with center larger than the field");
  MatrixUnits<T> mu;
  mu.n = n;
  if (n == 1) {
    mu.units.push_back(blk.one());
    return mu;
  }
  std::vector<Vec<T>> work{blk.one()}, prim;
  while (!work.empty()) {
    Vec<T> e = work.back();
    work.pop_back();
    Corner<T> c = corner_algebra(blk, e);
    if (c.basis.rows() == 1) {
      prim.push_back(e);
      continue;
    }
    auto b = zero_divisor(blk, e, c.basis, rng);
    if (!b) {
      throw Error(ErrorCode::SplittingFailed,
                  "no zero divisor found in a corner of dimension " + std::to_string(c.basis.rows()));
    }
    // von Neumann inverse: b y b = b with y in the corner; f = b y is idempotent.
    Mat<T> cols(d, c.basis.rows());
    for (Index k = 0; k < c.basis.rows(); ++k)
      cols.col(k) = blk.multiply(blk.multiply(*b, c.basis.row(k).transpose()), *b);
    auto coeffs = solve<T>(cols, *b);
    if (!coeffs) throw Error(ErrorCode::NotSemisimple, "zero divisor without a regular inverse");
    Vec<T> y = c.basis.transpose() * *coeffs;
    Vec<T> f = blk.multiply(*b, y);
    work.push_back(f);
    work.push_back(Vec<T>(e - f));
  }
  if (static_cast<Index>(prim.size()) != n) throw Error(ErrorCode::Internal, "primitive idempotent count mismatch");
  std::sort(prim.begin(), prim.end(), canonical_less<T>);

  std::vector<Vec<T>> to1(n), from1(n);  // E_k1, E_1k
  to1[0] = from1[0] = prim[0];
  for (Index k = 1; k < n; ++k) {
    Subspace<T> up = image<T>(Mat<T>(blk.left_matrix(prim[0]) * blk.right_matrix(prim[k])));
    Subspace<T> down = image<T>(Mat<T>(blk.left_matrix(prim[k]) * blk.right_matrix(prim[0])));
    if (up.dim() != 1 || down.dim() != 1) throw Error(ErrorCode::Internal, "off-diagonal corner is not 1-dimensional");
    Vec<T> u = up.basis_vector(0), v = down.basis_vector(0);
    Vec<T> w = blk.multiply(u, v);  // c E_11
    auto c = BasisCoordinates<T>(Mat<T>(prim[0].transpose())).coordinates(w);
    if (!c || is_zero((*c)(0))) throw Error(ErrorCode::Internal, "off-diagonal units do not compose");
    from1[k] = u;
    to1[k] = ScalarTraits<T>::inverse((*c)(0)) * v;
  }
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) mu.units.push_back(blk.multiply(to1[a], from1[b]));
  // E_ab E_cd = delta_bc E_ad and sum E_aa = 1
  Vec<T> diag = blk.zero();
  for (Index a = 0; a < n; ++a) {
    diag += mu(a, a);
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        for (Index e = 0; e < n; ++e) {
          Vec<T> p = blk.multiply(mu(a, b), mu(c, e));
          if (!(b == c ? equal<T>(p, mu(a, e)) : all_zero<T>(p))) {
            throw Error(ErrorCode::Internal, "matrix unit relations fail");
          }
        }
  }
  if (!equal<T>(diag, blk.one())) throw Error(ErrorCode::Internal, "diagonal matrix units do not sum to unity");
  return mu;
}

template <class T>
IdempotentSet<T> merge_idempotents(const IdempotentSet<T>& idems, const std::vector<std::vector<Index>>& partition) {
  std::vector<int> seen(static_cast<std::size_t>(idems.size()), 0);
  IdempotentSet<T> out;
  for (const auto& group : partition) {
    if (group.empty()) throw Error(ErrorCode::BadPartition, "empty group");
    Vec<T> s = Vec<T>::Zero(idems.elements.empty() ? 0 : idems[0].size());
    for (Index i : group) {
      if (i < 0 || i >= idems.size()) throw Error(ErrorCode::BadPartition, "index " + std::to_string(i) + " out of range");
      if (seen[static_cast<std::size_t>(i)]++) throw Error(ErrorCode::BadPartition, "index " + std::to_string(i) + " repeated");
      s += idems[i];
    }
    out.elements.push_back(std::move(s));
  }
  for (int c : seen)
    if (c == 0) throw Error(ErrorCode::BadPartition, "partition does not cover every index");
  return out;
}

std::vector<std::vector<Index>> tail_merge_partition(Index n, Index m) {
  if (m < 1 || m > n) {
    throw Error(ErrorCode::MTooLarge, "m = " + std::to_string(m) + " must lie in 1.." + std::to_string(n));
  }
  std::vector<std::vector<Index>> p;
  for (Index i = 0; i + 1 < m; ++i) p.push_back({i});
  std::vector<Index> last;
  for (Index i = m - 1; i < n; ++i) last.push_back(i);
  p.push_back(last);
  return p;
}

template <class T>
bool is_primitive(const FDAlgebra<T>& alg, const Vec<T>& e, std::mt19937_64& rng) {
  if (all_zero<T>(e)) return false;
  if (!equal<T>(alg.multiply(e, e), e)) throw Error(ErrorCode::InvalidIdempotentSet, "element is not idempotent");
  Corner<T> c = corner_algebra(alg, e);
  const FDAlgebra<T>& ca = c.algebra;
  const Index d = ca.dim();
  const auto p = alg.field().characteristic;
  if (p != 0 && d * std::log2(static_cast<double>(p)) <= 20.0) {
    std::vector<std::int64_t> digits(static_cast<std::size_t>(d), 0);
    for (;;) {
      Vec<T> x(d);
      for (Index k = 0; k < d; ++k) x(k) = scalar<T>(alg.field(), static_cast<long>(digits[static_cast<std::size_t>(k)]));
      if (!all_zero<T>(x) && !equal<T>(x, ca.one()) && equal<T>(ca.multiply(x, x), x)) return false;
      Index k = 0;
      while (k < d && ++digits[static_cast<std::size_t>(k)] == static_cast<std::int64_t>(p)) digits[static_cast<std::size_t>(k++)] = 0;
      if (k == d) return true;
    }
  }
  RadicalData<T> r = radical(ca);
  const FDAlgebra<T>& s = r.quotient.algebra;
  if (s.dim() == 1) return true;
  const Subspace<T> z = center(s);
  if (z.dim() > 1) {
    try {
      if (wedderburn_blocks(s, rng).n_wa() > 1) return false;
    } catch (const Error& err) {
      // A commutative s = k[x]/(m) with m of degree <= 3 and no roots is a field.
      if (err.code() != ErrorCode::NotSplit || s.dim() != z.dim() || z.dim() > 3) throw;
      for (int attempt = 0; attempt < 32; ++attempt) {
        Polynomial<T> m = minimal_polynomial(s, random_in<T>(z.basis(), s.field(), rng), s.one());
        if (m.degree() == z.dim()) return roots(m, s.field(), rng).empty();
      }
      throw;
    }
  }
  try {
    return matrix_units(s, rng).n == 1;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::NotSplit) return true;  // a division algebra: local
    throw;
  }
}

#define PATHALG_INSTANTIATE_IDEMPOTENTS(T)                                                                        \
  template struct IdempotentSet<T>;                                                                                \
  template bool canonical_less<T>(const Vec<T>&, const Vec<T>&);                                                   \
  template IdempotentSet<T> validate_complete_set<T>(const FDAlgebra<T>&, std::vector<Vec<T>>);                    \
  template GmCheck check_gm_decomposition<T>(const FDAlgebra<T>&, const GmDecomposition<T>&);                      \
  template GmDecomposition<T> gm_decompose<T>(const FDAlgebra<T>&, const IdempotentSet<T>&);                       \
  template Vec<T> refine_idempotent<T>(const FDAlgebra<T>&, Vec<T>);                                               \
  template IdempotentSet<T> lift_idempotents<T>(const FDAlgebra<T>&, const Subspace<T>&, const Quotient<T>&,       \
                                                const IdempotentSet<T>&);                                          \
  template WedderburnData<T> wedderburn_blocks<T>(const FDAlgebra<T>&, std::mt19937_64&);                          \
  template Corner<T> corner_algebra<T>(const FDAlgebra<T>&, const Vec<T>&);                                        \
  template MatrixUnits<T> matrix_units<T>(const FDAlgebra<T>&, std::mt19937_64&);                                  \
  template IdempotentSet<T> merge_idempotents<T>(const IdempotentSet<T>&, const std::vector<std::vector<Index>>&); \
  template bool is_primitive<T>(const FDAlgebra<T>&, const Vec<T>&, std::mt19937_64&);

PATHALG_INSTANTIATE_IDEMPOTENTS(Rational)
PATHALG_INSTANTIATE_IDEMPOTENTS(Modp)

}  // namespace pathalg
