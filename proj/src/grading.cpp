#include "pathalg/grading.hpp"

#include <string>

namespace pathalg {

AbelianGroup AbelianGroup::cyclic(Index m) {
  if (m < 1) throw Error(ErrorCode::SizeMismatch, "Z_m needs m >= 1");
  AbelianGroup g;
  g.order = m;
  g.table.resize(static_cast<std::size_t>(m * m));
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) g.table[static_cast<std::size_t>(a * m + b)] = (a + b) % m;
  return g;
}

AbelianGroup AbelianGroup::from_table(Index order, std::vector<Index> table) {
  auto fail = [](const std::string& s) { throw Error(ErrorCode::DimensionMismatch, "group table: " + s); };
  if (order < 1 || static_cast<Index>(table.size()) != order * order) fail("expected order^2 entries");
  AbelianGroup g;
  g.order = order;
  g.table = std::move(table);
  for (Index x : g.table)
    if (x < 0 || x >= order) fail("entry out of range");
  for (Index a = 0; a < order; ++a) {
    if (g.add(0, a) != a) fail("0 is not the identity");
    bool has_inverse = false;
    for (Index b = 0; b < order; ++b) {
      if (g.add(a, b) != g.add(b, a)) fail("not commutative");
      if (g.add(a, b) == 0) has_inverse = true;
      for (Index c = 0; c < order; ++c)
        if (g.add(g.add(a, b), c) != g.add(a, g.add(b, c))) fail("not associative");
    }
    if (!has_inverse) fail("element " + std::to_string(a) + " has no inverse");
  }
  return g;
}

Index AbelianGroup::negate(Index g) const {
  for (Index h = 0; h < order; ++h)
    if (add(g, h) == 0) return h;
  throw Error(ErrorCode::Internal, "group element without inverse");
}

template <class T>
GradingCheck check_grading(const FDAlgebra<T>& algebra, const GmGrading<T>& grading) {
  GradingCheck c;
  const Index order = grading.group.order;
  Index total = 0;
  Subspace<T> sum(algebra.dim());
  for (const auto& a : grading.components) {
    total += a.dim();
    sum = sum + a;
  }
  c.direct_sum = static_cast<Index>(grading.components.size()) == order && total == algebra.dim() &&
                 sum.dim() == algebra.dim();
  c.multiplicative = c.direct_sum;
  for (Index g = 0; c.multiplicative && g < order; ++g)
    for (Index h = 0; c.multiplicative && h < order; ++h) {
      const Subspace<T>& target = grading.component(grading.group.add(g, h));
      for (Index p = 0; c.multiplicative && p < grading.component(g).dim(); ++p)
        for (Index q = 0; c.multiplicative && q < grading.component(h).dim(); ++q)
          c.multiplicative = target.contains(
              algebra.multiply(grading.component(g).basis_vector(p), grading.component(h).basis_vector(q)));
    }
  return c;
}

template <class T>
GmGrading<T> gm_grade(const FDAlgebra<T>& algebra, const GmDecomposition<T>& decomposition, const AbelianGroup& group,
                      const std::vector<Index>& vertex_map) {
  const Index n = decomposition.size();
  if (static_cast<Index>(vertex_map.size()) != n || group.order != n) {
    throw Error(ErrorCode::SizeMismatch, "|I| = " + std::to_string(n) + ", |G| = " + std::to_string(group.order) +
                                             ", |phi| = " + std::to_string(vertex_map.size()));
  }
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (Index x : vertex_map) {
    if (x < 0 || x >= n || hit[x]) throw Error(ErrorCode::NotBijective, "vertex map is not a bijection onto G");
    hit[x] = true;
  }
  GmGrading<T> gr{group, decomposition, vertex_map, std::vector<Subspace<T>>(static_cast<std::size_t>(n), Subspace<T>(algebra.dim()))};
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      // phi(i) = phi(j) + g
      const Index g = group.add(vertex_map[i], group.negate(vertex_map[j]));
      gr.components[g] = gr.components[g] + decomposition.block(i, j);
    }
  if (!check_grading(algebra, gr).ok()) throw Error(ErrorCode::Internal, "gm gradation fails its checks");
  return gr;
}

namespace {

template <class T>
GmGrading<T> grade_merged(const FDAlgebra<T>& algebra, const IdempotentSet<T>& idems, Index m) {
  const Index n = idems.size();
  if (m < 1 || m > n) {
    throw Error(ErrorCode::MTooLarge, "m = " + std::to_string(m) + " needs 1 <= m <= " + std::to_string(n));
  }
  auto merged = merge_idempotents(idems, tail_merge_partition(n, m));
  std::vector<Index> id(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) id[i] = i;
  return gm_grade(algebra, gm_decompose(algebra, merged), AbelianGroup::cyclic(m), id);
}

}  // namespace

template <class T>
GmGrading<T> grade_via_merge(const FDAlgebra<T>& algebra, Index m, std::mt19937_64& rng) {
  if (!algebra.has_unity() || algebra.dim() == 0) throw Error(ErrorCode::NoUnity, "grading needs a nonzero unital algebra");
  RadicalData<T> rad = radical(algebra);
  WedderburnData<T> w = wedderburn_blocks(rad.quotient.algebra, rng);
  if (m > w.n_wa()) {
    throw Error(ErrorCode::MTooLarge, "m = " + std::to_string(m) + " exceeds n_WA = " + std::to_string(w.n_wa()));
  }
  return grade_merged(algebra, lift_idempotents(algebra, rad.radical, rad.quotient, w.central), m);
}

template <class T>
GmGrading<T> grade_gpa_via_merge(const TruncatedGPA<T>& gpa, Index m) {
  if (m > gpa.quiver().num_vertices()) {
    throw Error(ErrorCode::MTooLarge,
                "m = " + std::to_string(m) + " exceeds |D_0| = " + std::to_string(gpa.quiver().num_vertices()));
  }
  return grade_merged(gpa.algebra(), gpa.gm_unit(), m);
}

#define PATHALG_INSTANTIATE_GRADING(T)                                                                     \
  template GradingCheck check_grading<T>(const FDAlgebra<T>&, const GmGrading<T>&);                       \
  template GmGrading<T> gm_grade<T>(const FDAlgebra<T>&, const GmDecomposition<T>&, const AbelianGroup&,  \
                                    const std::vector<Index>&);                                           \
  template GmGrading<T> grade_via_merge<T>(const FDAlgebra<T>&, Index, std::mt19937_64&);                 \
  template GmGrading<T> grade_gpa_via_merge<T>(const TruncatedGPA<T>&, Index);

PATHALG_INSTANTIATE_GRADING(Rational)
PATHALG_INSTANTIATE_GRADING(Modp)

}  // namespace pathalg
