// Generalized matrix gradations A_g = sum_{phi(i) = phi(j) + g} A_ij by a
// finite abelian group, and the Z_m gradations obtained by merging idempotents.
#ifndef PATHALG_GRADING_HPP
#define PATHALG_GRADING_HPP

#include <random>
#include <string>
#include <vector>

#include "pathalg/gpa.hpp"
#include "pathalg/idempotents.hpp"

namespace pathalg {

/// Elements 0..order-1 with 0 the identity; table[g * order + h] = g + h.
struct AbelianGroup {
  Index order = 1;
  std::vector<Index> table{0};

  static AbelianGroup cyclic(Index m);
  /// Checks identity 0, inverses, commutativity and associativity
  /// (DimensionMismatch otherwise).
  static AbelianGroup from_table(Index order, std::vector<Index> table);

  Index add(Index g, Index h) const { return table[static_cast<std::size_t>(g * order + h)]; }
  Index negate(Index g) const;
};

template <class T>
struct GmGrading {
  AbelianGroup group;
  GmDecomposition<T> decomposition;
  std::vector<Index> vertex_map;     // phi: I -> G
  std::vector<Subspace<T>> components;  // A_g for g = 0..order-1

  const Subspace<T>& component(Index g) const { return components[static_cast<std::size_t>(g)]; }
};

struct GradingCheck {
  bool direct_sum = false;      // dims add up and the components span A
  bool multiplicative = false;  // A_g A_h in A_{g+h} on all basis pairs
  bool ok() const { return direct_sum && multiplicative; }
};

template <class T>
GradingCheck check_grading(const FDAlgebra<T>& algebra, const GmGrading<T>& grading);

/// Prop 3.17. SizeMismatch unless |I| = |G| = |phi|; NotBijective unless phi is
/// a bijection onto G. The result is checked (Internal on failure).
template <class T>
GmGrading<T> gm_grade(const FDAlgebra<T>& algebra, const GmDecomposition<T>& decomposition, const AbelianGroup& group,
                      const std::vector<Index>& vertex_map);

/// Prop 3.18(ii): merge the lifted central idempotents of Lambda / r to m
/// groups ({0}, ..., {m-2}, {m-1, ..., n-1}) and grade by Z_m with phi = id.
/// MTooLarge unless 1 <= m <= n_WA.
template <class T>
GmGrading<T> grade_via_merge(const FDAlgebra<T>& algebra, Index m, std::mt19937_64& rng);

/// Prop 3.18(i): the same with the vertex idempotents of a GPA, m <= |D_0|.
template <class T>
GmGrading<T> grade_gpa_via_merge(const TruncatedGPA<T>& gpa, Index m);

}  // namespace pathalg

#endif  // PATHALG_GRADING_HPP
