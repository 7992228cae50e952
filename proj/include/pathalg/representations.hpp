// Module systems over a generalized matrix algebra, local unitary modules,
// quiver representations of (D, Omega, rho) and the functors between them.
//
// Arrow convention: an arrow x: i -> j makes the path x lie in e_i Q e_j, so
// under left action it maps V_j to V_i. Its map f_x is stored as a
// dim V_i x dim V_j matrix and a path a_0 x_1 a_1 ... x_n a_n acts by
// a_0 f_{x_1} a_1 ... f_{x_n} a_n : V_{i_n} -> V_{i_0}.
#ifndef PATHALG_REPRESENTATIONS_HPP
#define PATHALG_REPRESENTATIONS_HPP

#include <vector>

#include "pathalg/gpa.hpp"
#include "pathalg/idempotents.hpp"

namespace pathalg {

/// {M_i} with maps A_ij x M_j -> M_i. actions[i * n + j][r] is the matrix
/// (dims[i] x dims[j]) of the r-th echelon basis row of A_ij.
template <class T>
struct ModuleSystem {
  FDAlgebra<T> algebra;
  GmDecomposition<T> base;
  std::vector<Index> dims;
  std::vector<std::vector<Mat<T>>> actions;

  Index size() const { return base.size(); }
  Index total_dim() const;
  Index offset(Index i) const;
  const std::vector<Mat<T>>& action(Index i, Index j) const { return actions[static_cast<std::size_t>(i * size() + j)]; }
};

/// Def 2.1: shapes, (ca)x = c(ax) on block bases and e_jj acting as the
/// identity. Throws InvalidModule.
template <class T>
void validate_module_system(const ModuleSystem<T>& ms);

/// Matrix of a in A_ij on M_j -> M_i (DimensionMismatch if a is not in A_ij).
template <class T>
Mat<T> block_action(const ModuleSystem<T>& ms, Index i, Index j, const Vec<T>& a);

/// The zero system over a decomposition.
template <class T>
ModuleSystem<T> zero_module_system(const FDAlgebra<T>& algebra, const GmDecomposition<T>& base);

/// A module over an algebra with a designated complete set of idempotents;
/// action[b] is the matrix of the b-th basis element.
template <class T>
struct LocalUnitaryModule {
  FDAlgebra<T> algebra;
  IdempotentSet<T> unit;
  Index dim = 0;
  std::vector<Mat<T>> action;

  /// Matrix of an arbitrary element.
  Mat<T> act(const Vec<T>& x) const;
};

/// Representation on basis pairs and sum e_i acting as the identity.
/// Throws InvalidModule.
template <class T>
void validate_local_module(const LocalUnitaryModule<T>& m);

/// Left multiplication on A itself.
template <class T>
LocalUnitaryModule<T> regular_module(const FDAlgebra<T>& algebra, const IdempotentSet<T>& unit);

/// H: M = sum M_i with (a x)_i = sum_s a_is x_s (Lemma 2.3(ii)).
template <class T>
LocalUnitaryModule<T> h_assemble(const ModuleSystem<T>& ms);

/// G: M_i = e_i M on the reduced echelon basis of the column space of e_i.
template <class T>
ModuleSystem<T> g_split(const LocalUnitaryModule<T>& m);

/// Columns: the bases of e_1 M, ..., e_n M used by g_split. For P this matrix,
/// h_assemble(g_split(m)) acts by P^-1 m.act(x) P.
template <class T>
Mat<T> split_basis(const LocalUnitaryModule<T>& m);

template <class T>
struct QuiverRepresentation {
  Quiver quiver;
  std::vector<FDAlgebra<T>> family;
  std::vector<Index> dims;
  std::vector<std::vector<Mat<T>>> vertex_actions;  // per vertex, per Omega basis element
  std::vector<Mat<T>> arrow_maps;                   // x: i -> j gives dims[i] x dims[j]

  Index vertex_dim(Index v) const { return dims[static_cast<std::size_t>(v)]; }
};

/// Every V_i is a unitary Omega_i-module and arrow maps have the right shape.
/// Throws InvalidModule.
template <class T>
void validate_representation(const QuiverRepresentation<T>& rep);

template <class T>
QuiverRepresentation<T> zero_representation(const Quiver& quiver, const std::vector<FDAlgebra<T>>& family);

/// Lemma 2.6(i): a_0 f_{x_1} a_1 ... f_{x_n} a_n.
template <class T>
Mat<T> path_action(const QuiverRepresentation<T>& rep, const BasisPath& p);

/// Action of a path combination; terms of any length are evaluated.
template <class T>
Mat<T> combination_action(const QuiverRepresentation<T>& rep, const PathCombination<T>& c);

/// The module system over the gm structure of gpa. The representation must
/// kill every relation and every path of length t: RelationNotSatisfied
/// names the relation (or path) and a vector it does not annihilate.
template <class T>
ModuleSystem<T> rep_to_module_system(const QuiverRepresentation<T>& rep, const TruncatedGPA<T>& gpa);

/// Lemma 2.6(ii): V_i = M_i, Omega_i acting through length-0 paths and f_x
/// the action of x with unity labels at both ends.
template <class T>
QuiverRepresentation<T> module_system_to_rep(const ModuleSystem<T>& ms, const TruncatedGPA<T>& gpa);

/// Data equality: same dims and identical matrices.
template <class T>
bool same_data(const ModuleSystem<T>& a, const ModuleSystem<T>& b);
template <class T>
bool same_data(const QuiverRepresentation<T>& a, const QuiverRepresentation<T>& b);

}  // namespace pathalg

#endif  // PATHALG_REPRESENTATIONS_HPP
