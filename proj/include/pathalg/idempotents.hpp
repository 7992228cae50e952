// Complete sets of orthogonal idempotents, the generalized-matrix block
// decomposition e_i A e_j, lifting modulo nilpotent ideals, and Wedderburn
// block data of semisimple algebras.
#ifndef PATHALG_IDEMPOTENTS_HPP
#define PATHALG_IDEMPOTENTS_HPP

#include <random>
#include <string>
#include <vector>

#include "pathalg/algebra.hpp"

namespace pathalg {

template <class T>
struct IdempotentSet {
  std::vector<Vec<T>> elements;

  Index size() const { return static_cast<Index>(elements.size()); }
  const Vec<T>& operator[](Index i) const { return elements[static_cast<std::size_t>(i)]; }
  Vec<T> sum() const;
};

/// Checks e_i e_j = delta_ij e_i, e_i != 0, and that sum e_i is a two-sided
/// unity; when the algebra has a unity, also that the sum equals it. Throws
/// InvalidIdempotentSet naming the failed condition.
template <class T>
IdempotentSet<T> validate_complete_set(const FDAlgebra<T>& alg, std::vector<Vec<T>> candidates);

template <class T>
struct GmDecomposition {
  IdempotentSet<T> unit;
  std::vector<Subspace<T>> blocks;  // row major, blocks[i * size + j] = e_i A e_j

  Index size() const { return unit.size(); }
  const Subspace<T>& block(Index i, Index j) const { return blocks[static_cast<std::size_t>(i * size() + j)]; }
};

struct GmCheck {
  bool direct_sum = false;      // sum of block dims = dim A and the blocks span A
  bool block_products = false;  // A_ij A_st in delta_js A_it
  bool ok() const { return direct_sum && block_products; }
};

template <class T>
GmCheck check_gm_decomposition(const FDAlgebra<T>& alg, const GmDecomposition<T>& d);

/// Blocks e_i A e_j; validates the set first and the result after.
template <class T>
GmDecomposition<T> gm_decompose(const FDAlgebra<T>& alg, const IdempotentSet<T>& idems);

/// Lifts a complete set of the quotient alg / ideal through the nilpotent
/// ideal: preimage, refinement e <- 3e^2 - 2e^3, then sequential
/// orthogonalization against the idempotents already lifted.
template <class T>
IdempotentSet<T> lift_idempotents(const FDAlgebra<T>& alg, const Subspace<T>& ideal, const Quotient<T>& quotient,
                                  const IdempotentSet<T>& residual);

/// Refines one element congruent to an idempotent modulo a nilpotent ideal.
template <class T>
Vec<T> refine_idempotent(const FDAlgebra<T>& alg, Vec<T> e);

template <class T>
struct WedderburnData {
  IdempotentSet<T> central;           // central primitive idempotents, canonical order
  std::vector<Mat<T>> block_bases;    // rows: basis of z_i S in S coordinates
  std::vector<FDAlgebra<T>> blocks;   // z_i S as algebras with unity z_i
  Index n_wa() const { return central.size(); }
};

/// Central primitive idempotents by splitting the center with minimal
/// polynomials of random central elements. Requires unity (NoUnity) and zero
/// radical (NotSemisimple). A piece whose center has no k-rational
/// eigenvalue is a non-split block (NotSplit); more than 32 degenerate draws
/// on one piece give SplittingFailed.
template <class T>
WedderburnData<T> wedderburn_blocks(const FDAlgebra<T>& semisimple, std::mt19937_64& rng);

/// Full matrix units u[a * n + b] = E_ab of a simple algebra B = M_n(k).
template <class T>
struct MatrixUnits {
  Index n = 0;
  std::vector<Vec<T>> units;
  const Vec<T>& operator()(Index a, Index b) const { return units[static_cast<std::size_t>(a * n + b)]; }
};

/// Throws NotSplit when B is not a full matrix algebra over the ground field
/// (center bigger than k, or dimension not a square) and SplittingFailed when
/// no zero divisor turns up among the candidates tried.
template <class T>
MatrixUnits<T> matrix_units(const FDAlgebra<T>& block, std::mt19937_64& rng);

/// {sum of e_i over each group}; throws BadPartition unless the groups cover
/// every index exactly once.
template <class T>
IdempotentSet<T> merge_idempotents(const IdempotentSet<T>& idems, const std::vector<std::vector<Index>>& partition);

/// The m-group partition of Cor 3.11(iii): {0}, ..., {m-2}, {m-1, ..., n-1}.
std::vector<std::vector<Index>> tail_merge_partition(Index n, Index m);

/// e A e with basis rows spanning it and e as unity.
template <class T>
struct Corner {
  Mat<T> basis;
  FDAlgebra<T> algebra;
};

template <class T>
Corner<T> corner_algebra(const FDAlgebra<T>& alg, const Vec<T>& e);

/// e is primitive iff e A e has no idempotents besides 0 and e. Decided by
/// enumeration for small finite corners (p^dim <= 2^20), otherwise from the
/// radical and Wedderburn data of the corner.
template <class T>
bool is_primitive(const FDAlgebra<T>& alg, const Vec<T>& e, std::mt19937_64& rng);

/// Canonical order on elements: first nonzero coordinate, then coordinates.
template <class T>
bool canonical_less(const Vec<T>& a, const Vec<T>& b);

}  // namespace pathalg

#endif  // PATHALG_IDEMPOTENTS_HPP
