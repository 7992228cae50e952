// Wedderburn-Malcev splittings and the presentation of a split algebra as a
// generalized path algebra with weak relations: Lambda = k(D, Omega) / N.
#ifndef PATHALG_PRESENTATION_HPP
#define PATHALG_PRESENTATION_HPP

#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "pathalg/gpa.hpp"
#include "pathalg/idempotents.hpp"

namespace pathalg {

template <class T>
struct Splitting {
  FDAlgebra<T> algebra;
  RadicalData<T> radical;        // r, t and S = Lambda / r
  WedderburnData<T> wedderburn;  // blocks of S
  /// Matrix units of every block of S in S coordinates, and their lifts in Lambda.
  std::vector<MatrixUnits<T>> units;
  std::vector<MatrixUnits<T>> lifted_units;
  IdempotentSet<T> central;  // lifted central idempotents, one per block
  Mat<T> section;            // xi: S -> Lambda, dim Lambda x dim S
  Subspace<T> lifted;        // A = xi(S)
  Mat<T> project_lifted;     // xi pi, the projector onto A along r

  const FDAlgebra<T>& quotient() const { return radical.quotient.algebra; }
  const Mat<T>& pi() const { return radical.quotient.map; }
  int nilpotency_index() const { return radical.nilpotency_index; }
};

/// Lambda = A + r with A spanned by lifted matrix units. Needs a unity and a
/// split semisimple quotient (NotSplit / SplittingFailed otherwise). Verifies
/// A ∩ r = 0, dim A + dim r = dim Lambda, xi multiplicative and pi xi = id.
template <class T>
Splitting<T> compute_splitting(const FDAlgebra<T>& algebra, std::mt19937_64& rng);

template <class T>
struct Presentation {
  Quiver quiver;
  std::vector<FDAlgebra<T>> family;    // Omega_ii = e_ii S e_ii on matrix-unit bases
  IdempotentSet<T> idempotents;        // e'_ii in A
  std::vector<bool> relifted;          // whether a supplied e'_ii had an r-component
  std::vector<Mat<T>> vertex_maps;     // xi restricted to Omega_ii, dim Lambda x dim Omega_ii
  std::vector<Vec<T>> arrow_elements;  // B_ij inside e'_ii r e'_jj
  RelationMode mode = RelationMode::Weak;
  int truncation = 1;                  // t with r^t = 0
  /// phi on k(D, Omega) / J^t. Every path of length t was checked to map to
  /// zero, so N = ker phi + J^t and kernel holds N modulo J^t.
  TruncatedGPA<T> free;
  Mat<T> phi;
  Subspace<T> kernel;
  Index stratum_t = 0;  // labelled paths of length t, all inside N
  /// The echelon basis of kernel as relations for the t-truncation.
  RelationSet<T> relations;
  Index n_wa = 0;
};

/// Thm 3.8. The idempotents default to the lifted central idempotents of
/// Lambda / r; a supplied complete set must be central modulo r and is
/// replaced by its image under xi pi, which lies in A.
template <class T>
Presentation<T> extract_presentation(const FDAlgebra<T>& algebra, std::mt19937_64& rng,
                                     const std::optional<IdempotentSet<std::type_identity_t<T>>>& idempotents = std::nullopt);

/// Cor 3.14: every block of Lambda / r must be k (NotElementary); the kernel
/// is certified to lie in J^2.
template <class T>
Presentation<T> extract_elementary_presentation(const FDAlgebra<T>& algebra, std::mt19937_64& rng);

struct PresentationReport {
  Index algebra_dim = 0;
  Index presented_dim = 0;
  Index vertices = 0;
  Index arrows = 0;
  Index relations = 0;
  RelationMode mode = RelationMode::Weak;
  bool dims_match = false;
  bool homomorphism = false;  // phi descends to the quotient and is multiplicative
  bool bijective = false;
  bool arrow_counts = false;  // |arrows i -> j| = dim e_ii (r / r^2) e_jj
  bool jt_in_n = false;
  bool n_in_j = false;
  bool n_in_j2 = false;
  std::vector<std::string> failures;

  bool ok() const {
    return dims_match && homomorphism && bijective && arrow_counts && jt_in_n && n_in_j &&
           (mode == RelationMode::Weak || n_in_j2);
  }
};

/// Rebuilds k(D, Omega, rho) from the presentation and checks it against the
/// target. Failures are reported, not thrown.
template <class T>
PresentationReport verify_presentation(const Presentation<T>& p, const FDAlgebra<T>& target);

/// Number of simple blocks of Lambda / r.
template <class T>
Index wedderburn_artin_number(const FDAlgebra<T>& algebra, std::mt19937_64& rng);

}  // namespace pathalg

#endif  // PATHALG_PRESENTATION_HPP
