// Quivers with semisimple vertex algebras and the truncated generalized path
// algebra k(D, Omega) / ((rho) + J^t) on a basis of labelled paths.
#ifndef PATHALG_GPA_HPP
#define PATHALG_GPA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathalg/algebra.hpp"
#include "pathalg/idempotents.hpp"

namespace pathalg {

struct Quiver {
  struct Arrow {
    std::string name;
    Index source = 0;
    Index target = 0;
  };

  std::string name;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  Index num_vertices() const { return static_cast<Index>(vertices.size()); }
  Index num_arrows() const { return static_cast<Index>(arrows.size()); }
  std::optional<Index> vertex_index(const std::string& v) const;
  std::optional<Index> arrow_index(const std::string& a) const;
  /// Nonempty vertex set, endpoints in range, unique names (DuplicateName).
  void validate() const;
};

/// A path i_0 -x_1-> i_1 ... -x_n-> i_n with one basis label of Omega_{i_p}
/// at every vertex it passes. Length-0 paths are single vertex labels.
struct BasisPath {
  std::vector<Index> vertices;
  std::vector<Index> arrows;
  std::vector<Index> labels;

  Index length() const { return static_cast<Index>(arrows.size()); }
  Index source() const { return vertices.front(); }
  Index target() const { return vertices.back(); }

  /// (length, arrow sequence, start vertex, label sequence).
  friend bool operator<(const BasisPath& a, const BasisPath& b);
  friend bool operator==(const BasisPath& a, const BasisPath& b) {
    return a.vertices == b.vertices && a.arrows == b.arrows && a.labels == b.labels;
  }
};

template <class T>
struct PathTerm {
  BasisPath path;
  T coeff;
};

template <class T>
using PathCombination = std::vector<PathTerm<T>>;

enum class RelationMode { Weak, Strict };

template <class T>
struct RelationSet {
  std::vector<std::string> names;
  std::vector<PathCombination<T>> elements;
  int truncation = 2;
  RelationMode mode = RelationMode::Weak;
};

struct GpaOptions {
  Index max_paths = 50000;
};

template <class T>
class TruncatedGPA {
 public:
  const Quiver& quiver() const { return quiver_; }
  const std::vector<FDAlgebra<T>>& family() const { return family_; }
  const FDAlgebra<T>& omega(Index v) const { return family_[static_cast<std::size_t>(v)]; }
  const RelationSet<T>& relations() const { return relations_; }
  int truncation() const { return relations_.truncation; }

  /// k(D, Omega) / J^t on all labelled paths of length < t.
  const FDAlgebra<T>& free_algebra() const { return free_; }
  const std::vector<BasisPath>& free_paths() const { return free_paths_; }
  /// Ideal generated by the relations inside free_algebra().
  const Subspace<T>& relation_ideal() const { return relation_ideal_; }
  const Quotient<T>& quotient() const { return quotient_; }

  /// The quotient algebra; its basis is the surviving subset paths().
  const FDAlgebra<T>& algebra() const { return quotient_.algebra; }
  Index dim() const { return algebra().dim(); }
  const std::vector<BasisPath>& paths() const { return paths_; }
  const Subspace<T>& arrow_ideal() const { return arrow_ideal_; }
  const IdempotentSet<T>& gm_unit() const { return gm_unit_; }

  std::optional<Index> free_index(const BasisPath& p) const;
  /// Coordinates in free_algebra(); paths of length >= t contribute nothing.
  Vec<T> free_vector(const PathCombination<T>& c) const;
  /// Coordinates in algebra().
  Vec<T> element(const PathCombination<T>& c) const { return quotient_.map * free_vector(c); }
  Vec<T> path_element(const BasisPath& p) const { return element({{p, scalar<T>(field(), 1)}}); }
  const FieldDescriptor& field() const { return free_.field(); }

  std::string path_name(const BasisPath& p) const;

  template <class U>
  friend TruncatedGPA<U> build_truncated_gpa(const Quiver&, const std::vector<FDAlgebra<U>>&, const RelationSet<U>&,
                                            GpaOptions);

 private:
  Quiver quiver_;
  std::vector<FDAlgebra<T>> family_;
  RelationSet<T> relations_;
  std::vector<BasisPath> free_paths_;
  std::map<BasisPath, Index> free_index_;
  FDAlgebra<T> free_;
  Subspace<T> relation_ideal_;
  Quotient<T> quotient_;
  std::vector<BasisPath> paths_;
  Subspace<T> arrow_ideal_;
  IdempotentSet<T> gm_unit_;
};

/// Rule (*) on path combinations, truncation and relation normal form included.
template <class T>
Vec<T> path_multiply(const TruncatedGPA<T>& gpa, const PathCombination<T>& x, const PathCombination<T>& y) {
  return gpa.algebra().multiply(gpa.element(x), gpa.element(y));
}

/// Number of labelled paths of length < t (PathExplosion beyond the cap is not
/// raised here; this is the Cor 3.13(i) bound).
template <class T>
Index count_free_paths(const Quiver& q, const std::vector<FDAlgebra<T>>& family, int t);

/// All labelled paths of exactly the given length, in basis order.
template <class T>
std::vector<BasisPath> enumerate_paths(const Quiver& q, const std::vector<FDAlgebra<T>>& family, Index length,
                                       Index cap);

/// Syntactic checks of the relation set against the quiver and family.
template <class T>
void check_relations(const Quiver& q, const std::vector<FDAlgebra<T>>& family, const RelationSet<T>& rel);

template <class T>
TruncatedGPA<T> build_truncated_gpa(const Quiver& q, const std::vector<FDAlgebra<T>>& family,
                                    const RelationSet<T>& relations, GpaOptions options = {});

struct CofinalCertificate {
  bool certified = false;
  std::optional<BasisPath> witness;  // a length-t path surviving at level t + 1
};

/// Whether J^t lies in (rho) + J^(t+1), checked in the (t+1)-truncation.
template <class T>
CofinalCertificate check_weak_relations_cofinal(const Quiver& q, const std::vector<FDAlgebra<T>>& family,
                                                const RelationSet<T>& relations, GpaOptions options = {});

struct RadicalComparison {
  bool equal = false;
  Index radical_dim = 0;
  Index arrow_ideal_dim = 0;
};

/// Lemma 3.6: radical(Q) equals the image of the arrow ideal.
template <class T>
RadicalComparison jacobson_radical_is_arrow_ideal(const TruncatedGPA<T>& gpa);

/// The algebra map gpa -> target determined by algebra maps Omega_i -> target
/// (target.dim x dim Omega_i) and arrow images, per f(a_0) f(x_1) f(a_1) ...
/// Returns a target.dim x gpa.dim matrix. Errors: CompatibilityViolation when
/// f(e_i) f(x) = f(x) = f(x) f(e_j) fails; NotAHomomorphism when a vertex map
/// is not multiplicative, a relation or a length-t path does not map to zero,
/// or the result fails multiplicativity on basis pairs.
template <class T>
Mat<T> gpa_hom_from_generators(const TruncatedGPA<T>& gpa, const FDAlgebra<T>& target,
                               const std::vector<Mat<T>>& vertex_maps, const std::vector<Vec<T>>& arrow_images);

/// Image of one labelled path under generator data (no checks).
template <class T>
Vec<T> path_image(const TruncatedGPA<T>& gpa, const FDAlgebra<T>& target, const std::vector<Mat<T>>& vertex_maps,
                  const std::vector<Vec<T>>& arrow_images, const BasisPath& p);

/// The algebra with one vertex-algebra copy k: labels {"1"}.
template <class T>
FDAlgebra<T> ground_field_algebra(const FieldDescriptor& f);

}  // namespace pathalg

#endif  // PATHALG_GPA_HPP
