// The line-oriented workspace format: parsed data, printer and builders.
//
//   # comment
//   field Q | GF(p)
//   algebra NAME dim N [over Q | GF(p)]
//     labels l0 l1 ...
//     mul i j = k1:c1 k2:c2 ...
//   idempotents NAME for ALGEBRA = v ; v ; ...
//   quiver NAME vertices v1 v2 ...
//     arrow NAME src tgt
//     relation NAME = [c *] path (+|-) [c *] path ...
//     truncate t
//     mode weak | strict
//   omega QUIVER vertex ALGEBRA
//   rep NAME over QUIVER [vertex v dim d]...
//     vertex v dim d
//     act LABEL v = matrix
//     arrowmap ARROW = matrix
//
// A path is tokens joined by '.': optional Omega labels around arrow names,
// where a missing label stands for the unity of Omega at that vertex. A
// length-0 path is e_v (the unity at v) or label@v. Matrices are rows
// separated by ';' with entries a or a/b; an empty matrix is zero.
#ifndef PATHALG_WORKSPACE_HPP
#define PATHALG_WORKSPACE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathalg/gpa.hpp"
#include "pathalg/idempotents.hpp"
#include "pathalg/representations.hpp"

namespace pathalg {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct AlgebraDecl {
  struct Mul {
    Index i = 0, j = 0;
    std::vector<std::pair<Index, Rational>> terms;
    bool operator==(const Mul&) const = default;
  };
  std::string name;
  Index dim = 0;
  std::string field;  // "Q" or "GF(p)"
  std::vector<std::string> labels;
  std::vector<Mul> products;
  bool operator==(const AlgebraDecl&) const = default;
};

struct IdempotentDecl {
  std::string name;
  std::string algebra;
  RationalMatrix elements;  // one row per idempotent
  bool operator==(const IdempotentDecl&) const = default;
};

struct PathTermDecl {
  Rational coeff{1};
  std::vector<std::string> tokens;
  bool operator==(const PathTermDecl&) const = default;
};

struct RelationDecl {
  std::string name;
  std::vector<PathTermDecl> terms;
  bool operator==(const RelationDecl&) const = default;
};

struct QuiverDecl {
  struct ArrowDecl {
    std::string name, source, target;
    bool operator==(const ArrowDecl&) const = default;
  };
  std::string name;
  std::vector<std::string> vertices;
  std::vector<ArrowDecl> arrows;
  std::vector<std::pair<std::string, std::string>> omega;  // vertex -> algebra
  std::vector<RelationDecl> relations;
  std::optional<int> truncate;
  std::optional<RelationMode> mode;
  bool operator==(const QuiverDecl&) const = default;
};

struct RepDecl {
  struct Act {
    std::string label, vertex;
    RationalMatrix matrix;
    bool operator==(const Act&) const = default;
  };
  struct ArrowMap {
    std::string arrow;
    RationalMatrix matrix;
    bool operator==(const ArrowMap&) const = default;
  };
  std::string name;
  std::string quiver;
  std::vector<std::pair<std::string, Index>> dims;
  std::vector<Act> acts;
  std::vector<ArrowMap> arrow_maps;
  bool operator==(const RepDecl&) const = default;
};

struct Workspace {
  std::optional<std::string> field;
  std::vector<AlgebraDecl> algebras;
  std::vector<IdempotentDecl> idempotents;
  std::vector<QuiverDecl> quivers;
  std::vector<RepDecl> reps;
  bool operator==(const Workspace&) const = default;

  const AlgebraDecl* algebra(const std::string& name) const;
  const QuiverDecl* quiver(const std::string& name) const;
  const RepDecl* rep(const std::string& name) const;
  /// The field of the workspace (Q when nothing is declared).
  FieldDescriptor field_descriptor() const;
  /// Algebras not used as a vertex algebra, in file order.
  std::vector<std::string> standalone_algebras() const;
};

/// "Q" or "GF(p)" (InvalidField for a non-prime p).
FieldDescriptor parse_field(const std::string& text);

/// SyntaxError / UnknownReference / DuplicateName / InvalidField /
/// FieldMismatch with "line L, col C" in the message.
Workspace parse_workspace(const std::string& text);
Workspace parse_workspace_file(const std::string& path);

/// Canonical text; parse_workspace(print_workspace(w)) == w.
std::string print_workspace(const Workspace& w);

template <class T>
FDAlgebra<T> build_algebra(const Workspace& w, const std::string& name);

template <class T>
TruncatedGPA<T> build_gpa(const Workspace& w, const std::string& quiver, GpaOptions options = {});

template <class T>
IdempotentSet<T> build_idempotents(const Workspace& w, const IdempotentDecl& d);

template <class T>
QuiverRepresentation<T> build_representation(const Workspace& w, const RepDecl& d);

/// Path text for a basis path, in the syntax the parser reads.
template <class T>
std::string path_text(const TruncatedGPA<T>& gpa, const BasisPath& p);

}  // namespace pathalg

#endif  // PATHALG_WORKSPACE_HPP
