#include "pathalg/gpa.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace pathalg {

std::optional<Index> Quiver::vertex_index(const std::string& v) const {
  for (Index i = 0; i < num_vertices(); ++i)
    if (vertices[static_cast<std::size_t>(i)] == v) return i;
  return std::nullopt;
}

std::optional<Index> Quiver::arrow_index(const std::string& a) const {
  for (Index i = 0; i < num_arrows(); ++i)
    if (arrows[static_cast<std::size_t>(i)].name == a) return i;
  return std::nullopt;
}

void Quiver::validate() const {
  if (vertices.empty()) throw Error(ErrorCode::DimensionMismatch, "quiver " + name + " has no vertices");
  std::set<std::string> seen;
  for (const auto& v : vertices)
    if (!seen.insert(v).second) throw Error(ErrorCode::DuplicateName, "vertex " + v + " declared twice");
  for (const auto& a : arrows) {
    if (!seen.insert(a.name).second) throw Error(ErrorCode::DuplicateName, "arrow name " + a.name + " already used");
    if (a.source < 0 || a.source >= num_vertices() || a.target < 0 || a.target >= num_vertices()) {
      throw Error(ErrorCode::UnknownReference, "arrow " + a.name + " has an endpoint outside the vertex set");
    }
  }
}

bool operator<(const BasisPath& a, const BasisPath& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.arrows != b.arrows) return a.arrows < b.arrows;
  if (a.vertices.front() != b.vertices.front()) return a.vertices.front() < b.vertices.front();
  return a.labels < b.labels;
}

template <class T>
FDAlgebra<T> ground_field_algebra(const FieldDescriptor& f) {
  return FDAlgebra<T>(f, 1, {SparseVec<T>{{0, scalar<T>(f, 1)}}}, {"1"});
}

template <class T>
Index count_free_paths(const Quiver& q, const std::vector<FDAlgebra<T>>& family, int t) {
  constexpr Index kMax = std::numeric_limits<Index>::max() / 4;
  auto sat = [&](Index a) { return std::min(a, kMax); };
  std::vector<Index> w(static_cast<std::size_t>(q.num_vertices()));
  Index total = 0;
  for (Index v = 0; v < q.num_vertices(); ++v) w[v] = family[v].dim();
  for (int len = 0; len < t; ++len) {
    for (Index x : w) total = sat(total + x);
    std::vector<Index> next(w.size(), 0);
    for (const auto& a : q.arrows) {
      Index d = family[a.target].dim();
      Index add = w[a.source] == 0 || d == 0 ? 0 : (w[a.source] > kMax / d ? kMax : w[a.source] * d);
      next[a.target] = sat(next[a.target] + add);
    }
    w = std::move(next);
  }
  return total;
}

template <class T>
std::vector<BasisPath> enumerate_paths(const Quiver& q, const std::vector<FDAlgebra<T>>& family, Index length,
                                       Index cap) {
  std::vector<BasisPath> out;
  auto emit_labels = [&](const std::vector<Index>& vs, const std::vector<Index>& as) {
    std::vector<Index> labels(vs.size(), 0);
    for (Index v : vs)
      if (family[v].dim() == 0) return;
    for (;;) {
      if (static_cast<Index>(out.size()) >= cap) {
        throw Error(ErrorCode::PathExplosion, "more than " + std::to_string(cap) + " basis paths");
      }
      out.push_back({vs, as, labels});
      Index p = static_cast<Index>(labels.size()) - 1;
      while (p >= 0 && ++labels[p] == family[vs[p]].dim()) labels[p--] = 0;
      if (p < 0) return;
    }
  };
  if (length == 0) {
    for (Index v = 0; v < q.num_vertices(); ++v) emit_labels({v}, {});
    return out;
  }
  std::vector<Index> vs, as;
  auto extend = [&](auto&& self) -> void {
    if (static_cast<Index>(as.size()) == length) {
      emit_labels(vs, as);
      return;
    }
    for (Index a = 0; a < q.num_arrows(); ++a) {
      const auto& arrow = q.arrows[a];
      if (!as.empty() && arrow.source != vs.back()) continue;
      bool first = as.empty();
      if (first) vs.push_back(arrow.source);
      vs.push_back(arrow.target);
      as.push_back(a);
      self(self);
      as.pop_back();
      vs.pop_back();
      if (first) vs.pop_back();
    }
  };
  extend(extend);
  return out;
}

namespace {

template <class T>
void check_path(const Quiver& q, const std::vector<FDAlgebra<T>>& family, const BasisPath& p, const std::string& where) {
  if (p.vertices.size() != p.arrows.size() + 1 || p.labels.size() != p.vertices.size()) {
    throw Error(ErrorCode::SyntaxError, where + ": malformed path");
  }
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    Index v = p.vertices[k];
    if (v < 0 || v >= q.num_vertices()) throw Error(ErrorCode::UnknownReference, where + ": vertex out of range");
    if (p.labels[k] < 0 || p.labels[k] >= family[v].dim()) {
      throw Error(ErrorCode::UnknownReference, where + ": label out of range at vertex " + q.vertices[v]);
    }
  }
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    Index a = p.arrows[k];
    if (a < 0 || a >= q.num_arrows()) throw Error(ErrorCode::UnknownReference, where + ": arrow out of range");
    if (q.arrows[a].source != p.vertices[k] || q.arrows[a].target != p.vertices[k + 1]) {
      throw Error(ErrorCode::SyntaxError, where + ": arrows do not compose head to tail");
    }
  }
}

}  // namespace

template <class T>
void check_relations(const Quiver& q, const std::vector<FDAlgebra<T>>& family, const RelationSet<T>& rel) {
  if (rel.truncation < 1) throw Error(ErrorCode::DimensionMismatch, "truncation must be at least 1");
  for (std::size_t r = 0; r < rel.elements.size(); ++r) {
    std::string name = r < rel.names.size() ? rel.names[r] : "relation " + std::to_string(r + 1);
    for (const auto& term : rel.elements[r]) {
      check_path(q, family, term.path, name);
      if (is_zero(term.coeff)) continue;
      if (term.path.length() < 1) {
        throw Error(ErrorCode::RelationOutsideJ, name + " has a component of length 0");
      }
      if (rel.mode == RelationMode::Strict && term.path.length() < 2) {
        throw Error(ErrorCode::RelationOutsideJ2, name + " has a component of length 1");
      }
    }
  }
}

template <class T>
std::optional<Index> TruncatedGPA<T>::free_index(const BasisPath& p) const {
  auto it = free_index_.find(p);
  if (it == free_index_.end()) return std::nullopt;
  return it->second;
}

template <class T>
Vec<T> TruncatedGPA<T>::free_vector(const PathCombination<T>& c) const {
  Vec<T> v = free_.zero();
  for (const auto& term : c) {
    check_path(quiver_, family_, term.path, "path combination");
    if (term.path.length() >= truncation()) continue;
    auto i = free_index(term.path);
    if (!i) throw Error(ErrorCode::Internal, "path missing from the free basis");
    v(*i) += ScalarTraits<T>::bind(field(), term.coeff);
  }
  return v;
}

template <class T>
std::string TruncatedGPA<T>::path_name(const BasisPath& p) const {
  auto label = [&](std::size_t k) { return omega(p.vertices[k]).label(p.labels[k]); };
  if (p.length() == 0) {
    const std::string& v = quiver_.vertices[p.vertices[0]];
    if (omega(p.vertices[0]).dim() == 1) return "e_" + v;
    return label(0) + "@" + v;
  }
  std::string s;
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    if (omega(p.vertices[k]).dim() > 1) s += (s.empty() ? "" : ".") + label(k);
    if (k < p.arrows.size()) s += (s.empty() ? "" : ".") + quiver_.arrows[p.arrows[k]].name;
  }
  return s;
}

template <class T>
TruncatedGPA<T> build_truncated_gpa(const Quiver& q, const std::vector<FDAlgebra<T>>& family,
                                    const RelationSet<T>& relations, GpaOptions options) {
  q.validate();
  if (static_cast<Index>(family.size()) != q.num_vertices()) {
    throw Error(ErrorCode::DimensionMismatch, "one vertex algebra per vertex required");
  }
  const FieldDescriptor field = family.front().field();
  for (Index v = 0; v < q.num_vertices(); ++v) {
    const auto& om = family[v];
    if (om.field().kind != field.kind || om.field().characteristic != field.characteristic) {
      throw Error(ErrorCode::FieldMismatch, "vertex algebras over different fields");
    }
    if (!om.has_unity() || om.dim() == 0) {
      throw Error(ErrorCode::NoUnity, "vertex algebra at " + q.vertices[v] + " has no nonzero unity");
    }
    if (!trace_radical(om).is_trivial()) {
      throw Error(ErrorCode::NotSemisimple, "vertex algebra at " + q.vertices[v] + " has a nonzero radical");
    }
  }
  check_relations(q, family, relations);
  const int t = relations.truncation;
  Index count = count_free_paths(q, family, t);
  if (count > options.max_paths) {
    throw Error(ErrorCode::PathExplosion, std::to_string(count) + " basis paths exceed the cap of " +
                                              std::to_string(options.max_paths));
  }

  TruncatedGPA<T> g;
  g.quiver_ = q;
  g.family_ = family;
  g.relations_ = relations;
  for (Index len = 0; len < t; ++len)
    for (auto& p : enumerate_paths(q, family, len, options.max_paths)) g.free_paths_.push_back(std::move(p));
  const Index n = static_cast<Index>(g.free_paths_.size());
  for (Index i = 0; i < n; ++i) g.free_index_.emplace(g.free_paths_[i], i);

  // Rule (*): splice at the shared vertex with the junction product in Omega_v.
  std::vector<std::vector<Index>> by_source(static_cast<std::size_t>(q.num_vertices()));
  for (Index i = 0; i < n; ++i) by_source[g.free_paths_[i].source()].push_back(i);
  std::vector<SparseVec<T>> products(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i) {
    const BasisPath& x = g.free_paths_[i];
    const FDAlgebra<T>& om = family[x.target()];
    for (Index j : by_source[x.target()]) {
      const BasisPath& y = g.free_paths_[j];
      if (x.length() + y.length() >= t) continue;
      BasisPath z;
      z.vertices = x.vertices;
      z.vertices.insert(z.vertices.end(), y.vertices.begin() + 1, y.vertices.end());
      z.arrows = x.arrows;
      z.arrows.insert(z.arrows.end(), y.arrows.begin(), y.arrows.end());
      z.labels = x.labels;
      z.labels.insert(z.labels.end(), y.labels.begin() + 1, y.labels.end());
      const std::size_t junction = x.labels.size() - 1;
      for (const auto& [k, c] : om.product(x.labels.back(), y.labels.front())) {
        z.labels[junction] = k;
        products[i * n + j].emplace_back(g.free_index_.at(z), c);
      }
    }
  }
  std::vector<std::string> names;
  for (const auto& p : g.free_paths_) names.push_back(g.path_name(p));
  Vec<T> unit = Vec<T>::Constant(n, scalar<T>(field, 0));
  for (Index v = 0; v < q.num_vertices(); ++v)
    for (Index k = 0; k < family[v].dim(); ++k) unit(g.free_index_.at(BasisPath{{v}, {}, {k}})) = family[v].one()(k);
  g.free_ = FDAlgebra<T>(field, n, std::move(products), names, unit);

  std::vector<Vec<T>> rel_vectors;
  for (const auto& r : relations.elements) rel_vectors.push_back(g.free_vector(r));
  // Paths of length <= 1 generate k(D, Omega) / J^t.
  std::vector<Index> short_paths;
  for (Index i = 0; i < n; ++i)
    if (g.free_paths_[i].length() <= 1) short_paths.push_back(i);
  g.relation_ideal_ = ideal_closure(g.free_, rel_vectors, short_paths);
  g.quotient_ = quotient_algebra(g.free_, g.relation_ideal_);
  for (Index idx : g.quotient_.basis.representative_indices) g.paths_.push_back(g.free_paths_[idx]);

  SpanBuilder<T> arrows(g.quotient_.algebra.dim());
  for (Index i = 0; i < n; ++i)
    if (g.free_paths_[i].length() >= 1) arrows.add(g.quotient_.map.col(i));
  g.arrow_ideal_ = arrows.finish();

  std::vector<Vec<T>> units;
  for (Index v = 0; v < q.num_vertices(); ++v) {
    PathCombination<T> e;
    const Vec<T>& u = family[v].one();
    for (Index k = 0; k < u.size(); ++k)
      if (!is_zero(u(k))) e.push_back({BasisPath{{v}, {}, {k}}, u(k)});
    units.push_back(g.element(e));
  }
  g.gm_unit_ = validate_complete_set(g.quotient_.algebra, std::move(units));
  return g;
}

template <class T>
CofinalCertificate check_weak_relations_cofinal(const Quiver& q, const std::vector<FDAlgebra<T>>& family,
                                                const RelationSet<T>& relations, GpaOptions options) {
  RelationSet<T> next = relations;
  next.truncation = relations.truncation + 1;
  TruncatedGPA<T> g = build_truncated_gpa(q, family, next, options);
  CofinalCertificate c;
  for (const auto& p : g.free_paths()) {
    if (p.length() != relations.truncation) continue;
    if (!all_zero<T>(g.path_element(p))) {
      c.witness = p;
      return c;
    }
  }
  c.certified = true;
  return c;
}

template <class T>
RadicalComparison jacobson_radical_is_arrow_ideal(const TruncatedGPA<T>& gpa) {
  RadicalComparison r;
  Subspace<T> rad = radical(gpa.algebra()).radical;
  r.radical_dim = rad.dim();
  r.arrow_ideal_dim = gpa.arrow_ideal().dim();
  r.equal = rad == gpa.arrow_ideal();
  return r;
}

template <class T>
Vec<T> path_image(const TruncatedGPA<T>& gpa, const FDAlgebra<T>& target, const std::vector<Mat<T>>& vertex_maps,
                  const std::vector<Vec<T>>& arrow_images, const BasisPath& p) {
  Vec<T> acc = vertex_maps[p.vertices[0]].col(p.labels[0]);
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    acc = target.multiply(acc, arrow_images[p.arrows[k]]);
    acc = target.multiply(acc, Vec<T>(vertex_maps[p.vertices[k + 1]].col(p.labels[k + 1])));
  }
  (void)gpa;
  return acc;
}

template <class T>
Mat<T> gpa_hom_from_generators(const TruncatedGPA<T>& gpa, const FDAlgebra<T>& target,
                               const std::vector<Mat<T>>& vertex_maps, const std::vector<Vec<T>>& arrow_images) {
  const Quiver& q = gpa.quiver();
  if (static_cast<Index>(vertex_maps.size()) != q.num_vertices() ||
      static_cast<Index>(arrow_images.size()) != q.num_arrows()) {
    throw Error(ErrorCode::DimensionMismatch, "one map per vertex and one image per arrow required");
  }
  std::vector<Vec<T>> units;
  for (Index v = 0; v < q.num_vertices(); ++v) {
    const Mat<T>& m = vertex_maps[v];
    if (m.rows() != target.dim() || m.cols() != gpa.omega(v).dim()) {
      throw Error(ErrorCode::DimensionMismatch, "vertex map at " + q.vertices[v] + " has the wrong shape");
    }
    if (!is_multiplicative(gpa.omega(v), target, m)) {
      throw Error(ErrorCode::NotAHomomorphism, "vertex map at " + q.vertices[v] + " is not multiplicative");
    }
    units.push_back(m * gpa.omega(v).one());
  }
  for (Index a = 0; a < q.num_arrows(); ++a) {
    const auto& arrow = q.arrows[a];
    const Vec<T>& x = arrow_images[a];
    if (x.size() != target.dim()) throw Error(ErrorCode::DimensionMismatch, "arrow image of the wrong length");
    if (!all_zero<T>(Vec<T>(target.multiply(units[arrow.source], x) - x)) ||
        !all_zero<T>(Vec<T>(target.multiply(x, units[arrow.target]) - x))) {
      throw Error(ErrorCode::CompatibilityViolation, "arrow " + arrow.name + ": f(e_i) f(x) = f(x) = f(x) f(e_j) fails");
    }
  }
  const Index n = static_cast<Index>(gpa.free_paths().size());
  Mat<T> free_map(target.dim(), n);
  for (Index i = 0; i < n; ++i)
    free_map.col(i) = path_image(gpa, target, vertex_maps, arrow_images, gpa.free_paths()[i]);
  for (const auto& p : enumerate_paths(q, gpa.family(), gpa.truncation(), std::numeric_limits<Index>::max())) {
    if (!all_zero<T>(path_image(gpa, target, vertex_maps, arrow_images, p))) {
      throw Error(ErrorCode::NotAHomomorphism, "path " + gpa.path_name(p) + " of length t does not map to zero");
    }
  }
  const auto& rel = gpa.relations();
  for (std::size_t r = 0; r < rel.elements.size(); ++r) {
    if (!all_zero<T>(Vec<T>(free_map * gpa.free_vector(rel.elements[r])))) {
      throw Error(ErrorCode::NotAHomomorphism,
                  "relation " + (r < rel.names.size() ? rel.names[r] : std::to_string(r + 1)) + " does not map to zero");
    }
  }
  Mat<T> map(target.dim(), gpa.dim());
  const auto& reps = gpa.quotient().basis.representative_indices;
  for (Index k = 0; k < gpa.dim(); ++k) map.col(k) = free_map.col(reps[k]);
  if (!is_multiplicative(gpa.algebra(), target, map)) {
    throw Error(ErrorCode::NotAHomomorphism, "generator images do not extend multiplicatively");
  }
  return map;
}

#define PATHALG_INSTANTIATE_GPA(T)                                                                                 \
  template class TruncatedGPA<T>;                                                                                   \
  template FDAlgebra<T> ground_field_algebra<T>(const FieldDescriptor&);                                            \
  template Index count_free_paths<T>(const Quiver&, const std::vector<FDAlgebra<T>>&, int);                         \
  template std::vector<BasisPath> enumerate_paths<T>(const Quiver&, const std::vector<FDAlgebra<T>>&, Index, Index); \
  template void check_relations<T>(const Quiver&, const std::vector<FDAlgebra<T>>&, const RelationSet<T>&);         \
  template TruncatedGPA<T> build_truncated_gpa<T>(const Quiver&, const std::vector<FDAlgebra<T>>&,                  \
                                                  const RelationSet<T>&, GpaOptions);                               \
  template CofinalCertificate check_weak_relations_cofinal<T>(const Quiver&, const std::vector<FDAlgebra<T>>&,      \
                                                              const RelationSet<T>&, GpaOptions);                   \
  template RadicalComparison jacobson_radical_is_arrow_ideal<T>(const TruncatedGPA<T>&);                           \
  template Vec<T> path_image<T>(const TruncatedGPA<T>&, const FDAlgebra<T>&, const std::vector<Mat<T>>&,            \
                                const std::vector<Vec<T>>&, const BasisPath&);                                      \
  template Mat<T> gpa_hom_from_generators<T>(const TruncatedGPA<T>&, const FDAlgebra<T>&,                           \
                                             const std::vector<Mat<T>>&, const std::vector<Vec<T>>&);

PATHALG_INSTANTIATE_GPA(Rational)
PATHALG_INSTANTIATE_GPA(Modp)

}  // namespace pathalg
