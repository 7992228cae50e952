#include "pathalg/representations.hpp"

#include <string>

namespace pathalg {

namespace {

template <class T>
Mat<T> zeros(const FieldDescriptor& f, Index rows, Index cols) {
  return Mat<T>::Constant(rows, cols, scalar<T>(f, 0));
}

template <class T>
Mat<T> identity(const FieldDescriptor& f, Index n) {
  Mat<T> m = zeros<T>(f, n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = scalar<T>(f, 1);
  return m;
}

template <class T>
bool same_matrix(const Mat<T>& a, const Mat<T>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && all_zero<T>(Mat<T>(a - b));
}

std::string shape(Index r, Index c) { return std::to_string(r) + "x" + std::to_string(c); }

template <class T>
std::string vector_text(const Vec<T>& v) {
  std::string s = "(";
  for (Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + ScalarTraits<T>::str(v(i));
  return s + ")";
}

/// A column that m does not annihilate.
template <class T>
std::optional<Index> witness(const Mat<T>& m) {
  for (Index c = 0; c < m.cols(); ++c)
    if (!all_zero<T>(Vec<T>(m.col(c)))) return c;
  return std::nullopt;
}

std::vector<Index> offsets(const std::vector<Index>& dims) {
  std::vector<Index> off(dims.size() + 1, 0);
  for (std::size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + dims[i];
  return off;
}

template <class T>
void check_same_quiver(const QuiverRepresentation<T>& rep, const TruncatedGPA<T>& gpa) {
  const Quiver& a = rep.quiver;
  const Quiver& b = gpa.quiver();
  bool same = a.num_vertices() == b.num_vertices() && a.num_arrows() == b.num_arrows() &&
              rep.family.size() == gpa.family().size();
  for (Index x = 0; same && x < a.num_arrows(); ++x)
    same = a.arrows[x].source == b.arrows[x].source && a.arrows[x].target == b.arrows[x].target;
  for (Index v = 0; same && v < a.num_vertices(); ++v) same = rep.family[v].dim() == gpa.omega(v).dim();
  if (!same) throw Error(ErrorCode::DimensionMismatch, "representation is not over the quiver and family of the GPA");
}

}  // namespace

template <class T>
Index ModuleSystem<T>::total_dim() const {
  return offsets(dims).back();
}

template <class T>
Index ModuleSystem<T>::offset(Index i) const {
  return offsets(dims)[static_cast<std::size_t>(i)];
}

template <class T>
Mat<T> block_action(const ModuleSystem<T>& ms, Index i, Index j, const Vec<T>& a) {
  auto c = ms.base.block(i, j).coordinates(a);
  if (!c) throw Error(ErrorCode::DimensionMismatch, "element is not in A_" + std::to_string(i) + std::to_string(j));
  const FieldDescriptor& f = ms.algebra.field();
  Mat<T> out = zeros<T>(f, ms.dims[i], ms.dims[j]);
  for (Index r = 0; r < c->size(); ++r)
    if (!is_zero((*c)(r))) out += (*c)(r) * ms.action(i, j)[r];
  return out;
}

template <class T>
void validate_module_system(const ModuleSystem<T>& ms) {
  const Index n = ms.size();
  auto fail = [](const std::string& m) { throw Error(ErrorCode::InvalidModule, m); };
  if (static_cast<Index>(ms.dims.size()) != n) fail("expected " + std::to_string(n) + " spaces");
  if (static_cast<Index>(ms.actions.size()) != n * n) fail("expected " + std::to_string(n * n) + " action blocks");
  for (Index i = 0; i < n; ++i) {
    if (ms.dims[i] < 0) fail("negative dimension at " + std::to_string(i));
    for (Index j = 0; j < n; ++j) {
      const auto& acts = ms.action(i, j);
      if (static_cast<Index>(acts.size()) != ms.base.block(i, j).dim()) {
        fail("block (" + std::to_string(i) + "," + std::to_string(j) + ") needs one matrix per basis element");
      }
      for (const auto& m : acts)
        if (m.rows() != ms.dims[i] || m.cols() != ms.dims[j]) {
          fail("block (" + std::to_string(i) + "," + std::to_string(j) + ") matrix is " + shape(m.rows(), m.cols()) +
               ", expected " + shape(ms.dims[i], ms.dims[j]));
        }
    }
  }
  // (ca)x = c(ax)
  for (Index s = 0; s < n; ++s)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index p = 0; p < ms.base.block(s, i).dim(); ++p)
          for (Index q = 0; q < ms.base.block(i, j).dim(); ++q) {
            Vec<T> ca = ms.algebra.multiply(ms.base.block(s, i).basis_vector(p), ms.base.block(i, j).basis_vector(q));
            if (!same_matrix<T>(block_action(ms, s, j, ca), Mat<T>(ms.action(s, i)[p] * ms.action(i, j)[q]))) {
              fail("(ca)x != c(ax) for basis elements " + std::to_string(p) + " of A_" + std::to_string(s) +
                   std::to_string(i) + " and " + std::to_string(q) + " of A_" + std::to_string(i) + std::to_string(j));
            }
          }
  for (Index j = 0; j < n; ++j)
    if (!same_matrix<T>(block_action(ms, j, j, ms.base.unit[j]), identity<T>(ms.algebra.field(), ms.dims[j]))) {
      fail("e_" + std::to_string(j) + " does not act as the identity on M_" + std::to_string(j));
    }
}

template <class T>
ModuleSystem<T> zero_module_system(const FDAlgebra<T>& algebra, const GmDecomposition<T>& base) {
  ModuleSystem<T> ms{algebra, base, std::vector<Index>(static_cast<std::size_t>(base.size()), 0), {}};
  for (Index i = 0; i < base.size(); ++i)
    for (Index j = 0; j < base.size(); ++j)
      ms.actions.emplace_back(static_cast<std::size_t>(base.block(i, j).dim()), Mat<T>(0, 0));
  return ms;
}

template <class T>
Mat<T> LocalUnitaryModule<T>::act(const Vec<T>& x) const {
  if (x.size() != algebra.dim()) throw Error(ErrorCode::DimensionMismatch, "element of another algebra");
  Mat<T> out = zeros<T>(algebra.field(), dim, dim);
  for (Index b = 0; b < x.size(); ++b)
    if (!is_zero(x(b))) out += x(b) * action[static_cast<std::size_t>(b)];
  return out;
}

template <class T>
void validate_local_module(const LocalUnitaryModule<T>& m) {
  auto fail = [](const std::string& s) { throw Error(ErrorCode::InvalidModule, s); };
  const FDAlgebra<T>& a = m.algebra;
  if (static_cast<Index>(m.action.size()) != a.dim()) fail("expected one matrix per basis element");
  for (const auto& x : m.action)
    if (x.rows() != m.dim || x.cols() != m.dim) fail("action matrix is " + shape(x.rows(), x.cols()));
  validate_complete_set(a, m.unit.elements);
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j) {
      Vec<T> prod = a.multiply(a.basis_vector(i), a.basis_vector(j));
      if (!same_matrix<T>(m.act(prod), Mat<T>(m.action[i] * m.action[j]))) {
        fail("matrix(b" + std::to_string(i) + " b" + std::to_string(j) + ") != matrix(b" + std::to_string(i) +
             ") matrix(b" + std::to_string(j) + ")");
      }
    }
  if (!same_matrix<T>(m.act(m.unit.sum()), identity<T>(a.field(), m.dim))) fail("sum of e_i is not the identity");
}

template <class T>
LocalUnitaryModule<T> regular_module(const FDAlgebra<T>& algebra, const IdempotentSet<T>& unit) {
  LocalUnitaryModule<T> m{algebra, unit, algebra.dim(), {}};
  for (Index b = 0; b < algebra.dim(); ++b) m.action.push_back(algebra.left_matrix(algebra.basis_vector(b)));
  return m;
}

template <class T>
LocalUnitaryModule<T> h_assemble(const ModuleSystem<T>& ms) {
  validate_module_system(ms);
  const FDAlgebra<T>& a = ms.algebra;
  const Index n = ms.size();
  const auto off = offsets(ms.dims);
  LocalUnitaryModule<T> m{a, ms.base.unit, off.back(), {}};
  for (Index b = 0; b < a.dim(); ++b) {
    Mat<T> x = zeros<T>(a.field(), m.dim, m.dim);
    const Vec<T> bv = a.basis_vector(b);
    for (Index i = 0; i < n; ++i) {
      const Vec<T> left = a.multiply(ms.base.unit[i], bv);
      for (Index j = 0; j < n; ++j) {
        if (ms.dims[i] == 0 || ms.dims[j] == 0) continue;
        const Vec<T> part = a.multiply(left, ms.base.unit[j]);
        if (all_zero<T>(part)) continue;
        x.block(off[i], off[j], ms.dims[i], ms.dims[j]) = block_action(ms, i, j, part);
      }
    }
    m.action.push_back(std::move(x));
  }
  return m;
}

namespace {

template <class T>
std::vector<Subspace<T>> split_spaces(const LocalUnitaryModule<T>& m) {
  std::vector<Subspace<T>> spaces;
  for (Index i = 0; i < m.unit.size(); ++i) spaces.push_back(image<T>(m.act(m.unit[i])));
  return spaces;
}

}  // namespace

template <class T>
Mat<T> split_basis(const LocalUnitaryModule<T>& m) {
  validate_local_module(m);
  Mat<T> p = zeros<T>(m.algebra.field(), m.dim, m.dim);
  Index col = 0;
  for (const auto& s : split_spaces(m)) {
    p.block(0, col, m.dim, s.dim()) = s.basis().transpose();
    col += s.dim();
  }
  if (col != m.dim) throw Error(ErrorCode::Internal, "e_i M do not add up to M");
  return p;
}

template <class T>
ModuleSystem<T> g_split(const LocalUnitaryModule<T>& m) {
  validate_local_module(m);
  const auto spaces = split_spaces(m);
  ModuleSystem<T> ms{m.algebra, gm_decompose(m.algebra, m.unit), {}, {}};
  const Index n = ms.size();
  for (const auto& s : spaces) ms.dims.push_back(s.dim());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      std::vector<Mat<T>> acts;
      const Mat<T> basis_j = spaces[j].basis().transpose();
      for (Index r = 0; r < ms.base.block(i, j).dim(); ++r) {
        const Mat<T> images = m.act(ms.base.block(i, j).basis_vector(r)) * basis_j;
        Mat<T> x = zeros<T>(m.algebra.field(), ms.dims[i], ms.dims[j]);
        for (Index c = 0; c < images.cols(); ++c) {
          auto coords = spaces[i].coordinates(Vec<T>(images.col(c)));
          if (!coords) throw Error(ErrorCode::Internal, "A_ij M_j is not inside M_i");
          x.col(c) = *coords;
        }
        acts.push_back(std::move(x));
      }
      ms.actions.push_back(std::move(acts));
    }
  validate_module_system(ms);
  return ms;
}

template <class T>
void validate_representation(const QuiverRepresentation<T>& rep) {
  auto fail = [](const std::string& s) { throw Error(ErrorCode::InvalidModule, s); };
  rep.quiver.validate();
  const Index n = rep.quiver.num_vertices();
  if (static_cast<Index>(rep.family.size()) != n || static_cast<Index>(rep.dims.size()) != n ||
      static_cast<Index>(rep.vertex_actions.size()) != n) {
    fail("expected data for " + std::to_string(n) + " vertices");
  }
  if (static_cast<Index>(rep.arrow_maps.size()) != rep.quiver.num_arrows()) fail("expected one map per arrow");
  for (Index v = 0; v < n; ++v) {
    const FDAlgebra<T>& om = rep.family[v];
    const std::string& name = rep.quiver.vertices[v];
    const auto& acts = rep.vertex_actions[v];
    if (rep.dims[v] < 0) fail("negative dimension at vertex " + name);
    if (static_cast<Index>(acts.size()) != om.dim()) fail("vertex " + name + " needs one matrix per Omega basis element");
    for (const auto& x : acts)
      if (x.rows() != rep.dims[v] || x.cols() != rep.dims[v]) fail("vertex " + name + " action is " + shape(x.rows(), x.cols()));
    auto act = [&](const Vec<T>& e) {
      Mat<T> out = zeros<T>(om.field(), rep.dims[v], rep.dims[v]);
      for (Index b = 0; b < om.dim(); ++b)
        if (!is_zero(e(b))) out += e(b) * acts[b];
      return out;
    };
    for (Index i = 0; i < om.dim(); ++i)
      for (Index j = 0; j < om.dim(); ++j)
        if (!same_matrix<T>(act(om.multiply(om.basis_vector(i), om.basis_vector(j))), Mat<T>(acts[i] * acts[j]))) {
          fail("vertex " + name + " is not an Omega-module");
        }
    if (!same_matrix<T>(act(om.one()), identity<T>(om.field(), rep.dims[v]))) {
      fail("unity of Omega at vertex " + name + " does not act as the identity");
    }
  }
  for (Index x = 0; x < rep.quiver.num_arrows(); ++x) {
    const auto& a = rep.quiver.arrows[x];
    const Mat<T>& f = rep.arrow_maps[x];
    if (f.rows() != rep.dims[a.source] || f.cols() != rep.dims[a.target]) {
      fail("map of arrow " + a.name + " is " + shape(f.rows(), f.cols()) + ", expected " +
           shape(rep.dims[a.source], rep.dims[a.target]));
    }
  }
}

template <class T>
QuiverRepresentation<T> zero_representation(const Quiver& quiver, const std::vector<FDAlgebra<T>>& family) {
  QuiverRepresentation<T> rep{quiver, family, std::vector<Index>(family.size(), 0), {}, {}};
  for (const auto& om : family) rep.vertex_actions.emplace_back(static_cast<std::size_t>(om.dim()), Mat<T>(0, 0));
  rep.arrow_maps.assign(static_cast<std::size_t>(quiver.num_arrows()), Mat<T>(0, 0));
  return rep;
}

template <class T>
Mat<T> path_action(const QuiverRepresentation<T>& rep, const BasisPath& p) {
  Mat<T> m = rep.vertex_actions[p.vertices[0]][p.labels[0]];
  for (std::size_t s = 0; s < p.arrows.size(); ++s) {
    m = Mat<T>(m * rep.arrow_maps[p.arrows[s]]);
    m = Mat<T>(m * rep.vertex_actions[p.vertices[s + 1]][p.labels[s + 1]]);
  }
  return m;
}

template <class T>
Mat<T> combination_action(const QuiverRepresentation<T>& rep, const PathCombination<T>& c) {
  const auto off = offsets(rep.dims);
  const FieldDescriptor& f = rep.family.front().field();
  Mat<T> out = zeros<T>(f, off.back(), off.back());
  for (const auto& [p, coeff] : c) {
    const Index i = p.source(), j = p.target();
    if (rep.dims[i] == 0 || rep.dims[j] == 0) continue;
    out.block(off[i], off[j], rep.dims[i], rep.dims[j]) += coeff * path_action(rep, p);
  }
  return out;
}

template <class T>
ModuleSystem<T> rep_to_module_system(const QuiverRepresentation<T>& rep, const TruncatedGPA<T>& gpa) {
  validate_representation(rep);
  check_same_quiver(rep, gpa);
  const RelationSet<T>& rel = gpa.relations();
  const auto off = offsets(rep.dims);
  auto basis_text = [&](Index c) { return vector_text<T>(unit_vector<T>(off.back(), c)); };
  for (std::size_t r = 0; r < rel.elements.size(); ++r) {
    if (auto w = witness<T>(combination_action(rep, rel.elements[r]))) {
      throw Error(ErrorCode::RelationNotSatisfied, "relation " + rel.names[r] + " does not annihilate " + basis_text(*w));
    }
  }
  const Index cap = 1000000;
  for (const auto& p : enumerate_paths(rep.quiver, rep.family, gpa.truncation(), cap)) {
    if (rep.dims[p.source()] == 0 || rep.dims[p.target()] == 0) continue;
    if (auto w = witness<T>(path_action(rep, p))) {
      throw Error(ErrorCode::RelationNotSatisfied,
                  "path " + gpa.path_name(p) + " of length t does not annihilate " + basis_text(off[p.target()] + *w));
    }
  }
  ModuleSystem<T> ms{gpa.algebra(), gm_decompose(gpa.algebra(), gpa.gm_unit()), rep.dims, {}};
  const Index n = ms.size();
  const auto& paths = gpa.paths();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      std::vector<Mat<T>> acts;
      for (Index r = 0; r < ms.base.block(i, j).dim(); ++r) {
        const Vec<T> e = ms.base.block(i, j).basis_vector(r);
        Mat<T> x = zeros<T>(gpa.field(), rep.dims[i], rep.dims[j]);
        for (Index p = 0; p < e.size(); ++p) {
          if (is_zero(e(p))) continue;
          if (paths[p].source() != i || paths[p].target() != j) throw Error(ErrorCode::Internal, "block basis leaves e_i Q e_j");
          x += e(p) * path_action(rep, paths[p]);
        }
        acts.push_back(std::move(x));
      }
      ms.actions.push_back(std::move(acts));
    }
  validate_module_system(ms);
  return ms;
}

template <class T>
QuiverRepresentation<T> module_system_to_rep(const ModuleSystem<T>& ms, const TruncatedGPA<T>& gpa) {
  validate_module_system(ms);
  const Quiver& q = gpa.quiver();
  if (ms.size() != q.num_vertices() || ms.algebra.dim() != gpa.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "module system is not over the gm structure of the GPA");
  }
  QuiverRepresentation<T> rep{q, gpa.family(), ms.dims, {}, {}};
  const T one = scalar<T>(gpa.field(), 1);
  for (Index v = 0; v < q.num_vertices(); ++v) {
    std::vector<Mat<T>> acts;
    for (Index k = 0; k < gpa.omega(v).dim(); ++k)
      acts.push_back(block_action(ms, v, v, gpa.path_element(BasisPath{{v}, {}, {k}})));
    rep.vertex_actions.push_back(std::move(acts));
  }
  for (Index x = 0; x < q.num_arrows(); ++x) {
    const Index i = q.arrows[x].source, j = q.arrows[x].target;
    PathCombination<T> arrow;
    const Vec<T>& ui = gpa.omega(i).one();
    const Vec<T>& uj = gpa.omega(j).one();
    for (Index k = 0; k < ui.size(); ++k)
      for (Index l = 0; l < uj.size(); ++l)
        if (!is_zero(ui(k)) && !is_zero(uj(l))) arrow.push_back({BasisPath{{i, j}, {x}, {k, l}}, ui(k) * uj(l) * one});
    rep.arrow_maps.push_back(block_action(ms, i, j, gpa.element(arrow)));
  }
  validate_representation(rep);
  return rep;
}

template <class T>
bool same_data(const ModuleSystem<T>& a, const ModuleSystem<T>& b) {
  if (a.dims != b.dims || a.actions.size() != b.actions.size()) return false;
  for (std::size_t k = 0; k < a.actions.size(); ++k) {
    if (a.actions[k].size() != b.actions[k].size()) return false;
    for (std::size_t r = 0; r < a.actions[k].size(); ++r)
      if (!same_matrix<T>(a.actions[k][r], b.actions[k][r])) return false;
  }
  return true;
}

template <class T>
bool same_data(const QuiverRepresentation<T>& a, const QuiverRepresentation<T>& b) {
  if (a.dims != b.dims || a.vertex_actions.size() != b.vertex_actions.size() ||
      a.arrow_maps.size() != b.arrow_maps.size()) {
    return false;
  }
  for (std::size_t v = 0; v < a.vertex_actions.size(); ++v) {
    if (a.vertex_actions[v].size() != b.vertex_actions[v].size()) return false;
    for (std::size_t k = 0; k < a.vertex_actions[v].size(); ++k)
      if (!same_matrix<T>(a.vertex_actions[v][k], b.vertex_actions[v][k])) return false;
  }
  for (std::size_t x = 0; x < a.arrow_maps.size(); ++x)
    if (!same_matrix<T>(a.arrow_maps[x], b.arrow_maps[x])) return false;
  return true;
}

#define PATHALG_INSTANTIATE_REPRESENTATIONS(T)                                                                 \
  template struct ModuleSystem<T>;                                                                            \
  template struct LocalUnitaryModule<T>;                                                                      \
  template void validate_module_system<T>(const ModuleSystem<T>&);                                            \
  template Mat<T> block_action<T>(const ModuleSystem<T>&, Index, Index, const Vec<T>&);                       \
  template ModuleSystem<T> zero_module_system<T>(const FDAlgebra<T>&, const GmDecomposition<T>&);             \
  template void validate_local_module<T>(const LocalUnitaryModule<T>&);                                       \
  template LocalUnitaryModule<T> regular_module<T>(const FDAlgebra<T>&, const IdempotentSet<T>&);             \
  template LocalUnitaryModule<T> h_assemble<T>(const ModuleSystem<T>&);                                       \
  template ModuleSystem<T> g_split<T>(const LocalUnitaryModule<T>&);                                          \
  template Mat<T> split_basis<T>(const LocalUnitaryModule<T>&);                                              \
  template void validate_representation<T>(const QuiverRepresentation<T>&);                                  \
  template QuiverRepresentation<T> zero_representation<T>(const Quiver&, const std::vector<FDAlgebra<T>>&);   \
  template Mat<T> path_action<T>(const QuiverRepresentation<T>&, const BasisPath&);                           \
  template Mat<T> combination_action<T>(const QuiverRepresentation<T>&, const PathCombination<T>&);           \
  template ModuleSystem<T> rep_to_module_system<T>(const QuiverRepresentation<T>&, const TruncatedGPA<T>&);   \
  template QuiverRepresentation<T> module_system_to_rep<T>(const ModuleSystem<T>&, const TruncatedGPA<T>&);   \
  template bool same_data<T>(const ModuleSystem<T>&, const ModuleSystem<T>&);                                 \
  template bool same_data<T>(const QuiverRepresentation<T>&, const QuiverRepresentation<T>&);

PATHALG_INSTANTIATE_REPRESENTATIONS(Rational)
PATHALG_INSTANTIATE_REPRESENTATIONS(Modp)

}  // namespace pathalg
