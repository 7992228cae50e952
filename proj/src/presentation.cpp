#include "pathalg/presentation.hpp"

namespace pathalg {

namespace {

template <class T>
bool equal(const Vec<T>& a, const Vec<T>& b) {
  return all_zero<T>(Vec<T>(a - b));
}

// w^-1 in the corner f Lambda f for w = f - n with n nilpotent: f + n + n^2 + ...
template <class T>
Vec<T> corner_inverse(const FDAlgebra<T>& alg, const Vec<T>& f, const Vec<T>& w) {
  Vec<T> n = f - w, power = f, inv = f;
  for (Index k = 0; k <= alg.dim(); ++k) {
    power = alg.multiply(power, n);
    if (all_zero<T>(power)) return inv;
    inv += power;
  }
  throw Error(ErrorCode::Internal, "lifted off-diagonal product is not invertible in its corner");
}

template <class T>
Subspace<T> sandwich(const FDAlgebra<T>& alg, const Vec<T>& e, const Subspace<T>& s, const Vec<T>& f) {
  SpanBuilder<T> b(alg.dim());
  for (Index k = 0; k < s.dim(); ++k) b.add(alg.multiply(alg.multiply(e, s.basis_vector(k)), f));
  return b.finish();
}

}  // namespace

template <class T>
Splitting<T> compute_splitting(const FDAlgebra<T>& algebra, std::mt19937_64& rng) {
  if (!algebra.has_unity() || algebra.dim() == 0) {
    throw Error(ErrorCode::NoUnity, "a splitting needs a nonzero algebra with unity");
  }
  Splitting<T> sp;
  sp.algebra = algebra;
  sp.radical = radical(algebra);
  const FDAlgebra<T>& s = sp.quotient();
  const Quotient<T>& quo = sp.radical.quotient;
  sp.wedderburn = wedderburn_blocks(s, rng);

  IdempotentSet<T> diagonal;
  for (std::size_t b = 0; b < sp.wedderburn.blocks.size(); ++b) {
    MatrixUnits<T> mu = matrix_units(sp.wedderburn.blocks[b], rng);
    for (auto& u : mu.units) u = sp.wedderburn.block_bases[b].transpose() * u;
    for (Index a = 0; a < mu.n; ++a) diagonal.elements.push_back(mu(a, a));
    sp.units.push_back(std::move(mu));
  }
  IdempotentSet<T> lifted_diag = lift_idempotents(algebra, sp.radical.radical, quo, diagonal);

  Index next = 0;
  for (const auto& mu : sp.units) {
    const Index n = mu.n;
    std::vector<Vec<T>> f(lifted_diag.elements.begin() + next, lifted_diag.elements.begin() + next + n);
    next += n;
    std::vector<Vec<T>> to1(n), from1(n);  // E_a1, E_1a
    to1[0] = from1[0] = f[0];
    for (Index k = 1; k < n; ++k) {
      Vec<T> u = algebra.multiply(algebra.multiply(f[0], quo.basis.lift(mu(0, k))), f[k]);
      Vec<T> v = algebra.multiply(algebra.multiply(f[k], quo.basis.lift(mu(k, 0))), f[0]);
      Vec<T> w = algebra.multiply(u, v);
      from1[k] = u;
      to1[k] = algebra.multiply(v, corner_inverse(algebra, f[0], w));
    }
    MatrixUnits<T> lifted;
    lifted.n = n;
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) lifted.units.push_back(algebra.multiply(to1[a], from1[b]));
    Vec<T> c = algebra.zero();
    for (Index a = 0; a < n; ++a) {
      c += lifted(a, a);
      for (Index b = 0; b < n; ++b)
        for (Index d = 0; d < n; ++d)
          for (Index e = 0; e < n; ++e) {
            Vec<T> p = algebra.multiply(lifted(a, b), lifted(d, e));
            if (!(b == d ? equal<T>(p, lifted(a, e)) : all_zero<T>(p))) {
              throw Error(ErrorCode::Internal, "lifted matrix units fail E_ab E_cd = delta_bc E_ad");
            }
          }
    }
    sp.central.elements.push_back(std::move(c));
    sp.lifted_units.push_back(std::move(lifted));
  }

  const Index ds = s.dim();
  Mat<T> res(ds, ds), lift(algebra.dim(), ds);
  Index col = 0;
  for (std::size_t b = 0; b < sp.units.size(); ++b)
    for (std::size_t k = 0; k < sp.units[b].units.size(); ++k, ++col) {
      res.col(col) = sp.units[b].units[k];
      lift.col(col) = sp.lifted_units[b].units[k];
    }
  if (col != ds) throw Error(ErrorCode::Internal, "matrix units do not form a basis of the quotient");
  auto res_inv = inverse<T>(res);
  if (!res_inv) throw Error(ErrorCode::Internal, "matrix units are linearly dependent");
  sp.section = lift * *res_inv;
  if (!is_multiplicative(s, algebra, sp.section)) throw Error(ErrorCode::Internal, "section is not multiplicative");
  if (!all_zero<T>(Mat<T>(quo.map * sp.section - Mat<T>::Identity(ds, ds)))) {
    throw Error(ErrorCode::Internal, "pi xi is not the identity");
  }
  sp.lifted = image<T>(sp.section);
  if (sp.lifted.dim() + sp.radical.radical.dim() != algebra.dim() ||
      !sp.lifted.intersect(sp.radical.radical).is_trivial()) {
    throw Error(ErrorCode::Internal, "lifted subalgebra is not a complement of the radical");
  }
  sp.project_lifted = sp.section * quo.map;
  validate_complete_set(algebra, sp.central.elements);
  return sp;
}

namespace {

template <class T>
Presentation<T> present(const FDAlgebra<T>& algebra, std::mt19937_64& rng,
                        const std::optional<IdempotentSet<T>>& supplied, RelationMode mode) {
  Splitting<T> sp = compute_splitting(algebra, rng);
  const FDAlgebra<T>& s = sp.quotient();
  const Mat<T>& pi = sp.pi();
  const int t = sp.nilpotency_index();
  const Index nb = static_cast<Index>(sp.units.size());
  if (mode == RelationMode::Strict) {
    for (Index b = 0; b < nb; ++b)
      if (sp.units[b].n != 1) {
        throw Error(ErrorCode::NotElementary, "block " + std::to_string(b + 1) + " of the semisimple quotient is M_" +
                                                  std::to_string(sp.units[b].n) + ", not k");
      }
  }

  Presentation<T> p;
  p.mode = mode;
  p.truncation = t;
  p.n_wa = sp.wedderburn.n_wa();
  if (supplied) {
    validate_complete_set(algebra, supplied->elements);
    for (Index i = 0; i < supplied->size(); ++i) {
      Vec<T> e = pi * (*supplied)[i];
      for (Index k = 0; k < s.dim(); ++k) {
        Vec<T> b = s.basis_vector(k);
        if (!equal<T>(s.multiply(e, b), s.multiply(b, e))) {
          throw Error(ErrorCode::InvalidIdempotentSet,
                      "e" + std::to_string(i + 1) + " is not central modulo the radical");
        }
      }
      // Lemma 3.3 needs this re-lift: a complete set need not lie in A.
      Vec<T> lifted = sp.project_lifted * (*supplied)[i];
      p.relifted.push_back(!equal<T>(lifted, (*supplied)[i]));
      p.idempotents.elements.push_back(std::move(lifted));
    }
    p.idempotents = validate_complete_set(algebra, p.idempotents.elements);
  } else {
    p.idempotents = sp.central;
    p.relifted.assign(static_cast<std::size_t>(nb), false);
  }

  const Index nv = p.idempotents.size();
  std::vector<int> owner(static_cast<std::size_t>(nb), -1);
  for (Index i = 0; i < nv; ++i) {
    Vec<T> e = pi * p.idempotents[i], covered = s.zero();
    std::vector<Vec<T>> rows;
    std::vector<std::string> labels;
    Mat<T> vmap(algebra.dim(), 0);
    for (Index b = 0; b < nb; ++b) {
      const Vec<T>& z = sp.wedderburn.central[b];
      if (!equal<T>(s.multiply(e, z), z)) continue;
      if (owner[b] != -1) throw Error(ErrorCode::Internal, "block claimed by two vertices");
      owner[b] = static_cast<int>(i);
      covered += z;
      const auto& mu = sp.units[b];
      for (Index a = 0; a < mu.n; ++a)
        for (Index c = 0; c < mu.n; ++c) {
          rows.push_back(mu(a, c));
          labels.push_back(mu.n == 1 ? "e" + std::to_string(b + 1)
                                     : "m" + std::to_string(b + 1) + "_" + std::to_string(a + 1) + std::to_string(c + 1));
          vmap.conservativeResize(Eigen::NoChange, vmap.cols() + 1);
          vmap.col(vmap.cols() - 1) = sp.lifted_units[b](a, c);
        }
    }
    if (!equal<T>(covered, e)) throw Error(ErrorCode::Internal, "idempotent is not a sum of central block idempotents");
    Mat<T> basis(static_cast<Index>(rows.size()), s.dim());
    for (std::size_t k = 0; k < rows.size(); ++k) basis.row(static_cast<Index>(k)) = rows[k].transpose();
    p.family.push_back(restrict_algebra(s, basis, labels));
    p.vertex_maps.push_back(std::move(vmap));
    p.quiver.vertices.push_back("v" + std::to_string(i + 1));
  }
  p.quiver.name = "D";

  // B_ij: the echelon basis of e'_i r e'_j, greedily independent modulo r^2.
  const Subspace<T>& r = sp.radical.radical;
  const Subspace<T> r2 = product_space(algebra, r, r);
  SpanBuilder<T> modulo(algebra.dim());
  for (Index k = 0; k < r2.dim(); ++k) modulo.add(r2.basis_vector(k));
  for (Index i = 0; i < nv; ++i)
    for (Index j = 0; j < nv; ++j) {
      Subspace<T> block = sandwich(algebra, p.idempotents[i], r, p.idempotents[j]);
      std::vector<Vec<T>> chosen;
      for (Index k = 0; k < block.dim(); ++k)
        if (modulo.add(block.basis_vector(k))) chosen.push_back(block.basis_vector(k));
      for (std::size_t k = 0; k < chosen.size(); ++k) {
        std::string name = "a" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
        if (chosen.size() > 1) name += "_" + std::to_string(k + 1);
        p.quiver.arrows.push_back({name, i, j});
        p.arrow_elements.push_back(chosen[k]);
      }
    }

  RelationSet<T> none;
  none.truncation = t;
  p.free = build_truncated_gpa(p.quiver, p.family, none);
  // Rejects any length-t path with nonzero image: this certifies J^t in N.
  p.phi = gpa_hom_from_generators(p.free, algebra, p.vertex_maps, p.arrow_elements);
  if (rank<T>(p.phi) != algebra.dim()) throw Error(ErrorCode::Internal, "phi is not surjective");
  p.kernel = kernel<T>(p.phi);
  p.stratum_t = count_free_paths(p.quiver, p.family, t + 1) - p.free.dim();

  const auto& paths = p.free.free_paths();
  const Index min_length = mode == RelationMode::Strict ? 2 : 1;
  for (Index row = 0; row < p.kernel.dim(); ++row)
    for (std::size_t k = 0; k < paths.size(); ++k)
      if (paths[k].length() < min_length && !is_zero(p.kernel.basis()(row, static_cast<Index>(k)))) {
        throw Error(ErrorCode::KernelNotInJ, "ker phi has a component of length " + std::to_string(paths[k].length()));
      }

  p.relations.truncation = t;
  p.relations.mode = mode;
  for (Index row = 0; row < p.kernel.dim(); ++row) {
    PathCombination<T> c;
    for (std::size_t k = 0; k < paths.size(); ++k) {
      const T& x = p.kernel.basis()(row, static_cast<Index>(k));
      if (!is_zero(x)) c.push_back({paths[k], x});
    }
    p.relations.names.push_back("n" + std::to_string(row + 1));
    p.relations.elements.push_back(std::move(c));
  }
  return p;
}

}  // namespace

template <class T>
Presentation<T> extract_presentation(const FDAlgebra<T>& algebra, std::mt19937_64& rng,
                                     const std::optional<IdempotentSet<std::type_identity_t<T>>>& idempotents) {
  return present(algebra, rng, idempotents, RelationMode::Weak);
}

template <class T>
Presentation<T> extract_elementary_presentation(const FDAlgebra<T>& algebra, std::mt19937_64& rng) {
  return present<T>(algebra, rng, std::nullopt, RelationMode::Strict);
}

template <class T>
PresentationReport verify_presentation(const Presentation<T>& p, const FDAlgebra<T>& target) {
  PresentationReport rep;
  rep.algebra_dim = target.dim();
  rep.vertices = p.quiver.num_vertices();
  rep.arrows = p.quiver.num_arrows();
  rep.relations = static_cast<Index>(p.relations.elements.size());
  rep.mode = p.mode;
  auto fail = [&](const std::string& what) { rep.failures.push_back(what); };

  rep.n_in_j = rep.n_in_j2 = true;
  for (const auto& rel : p.relations.elements)
    for (const auto& term : rel) {
      if (is_zero(term.coeff)) continue;
      if (term.path.length() < 1) rep.n_in_j = false;
      if (term.path.length() < 2) rep.n_in_j2 = false;
    }
  if (!rep.n_in_j) fail("a relation has a length-0 component");
  if (p.mode == RelationMode::Strict && !rep.n_in_j2) fail("a relation has a component of length < 2");

  try {
    TruncatedGPA<T> q = build_truncated_gpa(p.quiver, p.family, p.relations);
    rep.presented_dim = q.dim();
    rep.dims_match = q.dim() == target.dim();
    if (!rep.dims_match) {
      fail("dim k(D, Omega, rho) = " + std::to_string(q.dim()) + " but dim Lambda = " + std::to_string(target.dim()));
    }
    rep.jt_in_n = true;
    for (const auto& path : enumerate_paths(q.quiver(), q.family(), q.truncation(), q.free_paths().size() + 100000))
      if (!all_zero<T>(path_image(q, target, p.vertex_maps, p.arrow_elements, path))) {
        rep.jt_in_n = false;
        fail("path " + q.path_name(path) + " of length t does not map to zero");
        break;
      }
    Mat<T> m = gpa_hom_from_generators(q, target, p.vertex_maps, p.arrow_elements);
    rep.homomorphism = true;
    rep.bijective = m.rows() == m.cols() && rank<T>(m) == m.rows();
    if (!rep.bijective) fail("phi is not bijective");
  } catch (const Error& e) {
    fail(e.what());
  }

  try {
    IdempotentSet<T> idems = validate_complete_set(target, p.idempotents.elements);
    RadicalData<T> rd = radical(target);
    Subspace<T> r2 = product_space(target, rd.radical, rd.radical);
    rep.arrow_counts = idems.size() == p.quiver.num_vertices();
    for (Index i = 0; i < idems.size() && rep.arrow_counts; ++i)
      for (Index j = 0; j < idems.size(); ++j) {
        Index expected = sandwich(target, idems[i], rd.radical, idems[j]).dim() - sandwich(target, idems[i], r2, idems[j]).dim();
        Index declared = 0;
        for (const auto& a : p.quiver.arrows) declared += a.source == i && a.target == j;
        if (declared != expected) {
          rep.arrow_counts = false;
          fail("arrows " + p.quiver.vertices[i] + " -> " + p.quiver.vertices[j] + ": " + std::to_string(declared) +
               " declared, dim e (r/r^2) e = " + std::to_string(expected));
          break;
        }
      }
    if (idems.size() != p.quiver.num_vertices()) fail("one idempotent per vertex required");
  } catch (const Error& e) {
    fail(e.what());
  }
  return rep;
}

template <class T>
Index wedderburn_artin_number(const FDAlgebra<T>& algebra, std::mt19937_64& rng) {
  return wedderburn_blocks(radical(algebra).quotient.algebra, rng).n_wa();
}

#define PATHALG_INSTANTIATE_PRESENTATION(T)                                                                     \
  template Splitting<T> compute_splitting<T>(const FDAlgebra<T>&, std::mt19937_64&);                            \
  template Presentation<T> extract_presentation<T>(const FDAlgebra<T>&, std::mt19937_64&,                       \
                                                   const std::optional<IdempotentSet<T>>&);                     \
  template Presentation<T> extract_elementary_presentation<T>(const FDAlgebra<T>&, std::mt19937_64&);           \
  template PresentationReport verify_presentation<T>(const Presentation<T>&, const FDAlgebra<T>&);              \
  template Index wedderburn_artin_number<T>(const FDAlgebra<T>&, std::mt19937_64&);

PATHALG_INSTANTIATE_PRESENTATION(Rational)
PATHALG_INSTANTIATE_PRESENTATION(Modp)

}  // namespace pathalg
