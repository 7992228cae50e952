// Small generalized path algebra models shared by the tests.
#ifndef PATHALG_TESTS_MODELS_HPP
#define PATHALG_TESTS_MODELS_HPP

#include <functional>
#include <random>
#include <tuple>

#include "oracles.hpp"
#include "pathalg/gpa.hpp"
#include "pathalg/representations.hpp"

namespace models {

using namespace pathalg;

inline Quiver quiver(std::vector<std::string> vertices, std::vector<std::tuple<std::string, Index, Index>> arrows) {
  Quiver q{"D", std::move(vertices), {}};
  for (auto& [n, s, t] : arrows) q.arrows.push_back({n, s, t});
  return q;
}

template <class T>
std::vector<FDAlgebra<T>> ks(const FieldDescriptor& f, Index n) {
  return std::vector<FDAlgebra<T>>(static_cast<std::size_t>(n), ground_field_algebra<T>(f));
}

inline BasisPath unlabelled(std::vector<Index> vertices, std::vector<Index> arrows) {
  std::vector<Index> labels(vertices.size(), 0);
  return {std::move(vertices), std::move(arrows), std::move(labels)};
}

template <class T>
RelationSet<T> relations(int t, std::vector<PathCombination<T>> elements = {}, RelationMode mode = RelationMode::Weak) {
  RelationSet<T> r;
  r.truncation = t;
  r.mode = mode;
  r.elements = std::move(elements);
  for (std::size_t i = 0; i < r.elements.size(); ++i) r.names.push_back("r" + std::to_string(i + 1));
  return r;
}

/// 1 -a-> 2 -b-> 4, 1 -c-> 3 -d-> 4 with ab = cd, t = 3: dim 9.
template <class T>
TruncatedGPA<T> commutative_square(const FieldDescriptor& f) {
  Quiver q = quiver({"1", "2", "3", "4"}, {{"a", 0, 1}, {"b", 1, 3}, {"c", 0, 2}, {"d", 2, 3}});
  PathCombination<T> comm{{unlabelled({0, 1, 3}, {0, 1}), scalar<T>(f, 1)},
                          {unlabelled({0, 2, 3}, {2, 3}), scalar<T>(f, -1)}};
  return build_truncated_gpa(q, ks<T>(f, 4), relations<T>(3, {comm}, RelationMode::Strict));
}

/// Omega_1 = M_2, Omega_2 = k, one arrow 1 -> 2, t = 2: dim 9.
template <class T>
TruncatedGPA<T> generalized_model(const FieldDescriptor& f) {
  Quiver q = quiver({"1", "2"}, {{"a", 0, 1}});
  std::vector<FDAlgebra<T>> fam{oracle::full_matrix<T>(f, 2), ground_field_algebra<T>(f)};
  return build_truncated_gpa(q, fam, relations<T>(2));
}

/// A_n linear quiver 1 -> 2 -> ... -> n truncated at t.
template <class T>
TruncatedGPA<T> linear_quiver(const FieldDescriptor& f, Index n, int t) {
  std::vector<std::string> vs;
  std::vector<std::tuple<std::string, Index, Index>> as;
  for (Index i = 0; i < n; ++i) vs.push_back(std::to_string(i + 1));
  for (Index i = 0; i + 1 < n; ++i) as.emplace_back("a" + std::to_string(i + 1), i, i + 1);
  return build_truncated_gpa(quiver(vs, as), ks<T>(f, n), relations<T>(t));
}

/// One loop x with rho = {x^k}, truncated at t.
template <class T>
TruncatedGPA<T> loop_model(const FieldDescriptor& f, Index k, int t) {
  std::vector<Index> vs(static_cast<std::size_t>(k + 1), 0), as(static_cast<std::size_t>(k), 0);
  PathCombination<T> power{{unlabelled(vs, as), scalar<T>(f, 1)}};
  return build_truncated_gpa(quiver({"1"}, {{"x", 0, 0}}), ks<T>(f, 1), relations<T>(t, {power}));
}

/// Omega-module of dimension d: k for dim Omega = 1 (any d), otherwise
/// Omega = M_n on E_ab row major acting on (k^n)^r with d = n r.
template <class T>
std::vector<Mat<T>> omega_action(const FieldDescriptor& f, const FDAlgebra<T>& omega, Index d) {
  Index n = 1;
  while (n * n < omega.dim()) ++n;
  const Index r = d / n;  // n = 1 for Omega = k
  std::vector<Mat<T>> acts;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      Mat<T> m = oracle::zeros<T>(f, d, d);
      for (Index c = 0; c < r; ++c) m(a * r + c, b * r + c) = scalar<T>(f, 1);
      acts.push_back(m);
    }
  return acts;
}

/// Random maps for every arrow; dims[v] must suit Omega_v.
template <class T>
QuiverRepresentation<T> random_representation(const TruncatedGPA<T>& gpa, const std::vector<Index>& dims,
                                              std::mt19937_64& rng) {
  const FieldDescriptor& f = gpa.field();
  QuiverRepresentation<T> rep{gpa.quiver(), gpa.family(), dims, {}, {}};
  for (Index v = 0; v < gpa.quiver().num_vertices(); ++v) rep.vertex_actions.push_back(omega_action<T>(f, gpa.omega(v), dims[v]));
  for (const auto& a : gpa.quiver().arrows)
    rep.arrow_maps.push_back(oracle::random_matrix<T>(f, dims[a.source], dims[a.target], rng));
  return rep;
}

/// A GPA with a sampler of representations satisfying its relations.
template <class T>
struct RepModel {
  std::string name;
  TruncatedGPA<T> gpa;
  std::function<QuiverRepresentation<T>(std::mt19937_64&)> draw;
};

template <class T>
std::vector<RepModel<T>> rep_models(const FieldDescriptor& f) {
  auto dim = [](std::mt19937_64& rng, Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); };
  std::vector<RepModel<T>> out;
  {
    auto g = linear_quiver<T>(f, 3, 3);
    out.push_back({"A3", g, [g, dim](std::mt19937_64& rng) {
                     return random_representation<T>(g, {dim(rng, 0, 3), dim(rng, 0, 3), dim(rng, 0, 3)}, rng);
                   }});
  }
  {
    // x^2 = 0: f = P N P^-1 with N a single corner entry
    auto g = loop_model<T>(f, 2, 3);
    out.push_back({"loop", g, [g, dim, f](std::mt19937_64& rng) {
                     const Index d = dim(rng, 0, 3);
                     auto rep = random_representation<T>(g, {d}, rng);
                     Mat<T> n = oracle::zeros<T>(f, d, d);
                     if (d >= 2) n(0, d - 1) = random_scalar<T>(f, rng);
                     auto [p, pinv] = oracle::random_unimodular<T>(f, d, rng);
                     rep.arrow_maps[0] = p * n * pinv;
                     return rep;
                   }});
  }
  {
    auto g = generalized_model<T>(f);
    out.push_back({"generalized", g, [g, dim](std::mt19937_64& rng) {
                     return random_representation<T>(g, {2 * dim(rng, 0, 1), dim(rng, 0, 3)}, rng);
                   }});
  }
  {
    // ab = cd: f_d = f_c^-1 f_a f_b with f_c unimodular
    auto g = commutative_square<T>(f);
    out.push_back({"square", g, [g, dim](std::mt19937_64& rng) {
                     const Index d1 = dim(rng, 0, 3);
                     auto rep = random_representation<T>(g, {d1, dim(rng, 0, 3), d1, dim(rng, 0, 3)}, rng);
                     auto [c, cinv] = oracle::random_unimodular<T>(g.field(), d1, rng);
                     rep.arrow_maps[2] = c;
                     rep.arrow_maps[3] = cinv * rep.arrow_maps[0] * rep.arrow_maps[1];
                     return rep;
                   }});
  }
  return out;
}

}  // namespace models

#endif  // PATHALG_TESTS_MODELS_HPP
