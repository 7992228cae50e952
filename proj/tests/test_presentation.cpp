#include <doctest.h>

#include <random>

#include "models.hpp"
#include "oracles.hpp"
#include "pathalg/presentation.hpp"

using namespace pathalg;

namespace {

const FieldDescriptor kQ = FieldDescriptor::rationals();

Vec<Rational> qv(std::initializer_list<long> xs) {
  Vec<Rational> v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long x : xs) v(i++) = Rational(x);
  return v;
}

template <class T>
void check_round_trip(const FDAlgebra<T>& alg, std::mt19937_64& rng) {
  auto p = extract_presentation(alg, rng);
  auto rep = verify_presentation(p, alg);
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok());
  CHECK(rep.presented_dim == alg.dim());
  CHECK(rep.vertices == wedderburn_artin_number(alg, rng));
}

}  // namespace

TEST_CASE("compute_splitting examples") {
  std::mt19937_64 rng(1);
  // [TRIVIAL] semisimple input: A = Lambda, r = 0, xi = identity
  auto m2 = oracle::full_matrix<Rational>(kQ, 2);
  auto s = compute_splitting(m2, rng);
  CHECK(s.radical.radical.is_trivial());
  CHECK(s.lifted == Subspace<Rational>::full(4));
  CHECK(s.section == Mat<Rational>::Identity(4, 4));

  // [DERIVED] UT_2 (E11, E12, E22): A = span{E11, E22}, r = span{E12}
  auto ut = oracle::upper_triangular<Rational>(kQ, 2);
  s = compute_splitting(ut, rng);
  CHECK(s.lifted == Subspace<Rational>::span(3, std::vector<Vec<Rational>>{qv({1, 0, 0}), qv({0, 0, 1})}));
  CHECK(s.radical.radical == Subspace<Rational>::span(3, std::vector<Vec<Rational>>{qv({0, 1, 0})}));
  CHECK(s.lifted.dim() + s.radical.radical.dim() == 3);

  // [DERIVED] k[x]/(x^3): A = span{1}
  auto kx = oracle::truncated_polynomial<Rational>(kQ, 3);
  s = compute_splitting(kx, rng);
  CHECK(s.lifted == Subspace<Rational>::span(3, std::vector<Vec<Rational>>{qv({1, 0, 0})}));
  CHECK(s.nilpotency_index() == 3);

  CHECK_THROWS_AS(compute_splitting(oracle::gaussian_rationals(), rng), Error);
}

TEST_CASE("compute_splitting on conjugated bases") {
  // The verification inside compute_splitting (xi multiplicative, pi xi = id,
  // A + r direct) is the oracle; here the bases hide the idempotents.
  std::mt19937_64 rng(7);
  std::vector<FDAlgebra<Rational>> algs{oracle::upper_triangular<Rational>(kQ, 3),
                                        oracle::product(oracle::full_matrix<Rational>(kQ, 2),
                                                        oracle::truncated_polynomial<Rational>(kQ, 2)),
                                        models::generalized_model<Rational>(kQ).algebra()};
  for (int round = 0; round < 4; ++round)
    for (const auto& a : algs) {
      auto [p, pinv] = oracle::random_unimodular<Rational>(kQ, a.dim(), rng);
      auto c = oracle::change_basis(a, p, pinv);
      auto s = compute_splitting(c, rng);
      CHECK(s.lifted.dim() + s.radical.radical.dim() == c.dim());
      CHECK(is_multiplicative(s.quotient(), c, s.section));
      for (const auto& lifted : s.lifted_units)
        for (const auto& u : lifted.units) CHECK(s.lifted.contains(u));
    }
}

TEST_CASE("extract_presentation examples") {
  std::mt19937_64 rng(3);
  // [DERIVED] M_2(Q): one vertex, Omega = M_2, no arrows, N = 0
  auto m2 = oracle::full_matrix<Rational>(kQ, 2);
  auto p = extract_presentation(m2, rng);
  CHECK(p.quiver.num_vertices() == 1);
  CHECK(p.family[0].dim() == 4);
  CHECK(p.quiver.num_arrows() == 0);
  CHECK(p.kernel.is_trivial());
  CHECK(verify_presentation(p, m2).ok());

  // [DERIVED] UT_2: 2 vertices, one arrow v1 -> v2, N = 0 at t = 2
  auto ut = oracle::upper_triangular<Rational>(kQ, 2);
  p = extract_presentation(ut, rng);
  REQUIRE(p.quiver.num_arrows() == 1);
  CHECK(p.quiver.arrows[0].source == 0);
  CHECK(p.quiver.arrows[0].target == 1);
  CHECK(p.truncation == 2);
  CHECK(p.kernel.is_trivial());
  CHECK(p.relations.elements.empty());
  CHECK(verify_presentation(p, ut).ok());

  // [DERIVED] k[x]/(x^3): one loop, N = the length-3 stratum (nothing below it)
  auto kx = oracle::truncated_polynomial<Rational>(kQ, 3);
  p = extract_presentation(kx, rng);
  CHECK(p.quiver.num_arrows() == 1);
  CHECK(p.truncation == 3);
  CHECK(p.free.dim() == 3);
  CHECK(p.kernel.is_trivial());
  CHECK(p.stratum_t == 1);
  CHECK(p.relations.elements.empty());
  CHECK(verify_presentation(p, kx).ok());

  // the commutative square comes back with its commutativity relation
  auto sq = models::commutative_square<Rational>(kQ).algebra();
  p = extract_presentation(sq, rng);
  CHECK(p.quiver.num_vertices() == 4);
  CHECK(p.quiver.num_arrows() == 4);
  CHECK(p.relations.elements.size() == 1);
  CHECK(verify_presentation(p, sq).ok());

  // Omega_1 = M_2: e_1 (r/r^2) e_2 is 4-dimensional, so 4 arrows and
  // relations of length 1 (weak relations, not J^2).
  auto gm = models::generalized_model<Rational>(kQ).algebra();
  p = extract_presentation(gm, rng);
  CHECK(p.quiver.num_vertices() == 2);
  CHECK(p.quiver.num_arrows() == 4);
  auto rep = verify_presentation(p, gm);
  CHECK(rep.ok());
  CHECK_FALSE(rep.n_in_j2);
}

TEST_CASE("extract_elementary_presentation") {
  std::mt19937_64 rng(5);
  // [DERIVED] k[x]/(x^2): 1 vertex, 1 loop, N = span{loop^2} inside J^2
  auto k2 = oracle::truncated_polynomial<Rational>(kQ, 2);
  auto p = extract_elementary_presentation(k2, rng);
  CHECK(p.quiver.num_arrows() == 1);
  CHECK(p.kernel.is_trivial());
  CHECK(p.stratum_t == 1);  // loop^2
  auto rep = verify_presentation(p, k2);
  CHECK(rep.ok());
  CHECK(rep.n_in_j2);

  // [DERIVED] UT_3: A_3 with t = 3 has dim 6, phi bijective, N = 0 below t
  auto ut3 = oracle::upper_triangular<Rational>(kQ, 3);
  p = extract_elementary_presentation(ut3, rng);
  CHECK(p.quiver.num_vertices() == 3);
  REQUIRE(p.quiver.num_arrows() == 2);
  CHECK(p.quiver.arrows[0].source + 1 == p.quiver.arrows[0].target);
  CHECK(p.quiver.arrows[1].source + 1 == p.quiver.arrows[1].target);
  CHECK(p.relations.elements.empty());
  CHECK(verify_presentation(p, ut3).ok());

  // Elementary mode: kernel rows vanish on paths of length 0 and 1.
  auto sq = models::commutative_square<Rational>(kQ).algebra();
  p = extract_elementary_presentation(sq, rng);
  for (Index row = 0; row < p.kernel.dim(); ++row)
    for (std::size_t k = 0; k < p.free.free_paths().size(); ++k)
      if (p.free.free_paths()[k].length() < 2) CHECK(is_zero(p.kernel.basis()(row, static_cast<Index>(k))));
  CHECK(verify_presentation(p, sq).ok());

  // [TRIVIAL] block of dimension 4
  try {
    extract_elementary_presentation(oracle::full_matrix<Rational>(kQ, 2), rng);
    FAIL("expected NotElementary");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotElementary);
  }
}

TEST_CASE("verify_presentation detects tampering") {
  std::mt19937_64 rng(11);
  auto sq = models::commutative_square<Rational>(kQ).algebra();
  auto p = extract_presentation(sq, rng);
  REQUIRE(verify_presentation(p, sq).ok());

  // [TRIVIAL] dropping the relation makes the quotient larger
  auto dropped = p;
  dropped.relations.elements.pop_back();
  dropped.relations.names.pop_back();
  auto rep = verify_presentation(dropped, sq);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.dims_match);
  CHECK(rep.presented_dim == 10);

  // [DERIVED] redirecting an arrow breaks the arrow-count formula
  auto redirected = p;
  redirected.quiver.arrows[0].target = (redirected.quiver.arrows[0].target + 1) % 4;
  rep = verify_presentation(redirected, sq);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.arrow_counts);
}

TEST_CASE("Lemma 3.3 counterexample is re-lifted") {
  // {E11 + E12, E22 - E12} is a complete set of UT_2 outside A = span{E11, E22}.
  std::mt19937_64 rng(2);
  auto ut = oracle::upper_triangular<Rational>(kQ, 2);
  IdempotentSet<Rational> idems{{qv({1, 1, 0}), qv({0, -1, 1})}};
  CHECK(validate_complete_set(ut, idems.elements).size() == 2);
  auto p = extract_presentation(ut, rng, idems);
  CHECK(p.relifted == std::vector<bool>{true, true});
  CHECK(p.idempotents[0] == qv({1, 0, 0}));
  CHECK(p.idempotents[1] == qv({0, 0, 1}));
  CHECK(verify_presentation(p, ut).ok());

  // idempotents that are not central modulo r are rejected
  auto m2 = oracle::full_matrix<Rational>(kQ, 2);
  IdempotentSet<Rational> diag{{qv({1, 0, 0, 0}), qv({0, 0, 0, 1})}};
  CHECK_THROWS_AS(extract_presentation(m2, rng, diag), Error);
}

TEST_CASE("merged idempotents give presentations with m vertices") {
  // Cor 3.11(iii) / 3.13(iii)
  std::mt19937_64 rng(4);
  // Coarse vertices make k(D, Omega) large: a vertex with Omega = k^c and l
  // loops has l^s c^(s+1) paths of length s. The square is run for m >= 2.
  std::vector<std::pair<FDAlgebra<Rational>, Index>> algs{{oracle::diagonal<Rational>(kQ, 3), 1},
                                                          {oracle::upper_triangular<Rational>(kQ, 3), 1},
                                                          {models::commutative_square<Rational>(kQ).algebra(), 2}};
  for (const auto& [a, first] : algs) {
    auto s = compute_splitting(a, rng);
    const Index n = s.wedderburn.n_wa();
    for (Index m = first; m <= n; ++m) {
      auto merged = merge_idempotents(s.central, tail_merge_partition(n, m));
      auto p = extract_presentation(a, rng, std::optional<IdempotentSet<Rational>>(merged));
      CHECK(p.quiver.num_vertices() == m);
      CHECK(verify_presentation(p, a).ok());
    }
  }
}

TEST_CASE("wedderburn_artin_number") {
  std::mt19937_64 rng(6);
  CHECK(wedderburn_artin_number(oracle::full_matrix<Rational>(kQ, 2), rng) == 1);
  CHECK(wedderburn_artin_number(oracle::diagonal<Rational>(kQ, 3), rng) == 3);
  CHECK(wedderburn_artin_number(oracle::upper_triangular<Rational>(kQ, 2), rng) == 2);
}

TEST_CASE("property: round trip on GPA models and conjugates") {
  // Cor 3.11(i): |D_0| <= n_WA(Q) for built GPAs; Thm 3.8 round trip.
  std::mt19937_64 rng(13);
  const auto f7 = FieldDescriptor::prime_field(101);
  std::vector<TruncatedGPA<Rational>> gpas{models::linear_quiver<Rational>(kQ, 3, 3), models::loop_model<Rational>(kQ, 2, 3),
                                           models::commutative_square<Rational>(kQ), models::generalized_model<Rational>(kQ)};
  for (const auto& g : gpas) {
    CHECK(g.quiver().num_vertices() <= wedderburn_artin_number(g.algebra(), rng));
    check_round_trip(g.algebra(), rng);
    auto [p, pinv] = oracle::random_unimodular<Rational>(kQ, g.dim(), rng);
    check_round_trip(oracle::change_basis(g.algebra(), p, pinv), rng);
  }
  for (int round = 0; round < 3; ++round) {
    auto g = models::commutative_square<Modp>(f7);
    auto [p, pinv] = oracle::random_unimodular<Modp>(f7, g.dim(), rng);
    check_round_trip(oracle::change_basis(g.algebra(), p, pinv), rng);
  }
  check_round_trip(oracle::full_matrix<Modp>(FieldDescriptor::prime_field(5), 2), rng);
}
