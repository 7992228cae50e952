#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pathalg/polynomial.hpp"

using namespace pathalg;

namespace {

const FieldDescriptor kQ = FieldDescriptor::rationals();

Mat<Rational> q_matrix(Index r, Index c, std::initializer_list<long> entries) {
  Mat<Rational> m(r, c);
  auto it = entries.begin();
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = Rational(*it++);
  return m;
}

template <class T>
void rref_properties(const FieldDescriptor& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(0, 8);
  Index r = size(rng), c = size(rng);
  Mat<T> m = oracle::random_matrix<T>(f, r, c, rng, -2, 2);
  // sprinkle rank deficiency
  if (r >= 2) m.row(r - 1) = m.row(0) + m.row(1);
  Rref<T> a = rref<T>(m);
  Rref<T> b = rref<T>(a.reduced);
  CHECK(a.reduced == b.reduced);
  CHECK(a.rank == b.rank);
  for (std::size_t k = 1; k < a.pivots.size(); ++k) CHECK(a.pivots[k - 1] < a.pivots[k]);
  CHECK(Subspace<T>::span(c, m) == Subspace<T>::span(c, a.reduced));
  Subspace<T> ker = kernel<T>(m);
  CHECK(ker.dim() == c - a.rank);
  for (Index k = 0; k < ker.dim(); ++k) CHECK(all_zero<T>(Vec<T>(m * ker.basis_vector(k))));
  // canonical form under permutation and scaling of generators
  if (r > 0) {
    Mat<T> shuffled = m;
    std::vector<Index> perm(static_cast<std::size_t>(r));
    for (Index i = 0; i < r; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Index i = 0; i < r; ++i) shuffled.row(i) = m.row(perm[static_cast<std::size_t>(i)]) * scalar<T>(f, 1 + (i % 3));
    CHECK(Subspace<T>::span(c, shuffled) == Subspace<T>::span(c, m));
  }
}

}  // namespace

TEST_CASE("rref examples") {
  Rref<Rational> id = rref<Rational>(Mat<Rational>::Identity(3, 3));
  CHECK(id.rank == 3);
  CHECK(id.pivots == std::vector<Index>{0, 1, 2});
  CHECK(id.reduced == Mat<Rational>::Identity(3, 3));

  Rref<Rational> z = rref<Rational>(Mat<Rational>::Zero(2, 4));
  CHECK(z.rank == 0);
  CHECK(z.pivots.empty());

  // [DERIVED] hand reduction: R2 -= R1/2, then scale R1 by 1/2.
  Rref<Rational> r = rref<Rational>(q_matrix(2, 2, {2, 4, 1, 2}));
  CHECK(r.rank == 1);
  CHECK(r.pivots == std::vector<Index>{0});
  CHECK(r.reduced == q_matrix(2, 2, {1, 2, 0, 0}));

  CHECK(rref<Rational>(Mat<Rational>(0, 0)).rank == 0);
}

TEST_CASE("kernel examples") {
  CHECK(kernel<Rational>(Mat<Rational>::Identity(4, 4)).dim() == 0);
  CHECK(kernel<Rational>(Mat<Rational>::Zero(2, 3)).dim() == 3);
  Subspace<Rational> k = kernel<Rational>(q_matrix(1, 2, {1, 1}));
  REQUIRE(k.dim() == 1);
  // [DERIVED] x + y = 0 gives (1, -1) after normalizing the pivot.
  CHECK(k.basis() == q_matrix(1, 2, {1, -1}));
}

TEST_CASE("subspace operations") {
  Subspace<Rational> a = Subspace<Rational>::span(4, q_matrix(2, 4, {1, 0, 0, 0, 0, 1, 0, 0}));
  Subspace<Rational> b = Subspace<Rational>::span(4, q_matrix(2, 4, {0, 0, 1, 0, 0, 0, 0, 1}));
  CHECK((a + a) == a);
  CHECK(a.intersect(a) == a);
  CHECK((a + b).dim() == 4);
  CHECK(a.intersect(b).dim() == 0);

  Subspace<Rational> plane = Subspace<Rational>::full(2);
  Subspace<Rational> diag = Subspace<Rational>::span(2, q_matrix(1, 2, {1, 1}));
  CHECK(plane.intersect(diag) == diag);
  CHECK(plane.dim() + diag.dim() == (plane + diag).dim() + plane.intersect(diag).dim());

  CHECK_THROWS_AS(a + Subspace<Rational>(3), Error);
  CHECK(diag.contains(Vec<Rational>(q_matrix(2, 1, {5, 5}))));
  CHECK_FALSE(diag.contains(Vec<Rational>(q_matrix(2, 1, {5, 4}))));
}

TEST_CASE("intersection dimension formula, random") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Mat<Rational> g1 = oracle::random_matrix<Rational>(kQ, 3, 6, rng, -1, 1);
    Mat<Rational> g2 = oracle::random_matrix<Rational>(kQ, 4, 6, rng, -1, 1);
    Subspace<Rational> a = Subspace<Rational>::span(6, g1), b = Subspace<Rational>::span(6, g2);
    Subspace<Rational> s = a + b, i = a.intersect(b);
    CHECK(a.dim() + b.dim() == s.dim() + i.dim());
    CHECK(a.contains(i));
    CHECK(b.contains(i));
    CHECK(s.contains(a));
  }
}

TEST_CASE("quotient basis") {
  QuotientBasis<Rational> q0 = quotient_basis<Rational>(3, Subspace<Rational>(3));
  CHECK(q0.dim() == 3);
  CHECK(q0.projection == Mat<Rational>::Identity(3, 3));

  QuotientBasis<Rational> qf = quotient_basis<Rational>(3, Subspace<Rational>::full(3));
  CHECK(qf.dim() == 0);
  CHECK(qf.representatives.empty());

  Subspace<Rational> sub = Subspace<Rational>::span(3, q_matrix(1, 3, {1, 1, 0}));
  QuotientBasis<Rational> q = quotient_basis<Rational>(3, sub);
  REQUIRE(q.dim() == 2);
  CHECK(all_zero<Rational>(q.project(sub.basis_vector(0))));
  CHECK(rank<Rational>(q.projection) == 2);
  for (Index k = 0; k < q.dim(); ++k) CHECK(q.project(q.representatives[k]) == unit_vector<Rational>(2, k));
  // representatives complete the subspace basis
  Mat<Rational> all(3, 3);
  all << sub.basis(), q.representatives[0].transpose(), q.representatives[1].transpose();
  CHECK(rank<Rational>(all) == 3);
}

TEST_CASE("basis coordinates") {
  Mat<Rational> basis = q_matrix(2, 3, {1, 2, 0, 0, 1, 1});
  BasisCoordinates<Rational> bc(basis);
  Vec<Rational> v = (Rational(3) * basis.row(0) - Rational(2) * basis.row(1)).transpose();
  CHECK(bc(v) == Vec<Rational>(q_matrix(2, 1, {3, -2})));
  CHECK_FALSE(bc.coordinates(unit_vector<Rational>(3, 0)).has_value());
  CHECK_THROWS_AS(BasisCoordinates<Rational>(q_matrix(2, 2, {1, 1, 2, 2})), Error);
}

TEST_CASE("rref properties over Q and GF(p)") {
  std::mt19937_64 rng(2024);
  const FieldDescriptor f7 = FieldDescriptor::prime_field(7);
  const FieldDescriptor fbig = FieldDescriptor::prime_field(2147483647);
  for (int trial = 0; trial < 100; ++trial) {
    rref_properties<Rational>(kQ, rng);
    rref_properties<Modp>(f7, rng);
    rref_properties<Modp>(fbig, rng);
  }
}

TEST_CASE("scalars are exact and canonical") {
  Rational a(mpz_class(6), mpz_class(-4));
  CHECK(a.str() == "-3/2");
  CHECK(a.denominator() > 0);
  Rational big = Rational::parse("123456789012345678901234567890/7");
  CHECK((big * Rational(7)).str() == "123456789012345678901234567890");
  CHECK(Rational::parse("-0/5").is_zero());
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);

  const FieldDescriptor f5 = FieldDescriptor::prime_field(5);
  Modp x(7, 5);
  CHECK(x.residue() == 2);
  CHECK((x * x.inverse()).residue() == 1);
  CHECK(Modp(-1, 5).residue() == 4);
  CHECK(ScalarTraits<Modp>::from_rational(f5, Rational(mpz_class(1), mpz_class(2))).residue() == 3);
  CHECK_THROWS_AS(ScalarTraits<Modp>::from_rational(f5, Rational(mpz_class(1), mpz_class(5))), Error);
  CHECK_THROWS_AS(Modp(1, 5) + Modp(1, 7), Error);
  CHECK_THROWS_AS(FieldDescriptor::prime_field(4), Error);
  // products of residues below 2^31 stay exact
  Modp m(2147483646, 2147483647);
  CHECK((m * m).residue() == 1);
}

TEST_CASE("polynomial roots") {
  std::mt19937_64 rng(5);
  // (x - 1/2)(x + 3)(x^2 + 1) over Q
  Polynomial<Rational> f = Polynomial<Rational>({Rational(mpz_class(-1), mpz_class(2)), Rational(1)}) *
                           Polynomial<Rational>({Rational(3), Rational(1)}) *
                           Polynomial<Rational>({Rational(1), Rational(0), Rational(1)});
  auto r = roots(f, kQ, rng);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == Rational(-3));
  CHECK(r[1] == Rational(mpz_class(1), mpz_class(2)));

  // x^2 + 1 splits over GF(5) (2^2 = 4 = -1) and over GF(1009) (1009 = 1 mod 4)
  const FieldDescriptor f5 = FieldDescriptor::prime_field(5);
  Polynomial<Modp> g({Modp(1, 5), Modp(0, 5), Modp(1, 5)});
  auto r5 = roots(g, f5, rng);
  REQUIRE(r5.size() == 2);
  CHECK(r5[0].residue() == 2);
  CHECK(r5[1].residue() == 3);

  const std::uint32_t p = 1009;
  const FieldDescriptor fp = FieldDescriptor::prime_field(p);
  Polynomial<Modp> h({Modp(1, p), Modp(0, p), Modp(1, p)});
  auto rp = roots(h, fp, rng);
  REQUIRE(rp.size() == 2);
  for (const auto& x : rp) CHECK(h(x).is_zero());
  // x^2 + 1 has no root mod 1019 (1019 = 3 mod 4)
  const FieldDescriptor fq = FieldDescriptor::prime_field(1019);
  CHECK(roots(Polynomial<Modp>({Modp(1, 1019), Modp(0, 1019), Modp(1, 1019)}), fq, rng).empty());
}

TEST_CASE("polynomial gcd and division") {
  Polynomial<Rational> a({Rational(-1), Rational(0), Rational(1)});  // x^2 - 1
  Polynomial<Rational> b({Rational(1), Rational(1)});                // x + 1
  auto [q, r] = a.divmod(b);
  CHECK(r.is_zero());
  CHECK(q == Polynomial<Rational>({Rational(-1), Rational(1)}));
  CHECK(gcd(a, Polynomial<Rational>({Rational(2), Rational(2)})) == b);
}
