#include <doctest.h>

#include <filesystem>
#include <random>

#include "models.hpp"
#include "oracles.hpp"
#include "pathalg/workspace.hpp"

using namespace pathalg;

namespace {

const FieldDescriptor kQ = FieldDescriptor::rationals();

std::string corpus(const std::string& file) { return std::string(PATHALG_CORPUS_DIR) + "/" + file; }

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(PATHALG_CORPUS_DIR))
    if (e.path().extension() == ".alg") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

/// Error code and message of a parse.
std::pair<ErrorCode, std::string> parse_error(const std::string& text) {
  try {
    parse_workspace(text);
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  return {ErrorCode::Internal, "no error"};
}

template <class T>
bool same_structure(const FDAlgebra<T>& a, const FDAlgebra<T>& b) {
  if (a.dim() != b.dim()) return false;
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j)
      if (a.multiply(a.basis_vector(i), a.basis_vector(j)) != b.multiply(b.basis_vector(i), b.basis_vector(j))) return false;
  return true;
}

}  // namespace

TEST_CASE("parse_workspace examples") {
  CHECK(parse_workspace("") == Workspace{});
  CHECK(parse_workspace("# only a comment\n\n   \n") == Workspace{});

  const Workspace ut = parse_workspace_file(corpus("upper_triangular_2.alg"));
  REQUIRE(ut.algebras.size() == 1);
  CHECK(ut.algebras[0].name == "UT2");
  CHECK(ut.algebras[0].dim == 3);
  CHECK(ut.algebras[0].labels == std::vector<std::string>{"E11", "E12", "E22"});
  CHECK(ut.idempotents.size() == 3);
  CHECK(ut.idempotents[2].elements[1][1] == Rational(-1));

  // coefficients are exact fractions; omitted products are zero
  const Workspace w = parse_workspace("algebra A dim 2\nmul 0 0 = 0:1\nmul 0 1 = 1:-3/6 1:0\n");
  CHECK(w.algebras[0].field == "Q");
  CHECK(w.algebras[0].products[1].terms[0].second == Rational(-1) / Rational(2));

  const Workspace sq = parse_workspace_file(corpus("commutative_square.alg"));
  const QuiverDecl& q = sq.quivers.at(0);
  CHECK(q.vertices.size() == 4);
  CHECK(q.truncate == 3);
  CHECK(q.mode == RelationMode::Strict);
  REQUIRE(q.relations.size() == 1);
  CHECK(q.relations[0].terms[1].coeff == Rational(-1));
  CHECK(q.relations[0].terms[1].tokens == std::vector<std::string>{"c", "d"});
  CHECK(sq.reps.at(0).dims.size() == 4);
}

TEST_CASE("parse_workspace errors carry positions") {
  auto [code, msg] = parse_error("field GF(4)\n");
  CHECK(code == ErrorCode::InvalidField);
  CHECK(msg.find("line 1, col 7") != std::string::npos);

  std::tie(code, msg) = parse_error("algebra A dim x\n");
  CHECK(code == ErrorCode::SyntaxError);
  CHECK(msg.find("line 1, col 15: expected a dimension, got 'x'") != std::string::npos);

  std::tie(code, msg) = parse_error("algebra A dim 2\nmul 0 2 = 0:1\n");
  CHECK(code == ErrorCode::UnknownReference);
  CHECK(msg.find("line 2, col 7") != std::string::npos);

  std::tie(code, msg) = parse_error("algebra A dim 1\nalgebra A dim 1\n");
  CHECK(code == ErrorCode::DuplicateName);
  CHECK(msg.find("line 2") != std::string::npos);

  std::tie(code, msg) = parse_error("quiver Q vertices 1 2\narrow a 1 3\n");
  CHECK(code == ErrorCode::UnknownReference);
  CHECK(msg.find("line 2, col 11") != std::string::npos);

  std::tie(code, msg) = parse_error("field Q\nalgebra A dim 1 over GF(5)\n");
  CHECK(code == ErrorCode::FieldMismatch);

  std::tie(code, msg) = parse_error("quiver Q vertices 1 2\narrow a 1 2\narrow b 1 2\nrelation r = a . b\n");
  CHECK(code == ErrorCode::UnknownReference);
  CHECK(msg.find("line 4") != std::string::npos);

  // relations may name labels only of the algebra at their vertex
  std::tie(code, msg) = parse_error("quiver Q vertices 1 2\narrow a 1 2\nrelation r = x . a\n");
  CHECK(code == ErrorCode::UnknownReference);

  CHECK(parse_error("mul 0 0 = 0:1\n").first == ErrorCode::SyntaxError);
  CHECK(parse_error("algebra A dim 1\nmul 0 0 = 0:1/0\n").first == ErrorCode::SyntaxError);
  CHECK(parse_error("algebra A dim 2\nlabels x x\n").first == ErrorCode::DuplicateName);
  CHECK(parse_error("algebra A dim 2\nmul 0 0 = 0:1\nmul 0 0 = 1:1\n").first == ErrorCode::DuplicateName);
  CHECK(parse_error("rep R over Nowhere\n").first == ErrorCode::UnknownReference);
  CHECK(parse_error("quiver Q vertices 1\narrow x 1 1\nrep R over Q vertex 1 dim 1\narrowmap y = 1\n").first ==
        ErrorCode::UnknownReference);
  CHECK(parse_error("frobnicate\n").first == ErrorCode::SyntaxError);
  CHECK(parse_error("algebra A dim 2\nidempotents e for A = 1 0 0\n").first == ErrorCode::DimensionMismatch);
}

TEST_CASE("parse-print round trip on the corpus") {
  const auto files = corpus_files();
  CHECK(files.size() >= 10);
  for (const auto& f : files) {
    CAPTURE(f);
    const Workspace w = parse_workspace_file(f);
    const std::string printed = print_workspace(w);
    CHECK(parse_workspace(printed) == w);
    CHECK(print_workspace(parse_workspace(printed)) == printed);
  }
}

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  return Rational(num(rng)) / Rational(den(rng));
}

RationalMatrix random_rmatrix(Index r, Index c, std::mt19937_64& rng) {
  RationalMatrix m(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(c)));
  for (auto& row : m)
    for (auto& x : row) x = random_rational(rng);
  return m;
}

/// A random valid workspace (structure constants need not be associative:
/// the parser does not build algebras).
Workspace random_workspace(std::mt19937_64& rng) {
  auto pick = [&](Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); };
  Workspace w;
  if (pick(0, 1)) w.field = "Q";
  for (Index a = 0, na = pick(0, 3); a < na; ++a) {
    AlgebraDecl d{"alg" + std::to_string(a), pick(1, 4), "Q", {}, {}};
    if (pick(0, 1))
      for (Index k = 0; k < d.dim; ++k) d.labels.push_back("l" + std::to_string(a) + "_" + std::to_string(k));
    for (Index i = 0; i < d.dim; ++i)
      for (Index j = 0; j < d.dim; ++j)
        if (pick(0, 2) == 0) {
          AlgebraDecl::Mul m{i, j, {}};
          for (Index k = 0; k < d.dim; ++k)
            if (pick(0, 1)) m.terms.emplace_back(k, random_rational(rng));
          d.products.push_back(m);
        }
    if (pick(0, 1)) w.idempotents.push_back({"set" + std::to_string(a), d.name, random_rmatrix(pick(1, 2), d.dim, rng)});
    w.algebras.push_back(std::move(d));
  }
  for (Index qi = 0, nq = pick(0, 2); qi < nq; ++qi) {
    QuiverDecl q;
    q.name = "quiver" + std::to_string(qi);
    const Index nv = pick(1, 3);
    for (Index v = 0; v < nv; ++v) q.vertices.push_back("v" + std::to_string(v));
    for (Index a = 0, n = pick(0, 4); a < n; ++a)
      q.arrows.push_back({"x" + std::to_string(a), q.vertices[pick(0, nv - 1)], q.vertices[pick(0, nv - 1)]});
    if (!w.algebras.empty() && pick(0, 1)) q.omega.emplace_back(q.vertices[0], w.algebras[pick(0, w.algebras.size() - 1)].name);
    if (pick(0, 1)) q.truncate = static_cast<int>(pick(1, 4));
    if (pick(0, 1)) q.mode = pick(0, 1) ? RelationMode::Weak : RelationMode::Strict;
    // relations: random walks, labels sometimes explicit
    auto labels_at = [&](const std::string& v) -> std::vector<std::string> {
      for (const auto& [ov, a] : q.omega)
        if (ov == v) {
          const AlgebraDecl& d = *w.algebra(a);
          if (!d.labels.empty()) return d.labels;
          std::vector<std::string> l;
          for (Index k = 0; k < d.dim; ++k) l.push_back("b" + std::to_string(k));
          return l;
        }
      return {"1"};
    };
    for (Index r = 0, nr = q.arrows.empty() ? 0 : pick(0, 2); r < nr; ++r) {
      RelationDecl rel{"r" + std::to_string(r), {}};
      for (Index t = 0, nt = pick(1, 3); t < nt; ++t) {
        PathTermDecl term;
        term.coeff = random_rational(rng);
        if (term.coeff == Rational(0)) term.coeff = Rational(1);
        const auto& first = q.arrows[pick(0, q.arrows.size() - 1)];
        std::string at = first.source;
        for (Index len = pick(1, 3), k = 0; k < len; ++k) {
          std::vector<const QuiverDecl::ArrowDecl*> out;
          for (const auto& a : q.arrows)
            if (a.source == at) out.push_back(&a);
          if (out.empty()) break;
          const auto labels = labels_at(at);
          if (pick(0, 1)) term.tokens.push_back(labels[pick(0, labels.size() - 1)]);
          const auto* a = out[pick(0, out.size() - 1)];
          term.tokens.push_back(a->name);
          at = a->target;
        }
        rel.terms.push_back(std::move(term));
      }
      q.relations.push_back(std::move(rel));
    }
    w.quivers.push_back(std::move(q));
  }
  for (const auto& q : w.quivers) {
    if (pick(0, 1)) continue;
    RepDecl r{"rep_" + q.name, q.name, {}, {}, {}};
    for (const auto& v : q.vertices) r.dims.emplace_back(v, pick(0, 2));
    r.acts.push_back({"1", q.vertices.back(), random_rmatrix(1, 1, rng)});
    if (!q.omega.empty() || q.vertices.size() > 0) {
      bool labelled_back = false;
      for (const auto& [ov, a] : q.omega) labelled_back |= ov == q.vertices.back();
      if (labelled_back) r.acts.clear();
    }
    for (const auto& a : q.arrows)
      if (pick(0, 1)) r.arrow_maps.push_back({a.name, random_rmatrix(pick(1, 2), pick(1, 2), rng)});
    w.reps.push_back(std::move(r));
  }
  return w;
}

}  // namespace

TEST_CASE("property: parse(print(w)) == w on random workspaces") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 60; ++k) {
    const Workspace w = random_workspace(rng);
    const std::string text = print_workspace(w);
    CAPTURE(text);
    CHECK(parse_workspace(text) == w);
  }
}

TEST_CASE("builders agree with the hand-built models") {
  const Workspace ut = parse_workspace_file(corpus("upper_triangular_2.alg"));
  CHECK(same_structure(build_algebra<Rational>(ut, "UT2"), oracle::upper_triangular<Rational>(kQ, 2)));
  CHECK(build_algebra<Rational>(ut, "UT2").label(1) == "E12");
  const auto idems = build_idempotents<Rational>(ut, ut.idempotents[0]);
  CHECK(idems.size() == 2);
  CHECK_THROWS_AS(build_algebra<Rational>(ut, "nope"), Error);

  const Workspace m2 = parse_workspace_file(corpus("m2_gf5.alg"));
  const FieldDescriptor f5 = FieldDescriptor::prime_field(5);
  CHECK(same_structure(build_algebra<Modp>(m2, "M2"), oracle::full_matrix<Modp>(f5, 2)));
  try {
    build_algebra<Rational>(m2, "M2");
    FAIL("expected FieldMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FieldMismatch);
  }

  const Workspace sq = parse_workspace_file(corpus("commutative_square.alg"));
  const auto gsq = build_gpa<Rational>(sq, "S");
  const auto msq = models::commutative_square<Rational>(kQ);
  CHECK(gsq.paths() == msq.paths());
  CHECK(gsq.relation_ideal() == msq.relation_ideal());
  CHECK(gsq.relations().mode == RelationMode::Strict);

  const Workspace gen = parse_workspace_file(corpus("generalized.alg"));
  const auto ggen = build_gpa<Rational>(gen, "G");
  const auto mgen = models::generalized_model<Rational>(kQ);
  CHECK(ggen.dim() == 9);
  CHECK(ggen.paths() == mgen.paths());
  CHECK(same_structure(ggen.algebra(), mgen.algebra()));

  const Workspace loop = parse_workspace_file(corpus("loop.alg"));
  CHECK(build_gpa<Rational>(loop, "L").paths() == models::loop_model<Rational>(kQ, 2, 3).paths());
}

TEST_CASE("builder defaults") {
  // acyclic: t = longest path + 1, so nothing is cut off
  const Workspace a3 = parse_workspace("quiver A vertices 1 2 3\narrow a 1 2\narrow b 2 3\n");
  CHECK(build_gpa<Rational>(a3, "A").truncation() == 3);
  CHECK(build_gpa<Rational>(a3, "A").dim() == 6);
  CHECK(build_gpa<Rational>(parse_workspace("quiver P vertices 1\n"), "P").truncation() == 1);
  // cyclic quivers need an explicit truncation
  const Workspace loop = parse_workspace("quiver L vertices 1\narrow x 1 1\n");
  CHECK_THROWS_AS(build_gpa<Rational>(loop, "L"), Error);

  // missing arrow maps are zero, one-dimensional Omega acts by scalars
  const Workspace w = parse_workspace("quiver A vertices 1 2\narrow a 1 2\nrep R over A vertex 1 dim 2 vertex 2 dim 1\n");
  const auto rep = build_representation<Rational>(w, w.reps[0]);
  CHECK(rep.arrow_maps[0].rows() == 2);
  CHECK(rep.arrow_maps[0].cols() == 1);
  CHECK(rep.arrow_maps[0] == Mat<Rational>::Zero(2, 1));
  CHECK(rep.vertex_actions[0][0] == Mat<Rational>::Identity(2, 2));

  // Omega = M_2 needs its action spelled out
  std::string gen = print_workspace(parse_workspace_file(corpus("generalized.alg")));
  const Workspace g = parse_workspace(gen + "rep bare over G vertex 1 dim 2\n");
  try {
    build_representation<Rational>(g, *g.rep("bare"));
    FAIL("expected InvalidModule");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidModule);
  }
  const Workspace shape = parse_workspace("quiver A vertices 1 2\narrow a 1 2\nrep R over A vertex 1 dim 2\narrowmap a = 1 2\n");
  try {
    build_representation<Rational>(shape, shape.reps[0]);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("property: path_text reads back as the same basis path") {
  for (const char* file : {"generalized.alg", "commutative_square.alg", "loop.alg", "a3_quiver.alg"}) {
    const Workspace w = parse_workspace_file(corpus(file));
    const QuiverDecl& q = w.quivers.at(0);
    const auto gpa = build_gpa<Rational>(w, q.name);
    for (const auto& p : gpa.free_paths()) {
      if (p.length() == 0) continue;
      CAPTURE(gpa.path_name(p));
      Workspace one = w;
      one.quivers[0].relations = {{"r", {{Rational(1), {}}}}};
      const std::string text = path_text(gpa, p);
      std::string tok;
      for (char c : text) {
        if (c == '.') {
          one.quivers[0].relations[0].terms[0].tokens.push_back(tok);
          tok.clear();
        } else {
          tok += c;
        }
      }
      one.quivers[0].relations[0].terms[0].tokens.push_back(tok);
      one = parse_workspace(print_workspace(one));
      one.quivers[0].mode = RelationMode::Weak;
      const auto probe = build_gpa<Rational>(one, q.name);
      REQUIRE(probe.relations().elements.size() == 1);
      const auto& element = probe.relations().elements[0];
      REQUIRE(element.size() == 1);
      CHECK(element[0].path == p);
      CHECK(element[0].coeff == Rational(1));
    }
  }
}
