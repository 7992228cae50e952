#include "pathalg/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <variant>

namespace pathalg {

namespace {

struct Token {
  std::string text;
  int col = 0;  // 1-based
  bool punct = false;
};

bool is_punct(char c) { return c == '=' || c == ';' || c == ':' || c == '*' || c == '.' || c == '+' || c == '-'; }

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (is_punct(c)) {
      out.push_back({std::string(1, c), static_cast<int>(i + 1), true});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && !is_punct(line[i]) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start + 1), false});
  }
  return out;
}

bool is_number(const std::string& s) {
  static const std::regex re("[0-9]+(/[0-9]+)?");
  return std::regex_match(s, re);
}

bool is_name(const std::string& s) {
  static const std::regex re("[A-Za-z0-9_@'()]+");
  return std::regex_match(s, re);
}

/// Cursor over the tokens of one line with positioned errors.
class Line {
 public:
  Line(int number, std::vector<Token> tokens, int end_col) : number_(number), toks_(std::move(tokens)), end_col_(end_col) {}

  bool done() const { return pos_ >= toks_.size(); }
  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
  }
  bool peek_is(const std::string& s, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->text == s;
  }
  int col() const { return done() ? end_col_ : toks_[pos_].col; }

  [[noreturn]] void fail(const std::string& expected) const {
    fail_at(col(), "expected " + expected + (done() ? ", got end of line" : ", got '" + toks_[pos_].text + "'"));
  }
  [[noreturn]] void fail_at(int col, const std::string& what, ErrorCode code = ErrorCode::SyntaxError) const {
    throw Error(code, "line " + std::to_string(number_) + ", col " + std::to_string(col) + ": " + what);
  }

  void expect(const std::string& s) {
    if (!peek_is(s)) fail("'" + s + "'");
    ++pos_;
  }
  std::string name(const std::string& what) {
    if (done() || toks_[pos_].punct || !is_name(toks_[pos_].text)) fail(what);
    return toks_[pos_++].text;
  }
  Index integer(const std::string& what) {
    if (done() || !std::regex_match(toks_[pos_].text, std::regex("[0-9]+"))) fail(what);
    return std::stol(toks_[pos_++].text);
  }
  Rational number() {
    bool negative = false;
    if (peek_is("-") || peek_is("+")) negative = toks_[pos_++].text == "-";
    if (done() || !is_number(toks_[pos_].text)) fail("a number");
    const std::string& s = toks_[pos_].text;
    if (s.find('/') != std::string::npos && std::stol(s.substr(s.find('/') + 1)) == 0) fail("a nonzero denominator");
    Rational r = Rational::parse(s);
    ++pos_;
    return negative ? -r : r;
  }
  void end() {
    if (!done()) fail("end of line");
  }
  int number_line() const { return number_; }

  /// Rows separated by ';' up to the end of the line.
  RationalMatrix matrix() {
    RationalMatrix m;
    if (done()) return m;
    m.emplace_back();
    while (!done()) {
      if (peek_is(";")) {
        ++pos_;
        m.emplace_back();
        continue;
      }
      m.back().push_back(number());
    }
    for (const auto& row : m)
      if (row.size() != m.front().size()) fail_at(end_col_, "matrix rows have different lengths", ErrorCode::DimensionMismatch);
    return m;
  }

 private:
  int number_;
  std::vector<Token> toks_;
  int end_col_;
  std::size_t pos_ = 0;
};

std::string field_name(const FieldDescriptor& f) { return f.name(); }

/// Message of an Error without its "Code: " prefix.
std::string bare_message(const Error& e) { return std::string(e.what()).substr(std::string(code_name(e.code())).size() + 2); }

/// Structural reading of a path: vertices and arrows, and the label text
/// (empty for the unity) at every vertex.
struct PathSpec {
  std::vector<Index> vertices;
  std::vector<Index> arrows;
  std::vector<std::string> labels;
};

std::optional<Index> find_index(const std::vector<std::string>& xs, const std::string& x) {
  auto it = std::find(xs.begin(), xs.end(), x);
  if (it == xs.end()) return std::nullopt;
  return static_cast<Index>(it - xs.begin());
}

std::optional<Index> arrow_of(const QuiverDecl& q, const std::string& name) {
  for (std::size_t i = 0; i < q.arrows.size(); ++i)
    if (q.arrows[i].name == name) return static_cast<Index>(i);
  return std::nullopt;
}

/// Resolves path tokens; returns an error text on failure. vertex_labels[v]
/// lists the basis labels of Omega_v.
std::variant<PathSpec, std::string> resolve_path(const QuiverDecl& q, const std::vector<std::vector<std::string>>& vertex_labels,
                                                 const std::vector<std::string>& tokens) {
  PathSpec p;
  auto split_at = [&](const std::string& tok, std::string& label, std::optional<Index>& vertex) -> std::optional<std::string> {
    const auto at = tok.find('@');
    if (at == std::string::npos) {
      label = tok;
      return std::nullopt;
    }
    label = tok.substr(0, at);
    vertex = find_index(q.vertices, tok.substr(at + 1));
    if (!vertex) return "unknown vertex '" + tok.substr(at + 1) + "'";
    return std::nullopt;
  };
  std::vector<std::pair<std::string, std::optional<Index>>> pending_labels;  // per vertex slot
  std::optional<std::pair<std::string, std::optional<Index>>> pending;
  for (const auto& tok : tokens) {
    if (auto a = arrow_of(q, tok)) {
      const Index src = *find_index(q.vertices, q.arrows[*a].source);
      const Index tgt = *find_index(q.vertices, q.arrows[*a].target);
      if (p.vertices.empty()) {
        p.vertices.push_back(src);
      } else if (p.vertices.back() != src) {
        return "arrow " + tok + " does not start where the path ends";
      }
      pending_labels.push_back(pending.value_or(std::pair<std::string, std::optional<Index>>{"", std::nullopt}));
      pending.reset();
      p.arrows.push_back(*a);
      p.vertices.push_back(tgt);
      continue;
    }
    if (pending) return "two labels in a row at '" + tok + "'";
    std::string label;
    std::optional<Index> v;
    if (auto err = split_at(tok, label, v)) return *err;
    if (!v && tokens.size() == 1 && tok.rfind("e_", 0) == 0) {
      if (auto ev = find_index(q.vertices, tok.substr(2))) {
        p.vertices.push_back(*ev);
        p.labels.push_back("");
        return p;
      }
    }
    pending = std::pair<std::string, std::optional<Index>>{label, v};
  }
  if (p.arrows.empty()) {
    if (!pending || !pending->second) return "a path of length 0 needs e_v or label@v";
    p.vertices.push_back(*pending->second);
    pending_labels.push_back(*pending);
  } else {
    pending_labels.push_back(pending.value_or(std::pair<std::string, std::optional<Index>>{"", std::nullopt}));
  }
  for (std::size_t s = 0; s < p.vertices.size(); ++s) {
    const auto& [label, v] = pending_labels[s];
    const Index vertex = p.vertices[s];
    if (v && *v != vertex) return "label " + label + "@" + q.vertices[*v] + " sits at vertex " + q.vertices[vertex];
    if (!label.empty() && !find_index(vertex_labels[vertex], label)) {
      return "unknown label '" + label + "' of the algebra at vertex " + q.vertices[vertex];
    }
    p.labels.push_back(label);
  }
  return p;
}

std::vector<std::string> default_labels(Index dim) {
  std::vector<std::string> l;
  for (Index i = 0; i < dim; ++i) l.push_back("b" + std::to_string(i));
  return l;
}

std::vector<std::string> labels_of(const AlgebraDecl& a) { return a.labels.empty() ? default_labels(a.dim) : a.labels; }

std::vector<std::vector<std::string>> vertex_labels(const Workspace& w, const QuiverDecl& q) {
  std::vector<std::vector<std::string>> out(q.vertices.size(), std::vector<std::string>{"1"});
  for (const auto& [v, alg] : q.omega) out[*find_index(q.vertices, v)] = labels_of(*w.algebra(alg));
  return out;
}

class Parser {
 public:
  Workspace parse(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      auto toks = tokenize(raw);
      if (toks.empty()) continue;
      Line line(number, toks, static_cast<int>(raw.size()) + 1);
      statement(line);
    }
    validate();
    return std::move(w_);
  }

 private:
  enum class Context { None, Algebra, Quiver, Rep };

  void statement(Line& l) {
    const std::string kw = l.peek()->text;
    if (l.peek()->punct) l.fail("a keyword");
    const int col = l.col();
    l.name("a keyword");
    if (kw == "field") return field(l);
    if (kw == "algebra") return algebra(l);
    if (kw == "labels") return labels(l);
    if (kw == "mul") return mul(l);
    if (kw == "idempotents") return idempotents(l);
    if (kw == "quiver") return quiver(l);
    if (kw == "arrow") return arrow(l);
    if (kw == "relation") return relation(l);
    if (kw == "truncate") return truncate(l);
    if (kw == "mode") return mode(l);
    if (kw == "omega") return omega(l);
    if (kw == "rep") return rep(l);
    if (kw == "vertex") return rep_vertex(l);
    if (kw == "act") return act(l);
    if (kw == "arrowmap") return arrowmap(l);
    l.fail_at(col, "unknown keyword '" + kw + "'");
  }

  void need(const Line& l, Context c, const std::string& kw) {
    if (ctx_ != c) {
      const char* sect = c == Context::Algebra ? "an algebra" : c == Context::Quiver ? "a quiver" : "a rep";
      l.fail_at(1, "'" + kw + "' outside " + std::string(sect) + " section", ErrorCode::SyntaxError);
    }
  }

  FieldDescriptor field_at(Line& l) {
    const int col = l.col();
    const std::string text = l.name("Q or GF(p)");
    try {
      return parse_field(text);
    } catch (const Error& e) {
      l.fail_at(col, bare_message(e), e.code());
    }
  }

  void check_field(const Line& l, const FieldDescriptor& f, int col) {
    if (!field_) {
      field_ = f;
      return;
    }
    if (!(*field_ == f)) {
      l.fail_at(col, "field " + field_name(f) + " differs from " + field_name(*field_) + " used earlier", ErrorCode::FieldMismatch);
    }
  }

  void field(Line& l) {
    const int col = l.col();
    FieldDescriptor f = field_at(l);
    l.end();
    if (w_.field) l.fail_at(1, "second field declaration", ErrorCode::DuplicateName);
    check_field(l, f, col);
    w_.field = field_name(f);
  }

  void algebra(Line& l) {
    AlgebraDecl a;
    a.name = l.name("an algebra name");
    unique(l, a.name);
    l.expect("dim");
    a.dim = l.integer("a dimension");
    int col = l.col();
    FieldDescriptor f = field_ ? *field_ : FieldDescriptor::rationals();
    if (l.peek_is("over")) {
      l.expect("over");
      col = l.col();
      f = field_at(l);
    }
    l.end();
    check_field(l, f, col);
    a.field = field_name(f);
    w_.algebras.push_back(std::move(a));
    ctx_ = Context::Algebra;
  }

  void labels(Line& l) {
    need(l, Context::Algebra, "labels");
    AlgebraDecl& a = w_.algebras.back();
    if (!a.labels.empty()) l.fail_at(1, "second labels line", ErrorCode::DuplicateName);
    std::set<std::string> seen;
    while (!l.done()) {
      const int col = l.col();
      std::string s = l.name("a label");
      if (!seen.insert(s).second) l.fail_at(col, "duplicate label '" + s + "'", ErrorCode::DuplicateName);
      a.labels.push_back(s);
    }
    if (static_cast<Index>(a.labels.size()) != a.dim) {
      l.fail_at(1, std::to_string(a.dim) + " labels needed, got " + std::to_string(a.labels.size()), ErrorCode::DimensionMismatch);
    }
  }

  void mul(Line& l) {
    need(l, Context::Algebra, "mul");
    AlgebraDecl& a = w_.algebras.back();
    AlgebraDecl::Mul m;
    auto index = [&](const std::string& what) {
      const int col = l.col();
      Index i = l.integer(what);
      if (i >= a.dim) l.fail_at(col, "index " + std::to_string(i) + " out of range for dim " + std::to_string(a.dim), ErrorCode::UnknownReference);
      return i;
    };
    const int col = l.col();
    m.i = index("a basis index");
    m.j = index("a basis index");
    for (const auto& other : a.products)
      if (other.i == m.i && other.j == m.j) {
        l.fail_at(col, "product " + std::to_string(m.i) + " " + std::to_string(m.j) + " given twice", ErrorCode::DuplicateName);
      }
    l.expect("=");
    while (!l.done()) {
      Index k = index("a basis index");
      l.expect(":");
      m.terms.emplace_back(k, l.number());
    }
    a.products.push_back(std::move(m));
  }

  void idempotents(Line& l) {
    IdempotentDecl d;
    d.name = l.name("a name");
    unique(l, d.name);
    l.expect("for");
    const int col = l.col();
    d.algebra = l.name("an algebra name");
    const AlgebraDecl* a = w_.algebra(d.algebra);
    if (!a) l.fail_at(col, "unknown algebra '" + d.algebra + "'", ErrorCode::UnknownReference);
    l.expect("=");
    d.elements = l.matrix();
    for (const auto& row : d.elements)
      if (static_cast<Index>(row.size()) != a->dim) {
        l.fail_at(col, "idempotents need " + std::to_string(a->dim) + " coordinates", ErrorCode::DimensionMismatch);
      }
    w_.idempotents.push_back(std::move(d));
  }

  void quiver(Line& l) {
    QuiverDecl q;
    q.name = l.name("a quiver name");
    unique(l, q.name);
    l.expect("vertices");
    std::set<std::string> seen;
    while (!l.done()) {
      const int col = l.col();
      std::string v = l.name("a vertex name");
      if (!seen.insert(v).second) l.fail_at(col, "duplicate vertex '" + v + "'", ErrorCode::DuplicateName);
      q.vertices.push_back(v);
    }
    if (q.vertices.empty()) l.fail("at least one vertex");
    w_.quivers.push_back(std::move(q));
    ctx_ = Context::Quiver;
  }

  Index vertex_of(Line& l, const QuiverDecl& q) {
    const int col = l.col();
    std::string v = l.name("a vertex name");
    auto i = find_index(q.vertices, v);
    if (!i) l.fail_at(col, "unknown vertex '" + v + "' of quiver " + q.name, ErrorCode::UnknownReference);
    return *i;
  }

  void arrow(Line& l) {
    need(l, Context::Quiver, "arrow");
    QuiverDecl& q = w_.quivers.back();
    QuiverDecl::ArrowDecl a;
    const int col = l.col();
    a.name = l.name("an arrow name");
    if (arrow_of(q, a.name) || find_index(q.vertices, a.name)) {
      l.fail_at(col, "duplicate name '" + a.name + "' in quiver " + q.name, ErrorCode::DuplicateName);
    }
    a.source = q.vertices[vertex_of(l, q)];
    a.target = q.vertices[vertex_of(l, q)];
    l.end();
    q.arrows.push_back(std::move(a));
  }

  void relation(Line& l) {
    need(l, Context::Quiver, "relation");
    QuiverDecl& q = w_.quivers.back();
    RelationDecl r;
    const int col = l.col();
    r.name = l.name("a relation name");
    for (const auto& other : q.relations)
      if (other.name == r.name) l.fail_at(col, "duplicate relation '" + r.name + "'", ErrorCode::DuplicateName);
    l.expect("=");
    bool first = true;
    while (!l.done() || first) {
      PathTermDecl t;
      bool negative = false;
      if (!first || l.peek_is("-") || l.peek_is("+")) {
        if (!l.peek_is("+") && !l.peek_is("-")) l.fail("'+' or '-'");
        negative = l.peek()->text == "-";
        l.expect(l.peek()->text);
      }
      first = false;
      if (l.peek() && !l.peek()->punct && is_number(l.peek()->text) && l.peek_is("*", 1)) {
        t.coeff = l.number();
        l.expect("*");
      }
      if (negative) t.coeff = -t.coeff;
      t.tokens.push_back(l.name("a path"));
      while (l.peek_is(".")) {
        l.expect(".");
        t.tokens.push_back(l.name("a label or arrow"));
      }
      r.terms.push_back(std::move(t));
      relation_lines_[{static_cast<std::size_t>(w_.quivers.size() - 1), q.relations.size()}] = l.number_line();
    }
    q.relations.push_back(std::move(r));
  }

  void truncate(Line& l) {
    need(l, Context::Quiver, "truncate");
    QuiverDecl& q = w_.quivers.back();
    const int col = l.col();
    Index t = l.integer("a truncation level");
    l.end();
    if (t < 1) l.fail_at(col, "truncation must be at least 1", ErrorCode::DimensionMismatch);
    if (q.truncate) l.fail_at(1, "second truncate line", ErrorCode::DuplicateName);
    q.truncate = static_cast<int>(t);
  }

  void mode(Line& l) {
    need(l, Context::Quiver, "mode");
    QuiverDecl& q = w_.quivers.back();
    const int col = l.col();
    std::string m = l.name("weak or strict");
    l.end();
    if (m != "weak" && m != "strict") l.fail_at(col, "expected weak or strict");
    if (q.mode) l.fail_at(1, "second mode line", ErrorCode::DuplicateName);
    q.mode = m == "weak" ? RelationMode::Weak : RelationMode::Strict;
  }

  void omega(Line& l) {
    const int col = l.col();
    std::string qn = l.name("a quiver name");
    QuiverDecl* q = nullptr;
    for (auto& x : w_.quivers)
      if (x.name == qn) q = &x;
    if (!q) l.fail_at(col, "unknown quiver '" + qn + "'", ErrorCode::UnknownReference);
    l.expect("vertex");
    const int vcol = l.col();
    std::string v = q->vertices[vertex_of(l, *q)];
    const int acol = l.col();
    std::string a = l.name("an algebra name");
    l.end();
    if (!w_.algebra(a)) l.fail_at(acol, "unknown algebra '" + a + "'", ErrorCode::UnknownReference);
    for (const auto& [ov, oa] : q->omega)
      if (ov == v) l.fail_at(vcol, "vertex " + v + " already has an algebra", ErrorCode::DuplicateName);
    q->omega.emplace_back(v, a);
  }

  void rep(Line& l) {
    RepDecl r;
    r.name = l.name("a representation name");
    unique(l, r.name);
    l.expect("over");
    const int col = l.col();
    r.quiver = l.name("a quiver name");
    if (!w_.quiver(r.quiver)) l.fail_at(col, "unknown quiver '" + r.quiver + "'", ErrorCode::UnknownReference);
    w_.reps.push_back(std::move(r));
    ctx_ = Context::Rep;
    while (!l.done()) {
      l.expect("vertex");
      rep_dim(l);
    }
  }

  void rep_vertex(Line& l) {
    need(l, Context::Rep, "vertex");
    rep_dim(l);
    l.end();
  }

  void rep_dim(Line& l) {
    RepDecl& r = w_.reps.back();
    const QuiverDecl& q = *w_.quiver(r.quiver);
    const int col = l.col();
    std::string v = q.vertices[vertex_of(l, q)];
    for (const auto& [ov, d] : r.dims)
      if (ov == v) l.fail_at(col, "vertex " + v + " given twice", ErrorCode::DuplicateName);
    l.expect("dim");
    r.dims.emplace_back(v, l.integer("a dimension"));
  }

  void act(Line& l) {
    need(l, Context::Rep, "act");
    RepDecl& r = w_.reps.back();
    const QuiverDecl& q = *w_.quiver(r.quiver);
    RepDecl::Act a;
    const int lcol = l.col();
    a.label = l.name("an Omega label");
    const Index v = vertex_of(l, q);
    a.vertex = q.vertices[v];
    const auto labels = vertex_labels(w_, q)[v];
    if (!find_index(labels, a.label)) l.fail_at(lcol, "unknown label '" + a.label + "' at vertex " + a.vertex, ErrorCode::UnknownReference);
    for (const auto& o : r.acts)
      if (o.label == a.label && o.vertex == a.vertex) l.fail_at(lcol, "action given twice", ErrorCode::DuplicateName);
    l.expect("=");
    a.matrix = l.matrix();
    r.acts.push_back(std::move(a));
  }

  void arrowmap(Line& l) {
    need(l, Context::Rep, "arrowmap");
    RepDecl& r = w_.reps.back();
    const QuiverDecl& q = *w_.quiver(r.quiver);
    RepDecl::ArrowMap m;
    const int col = l.col();
    m.arrow = l.name("an arrow name");
    if (!arrow_of(q, m.arrow)) l.fail_at(col, "unknown arrow '" + m.arrow + "'", ErrorCode::UnknownReference);
    for (const auto& o : r.arrow_maps)
      if (o.arrow == m.arrow) l.fail_at(col, "map of " + m.arrow + " given twice", ErrorCode::DuplicateName);
    l.expect("=");
    m.matrix = l.matrix();
    r.arrow_maps.push_back(std::move(m));
  }

  void unique(const Line& l, const std::string& name) {
    if (!names_.insert(name).second) l.fail_at(1, "duplicate name '" + name + "'", ErrorCode::DuplicateName);
  }

  /// Path references need every omega line, so they are resolved at the end.
  void validate() {
    for (std::size_t qi = 0; qi < w_.quivers.size(); ++qi) {
      const QuiverDecl& q = w_.quivers[qi];
      const auto labels = vertex_labels(w_, q);
      for (std::size_t r = 0; r < q.relations.size(); ++r)
        for (const auto& t : q.relations[r].terms) {
          auto res = resolve_path(q, labels, t.tokens);
          if (auto* err = std::get_if<std::string>(&res)) {
            throw Error(ErrorCode::UnknownReference, "line " + std::to_string(relation_lines_[{qi, r}]) + ": relation " +
                                                         q.relations[r].name + ": " + *err);
          }
        }
    }
  }

  Workspace w_;
  Context ctx_ = Context::None;
  std::optional<FieldDescriptor> field_;
  std::set<std::string> names_;
  std::map<std::pair<std::size_t, std::size_t>, int> relation_lines_;
};

std::string number_text(const Rational& r) { return r.str(); }

std::string matrix_text(const RationalMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += " ;";
    for (const auto& x : m[i]) s += " " + number_text(x);
  }
  return s;
}

}  // namespace

const AlgebraDecl* Workspace::algebra(const std::string& name) const {
  for (const auto& a : algebras)
    if (a.name == name) return &a;
  return nullptr;
}

const QuiverDecl* Workspace::quiver(const std::string& name) const {
  for (const auto& q : quivers)
    if (q.name == name) return &q;
  return nullptr;
}

const RepDecl* Workspace::rep(const std::string& name) const {
  for (const auto& r : reps)
    if (r.name == name) return &r;
  return nullptr;
}

FieldDescriptor Workspace::field_descriptor() const {
  if (field) return parse_field(*field);
  if (!algebras.empty()) return parse_field(algebras.front().field);
  return FieldDescriptor::rationals();
}

std::vector<std::string> Workspace::standalone_algebras() const {
  std::set<std::string> used;
  for (const auto& q : quivers)
    for (const auto& [v, a] : q.omega) used.insert(a);
  std::vector<std::string> out;
  for (const auto& a : algebras)
    if (!used.count(a.name)) out.push_back(a.name);
  return out;
}

FieldDescriptor parse_field(const std::string& text) {
  if (text == "Q") return FieldDescriptor::rationals();
  std::smatch m;
  static const std::regex re("GF\\(([0-9]{1,10})\\)");
  if (!std::regex_match(text, m, re)) throw Error(ErrorCode::InvalidField, "unknown field '" + text + "'");
  return FieldDescriptor::prime_field(std::stoull(m[1].str()));
}

Workspace parse_workspace(const std::string& text) { return Parser().parse(text); }

Workspace parse_workspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UnknownReference, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str());
}

std::string print_workspace(const Workspace& w) {
  std::ostringstream out;
  if (w.field) out << "field " << *w.field << "\n";
  for (const auto& a : w.algebras) {
    out << "algebra " << a.name << " dim " << a.dim << " over " << a.field << "\n";
    if (!a.labels.empty()) {
      out << "labels";
      for (const auto& l : a.labels) out << " " << l;
      out << "\n";
    }
    for (const auto& m : a.products) {
      out << "mul " << m.i << " " << m.j << " =";
      for (const auto& [k, c] : m.terms) out << " " << k << ":" << number_text(c);
      out << "\n";
    }
  }
  for (const auto& d : w.idempotents) out << "idempotents " << d.name << " for " << d.algebra << " =" << matrix_text(d.elements) << "\n";
  for (const auto& q : w.quivers) {
    out << "quiver " << q.name << " vertices";
    for (const auto& v : q.vertices) out << " " << v;
    out << "\n";
    for (const auto& a : q.arrows) out << "arrow " << a.name << " " << a.source << " " << a.target << "\n";
    if (q.truncate) out << "truncate " << *q.truncate << "\n";
    if (q.mode) out << "mode " << (*q.mode == RelationMode::Weak ? "weak" : "strict") << "\n";
    for (const auto& r : q.relations) {
      out << "relation " << r.name << " =";
      for (std::size_t i = 0; i < r.terms.size(); ++i) {
        const auto& t = r.terms[i];
        Rational c = t.coeff;
        if (i > 0 || sgn(c.value()) < 0) {
          out << (sgn(c.value()) < 0 ? " -" : " +");
          if (sgn(c.value()) < 0) c = -c;
        }
        out << " ";
        if (!c.is_one()) out << number_text(c) << " * ";
        for (std::size_t k = 0; k < t.tokens.size(); ++k) out << (k ? " . " : "") << t.tokens[k];
      }
      out << "\n";
    }
    for (const auto& [v, a] : q.omega) out << "omega " << q.name << " vertex " << v << " " << a << "\n";
  }
  for (const auto& r : w.reps) {
    out << "rep " << r.name << " over " << r.quiver << "\n";
    for (const auto& [v, d] : r.dims) out << "vertex " << v << " dim " << d << "\n";
    for (const auto& a : r.acts) out << "act " << a.label << " " << a.vertex << " =" << matrix_text(a.matrix) << "\n";
    for (const auto& m : r.arrow_maps) out << "arrowmap " << m.arrow << " =" << matrix_text(m.matrix) << "\n";
  }
  return out.str();
}

namespace {

template <class T>
T convert(const FieldDescriptor& f, const Rational& q) {
  return ScalarTraits<T>::from_rational(f, q);
}

template <class T>
Mat<T> convert_matrix(const FieldDescriptor& f, const RationalMatrix& m, Index rows, Index cols, const std::string& what) {
  Mat<T> out = Mat<T>::Constant(rows, cols, scalar<T>(f, 0));
  if (m.empty()) return out;
  if (static_cast<Index>(m.size()) != rows || static_cast<Index>(m.front().size()) != cols) {
    throw Error(ErrorCode::DimensionMismatch, what + " must be " + std::to_string(rows) + " x " + std::to_string(cols) +
                                                  ", got " + std::to_string(m.size()) + " x " +
                                                  std::to_string(m.front().size()));
  }
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) out(r, c) = convert<T>(f, m[r][c]);
  return out;
}

const QuiverDecl& quiver_decl(const Workspace& w, const std::string& name) {
  const QuiverDecl* q = w.quiver(name);
  if (!q) throw Error(ErrorCode::UnknownReference, "unknown quiver '" + name + "'");
  return *q;
}

Quiver make_quiver(const QuiverDecl& d) {
  Quiver q{d.name, d.vertices, {}};
  for (const auto& a : d.arrows) q.arrows.push_back({a.name, *find_index(d.vertices, a.source), *find_index(d.vertices, a.target)});
  return q;
}

template <class T>
std::vector<FDAlgebra<T>> make_family(const Workspace& w, const QuiverDecl& d) {
  const FieldDescriptor f = w.field_descriptor();
  ScalarTraits<T>::check_field(f);
  std::vector<FDAlgebra<T>> family(d.vertices.size(), ground_field_algebra<T>(f));
  for (const auto& [v, a] : d.omega) family[*find_index(d.vertices, v)] = build_algebra<T>(w, a);
  return family;
}

/// Longest path length + 1 for acyclic quivers.
int default_truncation(const Quiver& q) {
  const Index n = q.num_vertices();
  std::vector<Index> indeg(static_cast<std::size_t>(n), 0), longest(static_cast<std::size_t>(n), 0);
  for (const auto& a : q.arrows) ++indeg[a.target];
  std::vector<Index> order;
  for (Index v = 0; v < n; ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (std::size_t k = 0; k < order.size(); ++k)
    for (const auto& a : q.arrows)
      if (a.source == order[k]) {
        longest[a.target] = std::max(longest[a.target], longest[a.source] + 1);
        if (--indeg[a.target] == 0) order.push_back(a.target);
      }
  if (static_cast<Index>(order.size()) != n) {
    throw Error(ErrorCode::SyntaxError, "quiver " + q.name + " has an oriented cycle and needs a 'truncate' line");
  }
  return static_cast<int>(*std::max_element(longest.begin(), longest.end()) + 1);
}

template <class T>
PathCombination<T> expand_path(const FieldDescriptor& f, const std::vector<FDAlgebra<T>>& family, const PathSpec& spec,
                               const std::vector<std::vector<std::string>>& labels, const T& coeff) {
  PathCombination<T> out{{BasisPath{spec.vertices, spec.arrows, {}}, coeff}};
  for (std::size_t s = 0; s < spec.vertices.size(); ++s) {
    const Index v = spec.vertices[s];
    SparseVec<T> choices;
    if (spec.labels[s].empty()) {
      choices = to_sparse(family[v].one());
    } else {
      choices.emplace_back(*find_index(labels[v], spec.labels[s]), scalar<T>(f, 1));
    }
    PathCombination<T> next;
    for (const auto& term : out)
      for (const auto& [k, c] : choices) {
        PathTerm<T> t = term;
        t.path.labels.push_back(k);
        t.coeff = t.coeff * c;
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

/// Omega_v is written without labels when its unity is basis element 0.
template <class T>
bool implicit_label(const FDAlgebra<T>& omega) {
  return omega.dim() == 1 && omega.has_unity() && omega.one()(0).is_one();
}

}  // namespace

template <class T>
FDAlgebra<T> build_algebra(const Workspace& w, const std::string& name) {
  const AlgebraDecl* d = w.algebra(name);
  if (!d) throw Error(ErrorCode::UnknownReference, "unknown algebra '" + name + "'");
  const FieldDescriptor f = parse_field(d->field);
  ScalarTraits<T>::check_field(f);
  std::vector<SparseVec<T>> products(static_cast<std::size_t>(d->dim * d->dim));
  for (const auto& m : d->products) {
    auto& slot = products[static_cast<std::size_t>(m.i * d->dim + m.j)];
    for (const auto& [k, c] : m.terms) {
      T x = convert<T>(f, c);
      if (!x.is_zero()) slot.emplace_back(k, x);
    }
    std::sort(slot.begin(), slot.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 1; k < slot.size(); ++k)
      if (slot[k].first == slot[k - 1].first) {
        throw Error(ErrorCode::DuplicateName, "algebra " + name + ": product " + std::to_string(m.i) + " " +
                                                  std::to_string(m.j) + " lists b" + std::to_string(slot[k].first) +
                                                  " twice");
      }
  }
  return FDAlgebra<T>(f, d->dim, std::move(products), labels_of(*d));
}

template <class T>
TruncatedGPA<T> build_gpa(const Workspace& w, const std::string& quiver, GpaOptions options) {
  const QuiverDecl& d = quiver_decl(w, quiver);
  const Quiver q = make_quiver(d);
  const auto family = make_family<T>(w, d);
  const FieldDescriptor f = family.front().field();
  const auto labels = vertex_labels(w, d);
  RelationSet<T> rel;
  rel.truncation = d.truncate ? *d.truncate : default_truncation(q);
  rel.mode = d.mode.value_or(RelationMode::Weak);
  for (const auto& r : d.relations) {
    PathCombination<T> element;
    for (const auto& t : r.terms) {
      auto res = resolve_path(d, labels, t.tokens);
      if (auto* err = std::get_if<std::string>(&res)) throw Error(ErrorCode::UnknownReference, "relation " + r.name + ": " + *err);
      for (auto& term : expand_path(f, family, std::get<PathSpec>(res), labels, convert<T>(f, t.coeff)))
        element.push_back(std::move(term));
    }
    rel.names.push_back(r.name);
    rel.elements.push_back(std::move(element));
  }
  return build_truncated_gpa(q, family, rel, options);
}

template <class T>
IdempotentSet<T> build_idempotents(const Workspace& w, const IdempotentDecl& d) {
  const AlgebraDecl* a = w.algebra(d.algebra);
  if (!a) throw Error(ErrorCode::UnknownReference, "unknown algebra '" + d.algebra + "'");
  const FieldDescriptor f = parse_field(a->field);
  ScalarTraits<T>::check_field(f);
  IdempotentSet<T> out;
  for (const auto& row : d.elements) {
    if (static_cast<Index>(row.size()) != a->dim) {
      throw Error(ErrorCode::DimensionMismatch, "idempotents " + d.name + " need " + std::to_string(a->dim) + " coordinates");
    }
    Vec<T> v(a->dim);
    for (Index k = 0; k < a->dim; ++k) v(k) = convert<T>(f, row[k]);
    out.elements.push_back(std::move(v));
  }
  return out;
}

template <class T>
QuiverRepresentation<T> build_representation(const Workspace& w, const RepDecl& d) {
  const QuiverDecl& qd = quiver_decl(w, d.quiver);
  QuiverRepresentation<T> rep;
  rep.quiver = make_quiver(qd);
  rep.family = make_family<T>(w, qd);
  const FieldDescriptor f = rep.family.front().field();
  const Index n = rep.quiver.num_vertices();
  rep.dims.assign(static_cast<std::size_t>(n), 0);
  for (const auto& [v, dim] : d.dims) rep.dims[*find_index(qd.vertices, v)] = dim;
  const auto labels = vertex_labels(w, qd);
  for (Index v = 0; v < n; ++v) {
    const auto& om = rep.family[v];
    const Index dv = rep.dims[v];
    std::vector<Mat<T>> acts;
    for (Index k = 0; k < om.dim(); ++k) {
      const RepDecl::Act* given = nullptr;
      for (const auto& a : d.acts)
        if (a.vertex == qd.vertices[v] && a.label == labels[v][k]) given = &a;
      if (given) {
        acts.push_back(convert_matrix<T>(f, given->matrix, dv, dv, "act " + given->label + " " + given->vertex));
      } else if (om.dim() == 1 && om.has_unity()) {
        // b0 = c^-1 1 when the unity is c b0
        acts.push_back(Mat<T>::Identity(dv, dv) * (scalar<T>(f, 1) / om.one()(0)));
      } else if (dv == 0) {
        acts.push_back(Mat<T>(0, 0));
      } else {
        throw Error(ErrorCode::InvalidModule, "rep " + d.name + ": no action of " + labels[v][k] + " at vertex " + qd.vertices[v]);
      }
    }
    rep.vertex_actions.push_back(std::move(acts));
  }
  for (const auto& a : rep.quiver.arrows) {
    RationalMatrix m;
    for (const auto& given : d.arrow_maps)
      if (given.arrow == a.name) m = given.matrix;
    rep.arrow_maps.push_back(convert_matrix<T>(f, m, rep.dims[a.source], rep.dims[a.target], "arrowmap " + a.name));
  }
  validate_representation(rep);
  return rep;
}

template <class T>
std::string path_text(const TruncatedGPA<T>& gpa, const BasisPath& p) {
  const Quiver& q = gpa.quiver();
  auto label = [&](std::size_t k) { return gpa.omega(p.vertices[k]).label(p.labels[k]); };
  if (p.length() == 0) {
    const Index v = p.vertices[0];
    if (implicit_label(gpa.omega(v))) return "e_" + q.vertices[v];
    return label(0) + "@" + q.vertices[v];
  }
  std::string s;
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    if (!implicit_label(gpa.omega(p.vertices[k]))) s += (s.empty() ? "" : ".") + label(k);
    if (k < p.arrows.size()) s += (s.empty() ? "" : ".") + q.arrows[p.arrows[k]].name;
  }
  return s;
}

#define PATHALG_INSTANTIATE_WORKSPACE(T)                                                                  \
  template FDAlgebra<T> build_algebra<T>(const Workspace&, const std::string&);                          \
  template TruncatedGPA<T> build_gpa<T>(const Workspace&, const std::string&, GpaOptions);               \
  template IdempotentSet<T> build_idempotents<T>(const Workspace&, const IdempotentDecl&);               \
  template QuiverRepresentation<T> build_representation<T>(const Workspace&, const RepDecl&);            \
  template std::string path_text<T>(const TruncatedGPA<T>&, const BasisPath&);

PATHALG_INSTANTIATE_WORKSPACE(Rational)
PATHALG_INSTANTIATE_WORKSPACE(Modp)

}  // namespace pathalg
