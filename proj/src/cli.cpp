#include "pathalg/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <type_traits>

#include "pathalg/grading.hpp"
#include "pathalg/presentation.hpp"
#include "pathalg/workspace.hpp"

namespace pathalg {

namespace {

/// Ordered key/value lines grouped by target.
class Report {
 public:
  void section(const std::string& title) { sections_.push_back({title, {}}); }
  void add(const std::string& key, const std::string& value) {
    if (sections_.empty()) section("");
    sections_.back().entries.emplace_back(key, value);
  }
  void add(const std::string& key, Index value) { add(key, std::to_string(value)); }
  void check(const std::string& key, bool ok) {
    add(key, ok ? "pass" : "fail");
    if (!ok) failed_ = true;
  }
  bool failed() const { return failed_; }

  std::string render(ReportFormat format) const {
    std::ostringstream out;
    for (std::size_t s = 0; s < sections_.size(); ++s) {
      const auto& sec = sections_[s];
      if (format == ReportFormat::Machine) {
        for (const auto& [k, v] : sec.entries) out << (sec.title.empty() ? "" : sec.title + ".") << k << " = " << v << "\n";
        continue;
      }
      if (s > 0) out << "\n";
      if (!sec.title.empty()) out << sec.title << "\n";
      std::size_t width = 0;
      for (const auto& e : sec.entries) width = std::max(width, e.first.size());
      for (const auto& [k, v] : sec.entries) out << "  " << k << std::string(width - k.size(), ' ') << "  " << v << "\n";
    }
    return out.str();
  }

 private:
  struct Section {
    std::string title;
    std::vector<std::pair<std::string, std::string>> entries;
  };
  std::vector<Section> sections_;
  bool failed_ = false;
};

template <class T>
std::string vec_text(const Vec<T>& v) {
  std::string s;
  for (Index i = 0; i < v.size(); ++i) s += (i ? " " : "") + v(i).str();
  return s;
}

template <class T>
std::string mat_text(const Mat<T>& m) {
  if (m.rows() == 0 || m.cols() == 0) return "(" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")";
  std::string s;
  for (Index r = 0; r < m.rows(); ++r) s += (r ? " ; " : "") + vec_text<T>(m.row(r).transpose());
  return s;
}

std::string list_text(const std::vector<Index>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

template <class T>
void add_basis(Report& r, const std::string& key, const Subspace<T>& s) {
  for (Index i = 0; i < s.dim(); ++i) r.add(key + "[" + std::to_string(i) + "]", vec_text<T>(s.basis_vector(i)));
}

/// An algebra verb target: a standalone algebra, or a quiver read as its GPA.
template <class T>
struct Target {
  std::string name;
  FDAlgebra<T> algebra;
  std::optional<TruncatedGPA<T>> gpa;
  std::vector<const IdempotentDecl*> idempotents;  // shipped sets for this algebra
};

template <class T>
class Runner {
 public:
  Runner(const Workspace& w, const CommandOptions& o) : w_(w), o_(o) {
    if (o.max_paths) gpa_options_.max_paths = *o.max_paths;
  }

  int run(const std::string& verb, Report& r) {
    if (verb == "rep-convert") return each_rep(r);
    if (verb == "gpa-build" || verb == "gpa-check") {
      return each_quiver(r, [&](const std::string& q) { verb == "gpa-build" ? gpa_build(q, r) : gpa_check(q, r); });
    }
    int code = each_target(r, [&](const std::string& kind, const std::string& name) {
      Target<T> t = load(kind, name);
      if (verb == "validate") validate(t, r);
      else if (verb == "radical") radical_report(t, r);
      else if (verb == "decompose") decompose(t, r);
      else if (verb == "idempotents") idempotents(t, r);
      else if (verb == "present") present(t, r, false);
      else if (verb == "present-elementary") present(t, r, true);
      else if (verb == "grade") grade(t, r);
    });
    if (verb == "validate" && !o_.algebra && !o_.quiver) {
      validating_ = true;
      code = std::max(code, each_rep(r));
    }
    return code;
  }

 private:
  std::mt19937_64 rng() const { return std::mt19937_64(o_.seed); }

  /// Runs body per item; an error becomes an `error` entry and the worst
  /// exit code wins.
  template <class F>
  int guarded(Report& r, const std::string& title, F&& body) {
    r.section(title);
    try {
      body();
    } catch (const Error& e) {
      r.add("error", e.what());
      return exit_code_of(e);
    }
    return 0;
  }

  template <class F>
  int each_target(Report& r, F&& body) {
    std::vector<std::pair<std::string, std::string>> targets;
    if (o_.algebra) targets.emplace_back("algebra", *o_.algebra);
    if (o_.quiver) targets.emplace_back("quiver", *o_.quiver);
    if (targets.empty()) {
      for (const auto& a : w_.standalone_algebras()) targets.emplace_back("algebra", a);
      for (const auto& q : w_.quivers) targets.emplace_back("quiver", q.name);
    }
    if (targets.empty()) throw Error(ErrorCode::UnknownReference, "the workspace declares no algebra or quiver");
    int code = 0;
    for (const auto& [kind, name] : targets)
      code = std::max(code, guarded(r, name, [&] { body(kind, name); }));
    return code;
  }

  template <class F>
  int each_quiver(Report& r, F&& body) {
    std::vector<std::string> qs;
    if (o_.quiver) qs.push_back(*o_.quiver);
    for (const auto& q : w_.quivers)
      if (!o_.quiver) qs.push_back(q.name);
    if (qs.empty()) throw Error(ErrorCode::UnknownReference, "the workspace declares no quiver");
    int code = 0;
    for (const auto& q : qs) code = std::max(code, guarded(r, q, [&] { body(q); }));
    return code;
  }

  Target<T> load(const std::string& kind, const std::string& name) {
    Target<T> t{name, {}, std::nullopt, {}};
    if (kind == "algebra") {
      t.algebra = build_algebra<T>(w_, name);
      for (const auto& d : w_.idempotents)
        if (d.algebra == name && (!o_.idempotents || *o_.idempotents == d.name)) t.idempotents.push_back(&d);
      if (o_.idempotents && t.idempotents.empty()) {
        throw Error(ErrorCode::UnknownReference, "no idempotent set '" + *o_.idempotents + "' for " + name);
      }
    } else {
      t.gpa = build_gpa<T>(w_, name, gpa_options_);
      t.algebra = t.gpa->algebra();
    }
    return t;
  }

  void header(const Target<T>& t, Report& r) {
    r.add("kind", t.gpa ? "gpa" : "algebra");
    r.add("field", t.algebra.field().name());
    r.add("dim", t.algebra.dim());
  }

  void validate(const Target<T>& t, Report& r) {
    header(t, r);
    // the constructor rejects non-associative tables, so reaching here passed
    r.check("associative", true);
    r.add("unity", t.algebra.has_unity() ? "yes" : "no");
    if (o_.basis && t.algebra.has_unity()) r.add("unity.vector", vec_text<T>(t.algebra.one()));
    if (t.gpa) gpa_summary(*t.gpa, r);
    for (const IdempotentDecl* d : t.idempotents) {
      bool complete = true;
      try {
        validate_complete_set(t.algebra, build_idempotents<T>(w_, *d).elements);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidIdempotentSet) throw;
        complete = false;
        r.add("idempotents." + d->name + ".reason", e.what());
      }
      r.check("idempotents." + d->name + ".complete", complete);
    }
  }

  void gpa_summary(const TruncatedGPA<T>& g, Report& r) {
    r.add("vertices", g.quiver().num_vertices());
    r.add("arrows", g.quiver().num_arrows());
    r.add("truncation", g.truncation());
    r.add("mode", g.relations().mode == RelationMode::Weak ? "weak" : "strict");
    r.add("relations", static_cast<Index>(g.relations().elements.size()));
  }

  void radical_report(const Target<T>& t, Report& r) {
    header(t, r);
    RadicalOptions ro;
    ro.adjoin_unity = o_.adjoin_unity;
    RadicalData<T> rad = radical(t.algebra, ro);
    r.add("radical.dim", rad.radical.dim());
    r.add("nilpotency_index", rad.nilpotency_index);
    r.add("quotient.dim", rad.quotient.algebra.dim());
    if (rad.adjoined_unity) r.add("adjoined_unity", "yes");
    const auto idx = nilpotency_index(t.algebra, rad.radical);
    r.check("radical.nilpotent", idx && *idx == rad.nilpotency_index);
    r.check("quotient.radical_zero", rad.quotient_radical_zero);
    if (t.gpa) r.check("radical_is_arrow_ideal", jacobson_radical_is_arrow_ideal(*t.gpa).equal);
    if (o_.basis) add_basis(r, "radical.basis", rad.radical);
  }

  void decomposition_report(const FDAlgebra<T>& a, const IdempotentSet<T>& idems, const std::string& key, Report& r) {
    const auto d = gm_decompose(a, idems);
    std::vector<Index> dims;
    for (const auto& b : d.blocks) dims.push_back(b.dim());
    r.add(key + ".size", d.size());
    r.add(key + ".block_dims", list_text(dims));
    const GmCheck c = check_gm_decomposition(a, d);
    r.check(key + ".direct_sum", c.direct_sum);
    r.check(key + ".block_products", c.block_products);
    if (o_.basis)
      for (Index i = 0; i < d.size(); ++i) r.add(key + ".unit[" + std::to_string(i) + "]", vec_text<T>(d.unit[i]));
  }

  IdempotentSet<T> lifted_central(const FDAlgebra<T>& a, Index& n_wa) {
    auto g = rng();
    RadicalData<T> rad = radical(a);
    WedderburnData<T> w = wedderburn_blocks(rad.quotient.algebra, g);
    n_wa = w.n_wa();
    return lift_idempotents(a, rad.radical, rad.quotient, w.central);
  }

  void decompose(const Target<T>& t, Report& r) {
    header(t, r);
    Index n_wa = 0;
    const auto central = lifted_central(t.algebra, n_wa);
    r.add("n_wa", n_wa);
    decomposition_report(t.algebra, central, "gm", r);
    if (t.gpa) decomposition_report(t.algebra, t.gpa->gm_unit(), "gm_vertices", r);
    for (const IdempotentDecl* d : t.idempotents)
      decomposition_report(t.algebra, build_idempotents<T>(w_, *d), "idempotents." + d->name, r);
  }

  void idempotents(const Target<T>& t, Report& r) {
    header(t, r);
    Index n_wa = 0;
    const auto central = lifted_central(t.algebra, n_wa);
    r.add("n_wa", n_wa);
    auto g = rng();
    auto describe = [&](const IdempotentSet<T>& s, const std::string& key) {
      std::string prim;
      for (Index i = 0; i < s.size(); ++i) {
        prim += std::string(i ? " " : "") + (is_primitive(t.algebra, s[i], g) ? "yes" : "no");
        r.add(key + "[" + std::to_string(i) + "]", vec_text<T>(s[i]));
      }
      r.add(key + ".primitive", prim);
    };
    describe(central, "central");
    for (const IdempotentDecl* d : t.idempotents) {
      const auto s = build_idempotents<T>(w_, *d);
      bool complete = true;
      try {
        validate_complete_set(t.algebra, s.elements);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidIdempotentSet) throw;
        complete = false;
      }
      r.check("idempotents." + d->name + ".complete", complete);
      if (complete) describe(s, "idempotents." + d->name);
    }
  }

  void present(const Target<T>& t, Report& r, bool elementary) {
    header(t, r);
    auto g = rng();
    std::optional<IdempotentSet<T>> idems;
    if (o_.idempotents && !t.idempotents.empty()) idems = build_idempotents<T>(w_, *t.idempotents.front());
    const Presentation<T> p =
        elementary ? extract_elementary_presentation(t.algebra, g) : extract_presentation(t.algebra, g, idems);
    const PresentationReport v = verify_presentation(p, t.algebra);
    r.add("n_wa", p.n_wa);
    r.add("vertices", v.vertices);
    r.add("arrows", v.arrows);
    r.add("relations", v.relations);
    r.add("truncation", p.truncation);
    r.add("mode", v.mode == RelationMode::Weak ? "weak" : "strict");
    std::vector<Index> omega_dims;
    for (const auto& om : p.family) omega_dims.push_back(om.dim());
    r.add("omega_dims", list_text(omega_dims));
    r.add("presented.dim", v.presented_dim);
    r.check("dims_match", v.dims_match);
    r.check("homomorphism", v.homomorphism);
    r.check("bijective", v.bijective);
    r.check("arrow_counts", v.arrow_counts);
    r.check("jt_in_n", v.jt_in_n);
    r.check("n_in_j", v.n_in_j);
    if (elementary) r.check("n_in_j2", v.n_in_j2);
    r.check("iso_verified", v.ok());
    for (std::size_t k = 0; k < p.relifted.size(); ++k)
      if (p.relifted[k]) r.add("relifted[" + std::to_string(k) + "]", "yes");
    for (const auto& f : v.failures) r.add("failure", f);
    for (const auto& a : p.quiver.arrows) {
      r.add("arrow." + a.name, p.quiver.vertices[a.source] + " -> " + p.quiver.vertices[a.target]);
    }
    if (o_.basis) {
      for (std::size_t k = 0; k < p.relations.elements.size(); ++k)
        r.add("relation." + p.relations.names[k], combination_text(p.free, p.relations.elements[k]));
      for (std::size_t a = 0; a < p.arrow_elements.size(); ++a)
        r.add("arrow_element." + p.quiver.arrows[a].name, vec_text<T>(p.arrow_elements[a]));
    }
  }

  std::string combination_text(const TruncatedGPA<T>& g, const PathCombination<T>& c) {
    // same syntax as a relation line of the workspace format
    const T one = scalar<T>(g.field(), 1);
    std::string s;
    for (const auto& term : c) {
      if (term.coeff.is_zero()) continue;
      T coeff = term.coeff;
      const bool negative = [&] {
        if constexpr (std::is_same_v<T, Rational>) return sgn(coeff.value()) < 0;
        return false;
      }();
      if (negative) coeff = -coeff;
      s += s.empty() ? (negative ? "- " : "") : (negative ? " - " : " + ");
      if (!(coeff == one)) s += coeff.str() + " * ";
      s += path_text(g, term.path);
    }
    return s.empty() ? "0" : s;
  }

  void grade(const Target<T>& t, Report& r) {
    header(t, r);
    auto g = rng();
    Index m = 0;
    if (o_.m) {
      m = *o_.m;
    } else if (t.gpa) {
      m = t.gpa->quiver().num_vertices();
    } else {
      m = wedderburn_artin_number(t.algebra, g);
    }
    const GmGrading<T> gr = t.gpa ? grade_gpa_via_merge(*t.gpa, m) : grade_via_merge(t.algebra, m, g);
    std::vector<Index> dims;
    for (const auto& c : gr.components) dims.push_back(c.dim());
    r.add("group", "Z" + std::to_string(m));
    r.add("component_dims", list_text(dims));
    const GradingCheck c = check_grading(t.algebra, gr);
    r.check("direct_sum", c.direct_sum);
    r.check("multiplicative", c.multiplicative);
    if (o_.basis)
      for (Index k = 0; k < m; ++k) add_basis(r, "component[" + std::to_string(k) + "]", gr.component(k));
  }

  void gpa_build(const std::string& q, Report& r) {
    const TruncatedGPA<T> g = build_gpa<T>(w_, q, gpa_options_);
    r.add("field", g.field().name());
    gpa_summary(g, r);
    r.add("free.dim", g.free_algebra().dim());
    r.add("dim", g.dim());
    r.add("arrow_ideal.dim", g.arrow_ideal().dim());
    if (o_.basis)
      for (std::size_t k = 0; k < g.paths().size(); ++k) r.add("path[" + std::to_string(k) + "]", path_text(g, g.paths()[k]));
  }

  void gpa_check(const std::string& q, Report& r) {
    const TruncatedGPA<T> g = build_gpa<T>(w_, q, gpa_options_);
    gpa_summary(g, r);
    r.add("dim", g.dim());
    // Cor 3.13(i): dim Q <= number of labelled paths of length < t
    const Index bound = count_free_paths(g.quiver(), g.family(), g.truncation());
    r.add("path_bound", bound);
    r.check("dim_bound", g.dim() <= bound);
    const CofinalCertificate cof = check_weak_relations_cofinal(g.quiver(), g.family(), g.relations(), gpa_options_);
    r.check("jt_in_relations", cof.certified);
    if (cof.witness) r.add("jt_witness", path_text(g, *cof.witness));
    const RadicalComparison rc = jacobson_radical_is_arrow_ideal(g);
    r.add("radical.dim", rc.radical_dim);
    r.add("arrow_ideal.dim", rc.arrow_ideal_dim);
    r.check("radical_is_arrow_ideal", rc.equal);
  }

  int each_rep(Report& r) {
    std::vector<const RepDecl*> reps;
    for (const auto& d : w_.reps)
      if (!o_.rep || d.name == *o_.rep) reps.push_back(&d);
    if (o_.rep && reps.empty()) throw Error(ErrorCode::UnknownReference, "unknown rep '" + *o_.rep + "'");
    if (reps.empty() && !validating_) throw Error(ErrorCode::UnknownReference, "the workspace declares no rep");
    int code = 0;
    for (const RepDecl* d : reps) code = std::max(code, guarded(r, d->name, [&] { rep_convert(*d, r); }));
    return code;
  }

  void rep_convert(const RepDecl& d, Report& r) {
    const QuiverRepresentation<T> rep = build_representation<T>(w_, d);
    const TruncatedGPA<T> g = build_gpa<T>(w_, d.quiver, gpa_options_);
    r.add("quiver", d.quiver);
    r.add("dims", list_text(rep.dims));
    const ModuleSystem<T> ms = rep_to_module_system(rep, g);
    r.check("relations_annihilate", true);
    const LocalUnitaryModule<T> module = h_assemble(ms);
    r.add("module.dim", module.dim);
    r.check("roundtrip.module_system", same_data(g_split(module), ms));
    r.check("roundtrip.representation", same_data(module_system_to_rep(ms, g), rep));
    if (o_.basis) {
      for (Index k = 0; k < g.dim(); ++k) r.add("action." + path_text(g, g.paths()[k]), mat_text<T>(module.act(g.algebra().basis_vector(k))));
    }
  }

  const Workspace& w_;
  const CommandOptions& o_;
  GpaOptions gpa_options_;
  bool validating_ = false;
};

}  // namespace

int exit_code_of(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Input: return kExitInput;
    case ErrorCategory::Unsupported: return kExitUnsupported;
    case ErrorCategory::Internal: return kExitCertificate;
  }
  return kExitCertificate;
}

const std::vector<std::string>& command_verbs() {
  static const std::vector<std::string> verbs{"validate",  "radical",   "decompose", "idempotents", "present",
                                              "present-elementary", "gpa-build", "gpa-check", "rep-convert", "grade"};
  return verbs;
}

CommandResult run_command_text(const std::string& verb, const std::string& workspace_text, const CommandOptions& options) {
  Report r;
  int code = 0;
  try {
    const auto& verbs = command_verbs();
    if (std::find(verbs.begin(), verbs.end(), verb) == verbs.end()) throw Error(ErrorCode::SyntaxError, "unknown verb '" + verb + "'");
    const Workspace w = parse_workspace(workspace_text);
    const FieldDescriptor f = w.field_descriptor();
    if (f.kind == FieldDescriptor::Kind::Rationals) {
      code = Runner<Rational>(w, options).run(verb, r);
    } else {
      code = Runner<Modp>(w, options).run(verb, r);
    }
  } catch (const Error& e) {
    r.section("");
    r.add("error", e.what());
    code = exit_code_of(e);
  }
  if (code == 0 && r.failed()) code = kExitCertificate;
  return {code, r.render(options.format)};
}

CommandResult run_command(const std::string& verb, const std::string& path, const CommandOptions& options) {
  std::ifstream in(path);
  if (!in) {
    Report r;
    r.add("error", Error(ErrorCode::UnknownReference, "cannot read " + path).what());
    return {kExitInput, r.render(options.format)};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return run_command_text(verb, ss.str(), options);
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("GPA_SEED");
  if (!s || !*s) return fallback;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw Error(ErrorCode::SyntaxError, std::string("GPA_SEED must be a decimal integer, got '") + s + "'");
  }
}

}  // namespace pathalg
