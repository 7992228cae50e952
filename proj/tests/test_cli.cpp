#include <doctest.h>

#include <filesystem>

#include "golden.hpp"
#include "pathalg/cli.hpp"

using namespace pathalg;

namespace {

bool has_line(const std::string& report, const std::string& line) {
  return ("\n" + report).find("\n" + line + "\n") != std::string::npos;
}

CommandOptions machine() {
  CommandOptions o;
  o.format = ReportFormat::Machine;
  return o;
}

const char* kUt2 =
    "algebra UT2 dim 3\nmul 0 0 = 0:1\nmul 0 1 = 1:1\nmul 1 2 = 1:1\nmul 2 2 = 2:1\n";

}  // namespace

TEST_CASE("spec examples through the executable") {
  auto present = golden::run_cli("present corpus/upper_triangular_2.alg --format machine");
  CHECK(present.exit_code == 0);
  CHECK(has_line(present.output, "UT2.vertices = 2"));
  CHECK(has_line(present.output, "UT2.arrows = 1"));
  CHECK(has_line(present.output, "UT2.relations = 0"));
  CHECK(has_line(present.output, "UT2.iso_verified = pass"));

  auto radical = golden::run_cli("radical corpus/m2q.alg --format machine");
  CHECK(radical.exit_code == 0);
  CHECK(has_line(radical.output, "M2.radical.dim = 0"));
  CHECK(has_line(radical.output, "M2.nilpotency_index = 1"));

  auto grade = golden::run_cli("grade corpus/upper_triangular_2.alg --m 2 --format machine");
  CHECK(grade.exit_code == 0);
  CHECK(has_line(grade.output, "UT2.component_dims = 2 1"));
  CHECK(has_line(grade.output, "UT2.multiplicative = pass"));

  // the text form carries the same facts
  auto text = golden::run_cli("present corpus/upper_triangular_2.alg");
  CHECK(text.output.find("iso_verified") != std::string::npos);
  CHECK(text.output.find(" = ") == std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(golden::run_cli("present corpus/gaussian.alg").exit_code == kExitUnsupported);
  CHECK(golden::run_cli("radical corpus/does_not_exist.alg").exit_code == kExitInput);
  CHECK(golden::run_cli("frobnicate corpus/k.alg").exit_code != 0);
  CHECK(golden::run_cli("radical corpus/k.alg", "GPA_SEED=abc").exit_code == kExitInput);
  CHECK(golden::run_cli("present-elementary corpus/m2q.alg").exit_code == kExitInput);
  CHECK(golden::run_cli("grade corpus/upper_triangular_3.alg --m 4").exit_code == kExitInput);
  CHECK(golden::run_cli("gpa-build corpus/k.alg").exit_code == kExitInput);

  // a supplied set that is not complete fails its certificate
  std::string w = std::string(kUt2) + "idempotents half for UT2 = 1 0 0\n";
  auto r = run_command_text("validate", w, machine());
  CHECK(r.exit_code == kExitCertificate);
  CHECK(has_line(r.report, "UT2.idempotents.half.complete = fail"));

  // a syntax error is an input error with its position
  r = run_command_text("validate", "algebra A dim\n", machine());
  CHECK(r.exit_code == kExitInput);
  CHECK(r.report.find("line 1, col 14") != std::string::npos);

  // algebras without unity need --adjoin-unity
  const std::string nil = "algebra N dim 2\nmul 0 0 = 1:1\n";
  CHECK(run_command_text("radical", nil, machine()).exit_code == kExitInput);
  CommandOptions adjoin = machine();
  adjoin.adjoin_unity = true;
  r = run_command_text("radical", nil, adjoin);
  CHECK(r.exit_code == 0);
  CHECK(has_line(r.report, "N.radical.dim = 2"));

  // a representation violating a relation
  r = run_command_text("rep-convert", "quiver L vertices 1\narrow x 1 1\nrelation sq = x . x\ntruncate 3\n"
                                      "rep bad over L vertex 1 dim 2\narrowmap x = 1 0 ; 0 0\n", machine());
  CHECK(r.exit_code == kExitInput);
  CHECK(r.report.find("RelationNotSatisfied") != std::string::npos);
}

TEST_CASE("selectors and options") {
  auto r = golden::run_cli("decompose corpus/upper_triangular_2.alg --idempotents shifted --format machine");
  CHECK(r.exit_code == 0);
  CHECK(has_line(r.output, "UT2.idempotents.shifted.block_dims = 1 1 0 1"));
  CHECK(r.output.find("idempotents.diagonal") == std::string::npos);

  r = golden::run_cli("present corpus/upper_triangular_2.alg --idempotents shifted --format machine");
  CHECK(has_line(r.output, "UT2.relifted[0] = yes"));

  r = golden::run_cli("gpa-build corpus/commutative_square.alg --max-paths 5 --format machine");
  CHECK(r.exit_code == kExitInput);
  CHECK(r.output.find("PathExplosion") != std::string::npos);

  r = golden::run_cli("rep-convert corpus/a2_quiver.alg --rep interval --format machine");
  CHECK(has_line(r.output, "interval.dims = 1 1"));
  CHECK(r.output.find("regular.") == std::string::npos);
  CHECK(golden::run_cli("rep-convert corpus/a2_quiver.alg --rep nope").exit_code == kExitInput);
  CHECK(golden::run_cli("radical corpus/a2_quiver.alg --algebra nope").exit_code == kExitInput);

  // the splitter seed changes no certified fact
  const auto a = golden::run_cli("present corpus/upper_triangular_3.alg --format machine", "GPA_SEED=1");
  const auto b = golden::run_cli("present corpus/upper_triangular_3.alg --format machine", "GPA_SEED=987654321");
  CHECK(a.output == b.output);
}

TEST_CASE("batch mode writes one report per file") {
  const auto dir = std::filesystem::temp_directory_path() / ("pathalg_batch_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  auto r = golden::run_cli("radical corpus --all --jobs 4 --format machine --out '" + dir.string() + "'");
  CHECK(r.exit_code == 0);
  Index n = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    ++n;
    CHECK(e.path().extension() == ".txt");
    const std::string stem = e.path().stem().stem().string();
    const auto single = golden::run_cli("radical corpus/" + stem + ".alg --format machine");
    CHECK(golden::read_file(e.path().string()) == single.output);
  }
  CHECK(n == 15);
  std::filesystem::remove_all(dir);

  // worst exit code wins; the unsupported Q(i) is one of the files
  r = golden::run_cli("present corpus/k.alg corpus/gaussian.alg --all --format machine");
  CHECK(r.exit_code == kExitUnsupported);
  CHECK(r.output.find("# corpus/k.alg") != std::string::npos);
  CHECK(golden::run_cli("present corpus/k.alg corpus/gaussian.alg").exit_code == kExitInput);
}

TEST_CASE("golden machine reports") {
  const auto cases = golden::cases();
  CHECK(cases.size() >= 100);
  for (const auto& c : cases) {
    CAPTURE(c.name());
    std::string actual;
    const bool ok = golden::check(c, &actual);
    CHECK_MESSAGE(ok, actual);
  }
}

TEST_CASE("golden files hold the spec examples") {
  const std::string present = golden::read_file(golden::Case{"present", "corpus/upper_triangular_2.alg"}.golden_path());
  CHECK(has_line(present, "UT2.vertices = 2"));
  CHECK(has_line(present, "UT2.arrows = 1"));
  CHECK(has_line(present, "UT2.relations = 0"));
  CHECK(has_line(present, "UT2.iso_verified = pass"));
  const std::string radical = golden::read_file(golden::Case{"radical", "corpus/m2q.alg"}.golden_path());
  CHECK(has_line(radical, "M2.radical.dim = 0"));
  CHECK(has_line(radical, "M2.nilpotency_index = 1"));
  const std::string grade = golden::read_file(golden::Case{"grade", "corpus/upper_triangular_2.alg"}.golden_path());
  CHECK(has_line(grade, "UT2.group = Z2"));
  CHECK(has_line(grade, "UT2.component_dims = 2 1"));
  CHECK(has_line(grade, "UT2.multiplicative = pass"));
}
