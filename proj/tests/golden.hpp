// Golden machine-format reports: every applicable verb on every corpus file,
// run through the pathalg executable with GPA_SEED fixed. Set
// PATHALG_REGEN_GOLDEN=1 to rewrite the files instead of comparing.
#ifndef PATHALG_TESTS_GOLDEN_HPP
#define PATHALG_TESTS_GOLDEN_HPP

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "pathalg/workspace.hpp"

namespace golden {

constexpr const char* kSeed = "20261016";

struct Case {
  std::string verb;
  std::string file;  // relative to the source dir
  std::string name() const { return std::filesystem::path(file).stem().string() + "." + verb; }
  std::string golden_path() const { return std::string(PATHALG_SOURCE_DIR) + "/tests/golden/" + name() + ".txt"; }
};

inline std::vector<Case> cases() {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(std::string(PATHALG_SOURCE_DIR) + "/corpus"))
    if (e.path().extension() == ".alg") files.push_back("corpus/" + e.path().filename().string());
  std::sort(files.begin(), files.end());
  std::vector<Case> out;
  for (const auto& f : files) {
    const auto w = pathalg::parse_workspace_file(std::string(PATHALG_SOURCE_DIR) + "/" + f);
    for (const char* v : {"validate", "radical", "decompose", "idempotents", "present", "present-elementary", "grade"})
      out.push_back({v, f});
    if (!w.quivers.empty()) {
      out.push_back({"gpa-build", f});
      out.push_back({"gpa-check", f});
    }
    if (!w.reps.empty()) out.push_back({"rep-convert", f});
  }
  return out;
}

struct Run {
  int exit_code = -1;
  std::string output;
};

/// Runs the executable in the source dir; stderr is folded into the output.
inline Run run_cli(const std::string& args, const std::string& env = std::string("GPA_SEED=") + kSeed) {
  const std::string cmd =
      "cd '" + std::string(PATHALG_SOURCE_DIR) + "' && " + env + " '" + std::string(PATHALG_EXE) + "' " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.output.append(buf.data(), n);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

/// The golden text: the report followed by the exit code.
inline std::string render(const Case& c) {
  const Run r = run_cli(c.verb + " " + c.file + " --format machine --basis");
  return r.output + "exit = " + std::to_string(r.exit_code) + "\n";
}

inline bool regenerate() {
  const char* s = std::getenv("PATHALG_REGEN_GOLDEN");
  return s && std::string(s) == "1";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing " + path + ">";
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Compares (or rewrites) one case; returns whether it matched.
inline bool check(const Case& c, std::string* actual = nullptr) {
  const std::string text = render(c);
  if (actual) *actual = text;
  if (regenerate()) {
    std::filesystem::create_directories(std::filesystem::path(c.golden_path()).parent_path());
    std::ofstream(c.golden_path(), std::ios::binary) << text;
    return true;
  }
  return read_file(c.golden_path()) == text;
}

}  // namespace golden

#endif  // PATHALG_TESTS_GOLDEN_HPP
