// pathalg VERB FILE [options]; with --all, every FILE (directories expand to
// their *.alg files) runs in parallel and each report is written atomically.
#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <thread>

#include "pathalg/cli.hpp"

namespace fs = std::filesystem;
using namespace pathalg;

namespace {

std::vector<std::string> expand(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const auto& in : inputs) {
    if (!fs::is_directory(in)) {
      files.push_back(in);
      continue;
    }
    std::vector<std::string> found;
    for (const auto& e : fs::directory_iterator(in))
      if (e.is_regular_file() && e.path().extension() == ".alg") found.push_back(e.path().string());
    std::sort(found.begin(), found.end());
    files.insert(files.end(), found.begin(), found.end());
  }
  return files;
}

void write_atomically(const fs::path& target, const std::string& text) {
  const fs::path tmp = target.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with finite-dimensional algebras and generalized path algebras"};
  std::string verb;
  std::vector<std::string> inputs;
  std::string format = "text";
  CommandOptions opts;
  bool all = false;
  std::string out_dir;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  app.add_option("verb", verb, "Command")->required()->check(CLI::IsMember(command_verbs()));
  app.add_option("files", inputs, "Workspace files")->required();
  app.add_option("--format", format, "Report form")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--algebra", opts.algebra, "Only this algebra");
  app.add_option("--quiver", opts.quiver, "Only this quiver");
  app.add_option("--rep", opts.rep, "Only this representation (rep-convert)");
  app.add_option("--idempotents", opts.idempotents, "Use this shipped idempotent set");
  app.add_option("--m", opts.m, "Number of merged idempotents (grade)")->check(CLI::PositiveNumber);
  app.add_option("--max-paths", opts.max_paths, "Cap on labelled paths in a GPA basis")->check(CLI::PositiveNumber);
  app.add_flag("--basis", opts.basis, "Include basis data");
  app.add_flag("--adjoin-unity", opts.adjoin_unity, "Radical of an algebra without unity via k1 + A");
  app.add_flag("--all", all, "Batch mode over every file; directories expand to *.alg");
  app.add_option("--out", out_dir, "Batch mode: write <stem>.<verb>.txt reports here");
  app.add_option("--jobs", jobs, "Batch mode: parallel workers")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  opts.format = format == "machine" ? ReportFormat::Machine : ReportFormat::Text;
  try {
    opts.seed = seed_from_env();
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }

  if (!all) {
    if (inputs.size() != 1) {
      std::cerr << "one workspace file expected (use --all for several)\n";
      return kExitInput;
    }
    const CommandResult r = run_command(verb, inputs.front(), opts);
    std::cout << r.report;
    return r.exit_code;
  }

  const auto files = expand(inputs);
  if (!out_dir.empty()) fs::create_directories(out_dir);
  std::vector<CommandResult> results(files.size());
  std::vector<std::future<void>> running;
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next == files.size()) return;
        k = next++;
      }
      results[k] = run_command(verb, files[k], opts);
      if (!out_dir.empty()) {
        write_atomically(fs::path(out_dir) / (fs::path(files[k]).stem().string() + "." + verb + ".txt"), results[k].report);
      }
    }
  };
  for (unsigned j = 0; j < std::min<std::size_t>(jobs, files.size()); ++j) running.push_back(std::async(std::launch::async, worker));
  for (auto& f : running) f.get();

  int code = 0;
  for (std::size_t k = 0; k < files.size(); ++k) {
    code = std::max(code, results[k].exit_code);
    if (out_dir.empty()) {
      std::cout << (opts.format == ReportFormat::Machine ? "# " : "== ") << files[k] << "\n" << results[k].report;
    } else {
      std::cout << files[k] << ": exit " << results[k].exit_code << "\n";
    }
  }
  return code;
}
