#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "arcflux/linear_system.hpp"
#include "arcflux/problem_file.hpp"
#include "arcflux/runner.hpp"

namespace fs = std::filesystem;

namespace {

struct FileOutcome {
  int exit_code = 0;       // 0 ok, 1 error, 2 residual failure
  std::string rendered;    // report text (empty on error)
  std::string error;       // message for stderr
};

FileOutcome run_one(arcflux::run::RunConfig cfg, const std::string& format) {
  FileOutcome out;
  try {
    const auto rep = arcflux::run::execute(cfg);
    out.rendered = arcflux::run::render(rep, format);
    out.exit_code = rep.residual_ok ? 0 : 2;
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.error = std::string(e.what()) + " (" + cfg.problem_path + ")";
  }
  return out;
}

std::string output_name(const std::string& problem_path,
                        const std::string& format) {
  return fs::path(problem_path).stem().string() + "." + format;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "arcflux: series solver for axially symmetric free-boundary heat "
      "problems with a simulated quantum linear-system backend"};
  app.set_version_flag("--version", "arcflux 1.0.0");

  std::vector<std::string> problem_files;
  std::string backend = "classical";
  int clock_qubits = 0;
  int truncation = -1;
  int collocation = -1;
  std::vector<double> probe_times;
  std::string out_path;
  std::string format = "json";
  double tolerance = 0.0;
  int jobs = 1;
  std::string dump_path;

  app.add_option("problems", problem_files, "problem description files")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--backend", backend, "classical, hhl, or both")
      ->check(CLI::IsMember({"classical", "hhl", "both"}));
  app.add_option("--clock-qubits", clock_qubits,
                 "phase-estimation clock register size (quantum backends)");
  app.add_option("--truncation", truncation, "series truncation override");
  app.add_option("--collocation", collocation,
                 "collocation point count override (two-phase)");
  app.add_option("--probe-times", probe_times,
                 "residual probe times, comma separated")
      ->delimiter(',');
  app.add_option("--out", out_path,
                 "output file (or directory when several problems are given)");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", tolerance, "residual acceptance tolerance");
  app.add_option("--jobs", jobs, "worker threads across problem files")
      ->check(CLI::PositiveNumber);
  app.add_option("--dump-matrix", dump_path,
                 "write the assembled system matrix and exit (single problem)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // keep the documented exit-code contract: anything that is not help or
    // version output is a plain error
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  arcflux::run::RunConfig base;
  base.backend = backend;
  base.clock_qubits = clock_qubits;
  if (truncation >= 0) base.truncation_override = truncation;
  if (collocation >= 0) base.collocation_override = collocation;
  base.probe_times = probe_times;
  if (tolerance > 0.0) base.tolerance_override = tolerance;

  if (!dump_path.empty()) {
    if (problem_files.size() != 1) {
      std::cerr << "error: --dump-matrix takes exactly one problem file\n";
      return 1;
    }
    try {
      const auto spec = arcflux::io::load_problem(problem_files[0]);
      const auto assembled = std::visit(
          [](const auto& p) {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>,
                                         arcflux::problems::OnePhaseISP>)
              return arcflux::problems::assemble_one_phase(p);
            else if constexpr (std::is_same_v<std::decay_t<decltype(p)>,
                                              arcflux::problems::ModelProblemD0>)
              return arcflux::problems::assemble_model_problem(p);
            else
              return arcflux::problems::assemble_two_phase(p);
          },
          spec);
      const auto lin = arcflux::problems::to_linear_system(assembled);
      std::ofstream os(dump_path);
      if (!os) {
        std::cerr << "error: cannot write " << dump_path << '\n';
        return 1;
      }
      arcflux::linsys::dump_matrix(lin.matrix, os);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
    return 0;
  }

  std::vector<FileOutcome> outcomes(problem_files.size());
  const int workers =
      std::min<int>(jobs, static_cast<int>(problem_files.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < problem_files.size(); ++i) {
      arcflux::run::RunConfig cfg = base;
      cfg.problem_path = problem_files[i];
      outcomes[i] = run_one(cfg, format);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= problem_files.size()) break;
          arcflux::run::RunConfig cfg = base;
          cfg.problem_path = problem_files[i];
          outcomes[i] = run_one(cfg, format);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  const bool multi = problem_files.size() > 1;
  bool any_error = false;
  bool any_residual = false;
  for (std::size_t i = 0; i < problem_files.size(); ++i) {
    const FileOutcome& oc = outcomes[i];
    if (oc.exit_code == 1) {
      any_error = true;
      std::cerr << "error: " << oc.error << '\n';
      continue;
    }
    if (oc.exit_code == 2) any_residual = true;
    if (out_path.empty()) {
      std::cout << oc.rendered;
    } else {
      fs::path target(out_path);
      if (multi || fs::is_directory(target)) {
        std::error_code ec;
        fs::create_directories(target, ec);
        target /= output_name(problem_files[i], format);
      }
      std::ofstream os(target);
      if (!os) {
        std::cerr << "error: cannot write " << target.string() << '\n';
        any_error = true;
        continue;
      }
      os << oc.rendered;
    }
  }
  if (any_error) return 1;
  return any_residual ? 2 : 0;
}
