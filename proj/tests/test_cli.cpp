#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "arcflux/linear_system.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = ARCFLUX_CLI_PATH;
const std::string kFixtures = ARCFLUX_FIXTURE_DIR;

struct CmdResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "arcflux-cli-tests";
  fs::create_directories(dir);
  return dir;
}

CmdResult run_cli(const std::string& args) {
  const fs::path err_file = scratch_dir() / "stderr.txt";
  const std::string cmd = kCli + " " + args + " 2>" + err_file.string();
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_file);
  std::stringstream ss;
  ss << err.rdbuf();
  result.err = ss.str();
  return result;
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

// report text with the volatile timing data removed
std::string strip_timings_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  j.erase("timings");
  return j.dump(2);
}

std::string strip_timings_csv(const std::string& text) {
  std::istringstream is(text);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line))
    if (line.rfind("timing,", 0) != 0) os << line << '\n';
  return os.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("version flag") {
  CmdResult r = run_cli("--version");
  CHECK(r.code == 0);
  CHECK(r.out == "arcflux 1.0.0\n");
}

TEST_CASE("valid fixture exits 0 with a parseable report") {
  unsetenv("ARCFLUX_TOL");
  CmdResult r = run_cli(fixture("model_basic.prob"));
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["problem"]["kind"] == "model_problem");
  CHECK(j["solution"]["classical"][1] == 0.375);
  CHECK(j["residuals"]["ok"] == true);
}

TEST_CASE("repeated runs are byte-identical without the timings") {
  unsetenv("ARCFLUX_TOL");
  const std::string args = fixture("model_basic.prob") +
                           " --backend both --clock-qubits 5"
                           " --probe-times 0.25,0.5";
  CmdResult first = run_cli(args);
  CmdResult second = run_cli(args);
  REQUIRE(first.code == 0);
  REQUIRE(second.code == 0);
  CHECK(strip_timings_json(first.out) == strip_timings_json(second.out));

  CmdResult c1 = run_cli(args + " --format csv");
  CmdResult c2 = run_cli(args + " --format csv");
  REQUIRE(c1.code == 0);
  CHECK(strip_timings_csv(c1.out) == strip_timings_csv(c2.out));
  CHECK(c1.out.rfind("section,key,value\n", 0) == 0);
}

TEST_CASE("malformed fixture exits 1 and writes nothing") {
  const fs::path out = scratch_dir() / "bad_syntax.json";
  fs::remove(out);
  CmdResult r = run_cli(fixture("bad_syntax.prob") + " --out " + out.string());
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(r.err.find("bad_syntax.prob") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("missing file exits 1") {
  CmdResult r = run_cli(scratch_dir().string() + "/does-not-exist.prob");
  CHECK(r.code == 1);
}

TEST_CASE("unknown flag exits 1") {
  CmdResult r = run_cli("--frobnicate " + fixture("model_basic.prob"));
  CHECK(r.code == 1);
}

TEST_CASE("quantum backend without a clock register exits 1") {
  CmdResult r = run_cli(fixture("model_basic.prob") + " --backend hhl");
  CHECK(r.code == 1);
  CHECK(r.err.find("clock") != std::string::npos);
}

TEST_CASE("residual failure exits 2 but still reports") {
  unsetenv("ARCFLUX_TOL");
  CmdResult r = run_cli(fixture("residual_fail.prob"));
  REQUIRE(r.code == 2);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["residuals"]["ok"] == false);
  CHECK(j["residuals"]["max"].get<double>() > 1.0);

  SUBCASE("a generous tolerance turns the run green") {
    CmdResult ok = run_cli(fixture("residual_fail.prob") + " --tol 10");
    CHECK(ok.code == 0);
  }
  SUBCASE("the report lands in --out even on failure") {
    const fs::path out = scratch_dir() / "residual_fail.json";
    fs::remove(out);
    CmdResult r2 =
        run_cli(fixture("residual_fail.prob") + " --out " + out.string());
    CHECK(r2.code == 2);
    CHECK(fs::exists(out));
  }
}

TEST_CASE("out file matches the stdout report") {
  unsetenv("ARCFLUX_TOL");
  const fs::path out = scratch_dir() / "model_basic.json";
  fs::remove(out);
  CmdResult direct = run_cli(fixture("model_basic.prob"));
  CmdResult filed =
      run_cli(fixture("model_basic.prob") + " --out " + out.string());
  REQUIRE(filed.code == 0);
  CHECK(filed.out.empty());
  CHECK(strip_timings_json(read_file(out)) == strip_timings_json(direct.out));
}

TEST_CASE("dump-matrix writes a readable system") {
  const fs::path out = scratch_dir() / "model.mat";
  fs::remove(out);
  CmdResult r =
      run_cli(fixture("model_basic.prob") + " --dump-matrix " + out.string());
  REQUIRE(r.code == 0);
  std::ifstream is(out);
  Eigen::MatrixXcd m = arcflux::linsys::read_matrix(is);
  REQUIRE(m.rows() == 2);
  CHECK(m(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m(1, 1).real() == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(m(0, 1) == std::complex<double>(0.0, 0.0));

  SUBCASE("dump-matrix wants exactly one problem") {
    CmdResult bad = run_cli(fixture("model_basic.prob") + " " +
                            fixture("residual_fail.prob") + " --dump-matrix " +
                            out.string());
    CHECK(bad.code == 1);
  }
}

TEST_CASE("batch runs match sequential runs file by file") {
  unsetenv("ARCFLUX_TOL");
  const std::string files = fixture("model_basic.prob") + " " +
                            fixture("one_phase_planar.prob") + " " +
                            fixture("two_phase_planar.prob");
  const fs::path seq_dir = scratch_dir() / "seq";
  const fs::path par_dir = scratch_dir() / "par";
  fs::remove_all(seq_dir);
  fs::remove_all(par_dir);

  CmdResult seq = run_cli(files + " --out " + seq_dir.string());
  CmdResult par = run_cli(files + " --jobs 3 --out " + par_dir.string());
  REQUIRE(seq.code == 0);
  REQUIRE(par.code == 0);

  for (const char* name :
       {"model_basic.json", "one_phase_planar.json", "two_phase_planar.json"}) {
    CAPTURE(name);
    const std::string a = read_file(seq_dir / name);
    const std::string b = read_file(par_dir / name);
    REQUIRE_FALSE(a.empty());
    CHECK(strip_timings_json(a) == strip_timings_json(b));
  }
}

TEST_CASE("batch exit codes aggregate by severity") {
  unsetenv("ARCFLUX_TOL");
  // an error anywhere wins over a residual failure, which wins over success
  CmdResult with_error = run_cli(fixture("model_basic.prob") + " " +
                                 fixture("bad_syntax.prob") + " " +
                                 fixture("residual_fail.prob"));
  CHECK(with_error.code == 1);

  CmdResult with_residual =
      run_cli(fixture("model_basic.prob") + " " + fixture("residual_fail.prob"));
  CHECK(with_residual.code == 2);
}
