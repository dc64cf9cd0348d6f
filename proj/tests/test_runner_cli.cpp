// End-to-end checks of the command-line tool: config parsing, CSV shapes,
// frozen spectra, exit codes, determinism, and manifest replay.  The CLI
// binary path arrives as argv[1]; everything runs through std::system so the
// contract is exercised exactly as a shell user would hit it.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_cli;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Scratch directory removed on scope exit; a per-process counter keeps
// parallel test cases from colliding.
struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("ss_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

CliResult run_cli(const TempDir& dir, const std::string& args) {
  const fs::path out = dir.path / "cli_stdout.txt";
  const fs::path err = dir.path / "cli_stderr.txt";
  const std::string cmd =
      "\"" + g_cli + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    rows.push_back(std::move(fields));
  }
  return rows;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

const char* kCos2xVerify =
    R"({"schema":1,"jobs":[{"type":"verify","theorem":"dirichlet_sum",)"
    R"("potential":{"type":"fourier","coeffs":[0,0,1]},"n_range":[1,5],"basis":64}]})";

}  // namespace

TEST_CASE("version flag prints the library version") {
  TempDir dir;
  const CliResult r = run_cli(dir, "--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1.0.0\n");
}

TEST_CASE("jobs subcommand documents every job type and both CSV headers") {
  TempDir dir;
  const CliResult r = run_cli(dir, "jobs");
  CHECK(r.exit_code == 0);
  for (const char* type : {"interval-spectrum", "torus-spectrum", "verify", "trace", "dikii",
                           "zeta", "counterexample"})
    CHECK(contains(r.out, std::string("\"type\":\"") + type + "\""));
  CHECK(contains(r.out, "\"type\":\"fourier\""));
  CHECK(contains(r.out, "theorem,n,lhs,rhs,slack,tol,status"));
  CHECK(contains(r.out, "k,value,error_estimate"));
  CHECK(contains(r.out, "SPECTRAL_SUMS_SEED"));
}

TEST_CASE("free Dirichlet spectrum job emits the exact frozen CSV bytes") {
  TempDir dir;
  write_file(dir.path / "config.json",
             R"({"schema":1,"jobs":[{"type":"interval-spectrum",)"
             R"("potential":{"type":"fourier","coeffs":[0]},"bc":"dirichlet","count":3}]})");
  const CliResult r = run_cli(dir, "run --config \"" + (dir.path / "config.json").string() +
                                       "\" --out \"" + (dir.path / "out").string() + "\"");
  CHECK(r.exit_code == 0);
  CHECK(read_file(dir.path / "out" / "job_0_interval-spectrum.csv") ==
        "k,value,error_estimate\n1,1,0\n2,4,0\n3,9,0\n");
  CHECK(fs::exists(dir.path / "out" / "run-manifest.json"));
}

TEST_CASE("verify job reports one passing row per truncation with frozen slack") {
  TempDir dir;
  write_file(dir.path / "config.json", kCos2xVerify);
  const CliResult r = run_cli(dir, "run --config \"" + (dir.path / "config.json").string() +
                                       "\" --out \"" + (dir.path / "out").string() + "\"");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(read_file(dir.path / "out" / "job_0_verify.csv"));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"theorem", "n", "lhs", "rhs", "slack", "tol",
                                            "status"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 7);
    CHECK(rows[i][0] == "dirichlet_sum");
    CHECK(rows[i][1] == std::to_string(i));
    CHECK(rows[i][6] == "pass");
    CHECK(rows[i][5] == "1e-09");
  }
  CHECK(rows[1][3] == "-0.5");
  CHECK(std::abs(std::strtod(rows[1][4].c_str(), nullptr) - 0.029345645066160886) <= 1e-13);
  CHECK(std::abs(std::strtod(rows[2][4].c_str(), nullptr) - 0.050156429314803797) <= 1e-13);
}

TEST_CASE("identical configs give byte-identical CSVs, also under --jobs-parallel") {
  TempDir dir;
  write_file(dir.path / "config.json", kCos2xVerify);
  const std::string cfg = "run --config \"" + (dir.path / "config.json").string() + "\"";
  CHECK(run_cli(dir, cfg + " --out \"" + (dir.path / "a").string() + "\"").exit_code == 0);
  CHECK(run_cli(dir, cfg + " --out \"" + (dir.path / "b").string() + "\"").exit_code == 0);
  CHECK(run_cli(dir, cfg + " --jobs-parallel --out \"" + (dir.path / "c").string() + "\"")
            .exit_code == 0);
  const std::string a = read_file(dir.path / "a" / "job_0_verify.csv");
  REQUIRE(!a.empty());
  CHECK(a == read_file(dir.path / "b" / "job_0_verify.csv"));
  CHECK(a == read_file(dir.path / "c" / "job_0_verify.csv"));
}

TEST_CASE("re-running a manifest as the config replays the original run") {
  TempDir dir;
  write_file(dir.path / "config.json", kCos2xVerify);
  CHECK(run_cli(dir, "run --config \"" + (dir.path / "config.json").string() + "\" --out \"" +
                         (dir.path / "a").string() + "\"")
            .exit_code == 0);
  const std::string manifest = read_file(dir.path / "a" / "run-manifest.json");
  CHECK(contains(manifest, "\"run_manifest_version\""));
  CHECK(contains(manifest, "\"config_echo\""));
  CHECK(contains(manifest, "\"job_summaries\""));
  CHECK(run_cli(dir, "run --config \"" + (dir.path / "a" / "run-manifest.json").string() +
                         "\" --out \"" + (dir.path / "b").string() + "\"")
            .exit_code == 0);
  CHECK(read_file(dir.path / "a" / "job_0_verify.csv") ==
        read_file(dir.path / "b" / "job_0_verify.csv"));
}

TEST_CASE("--tolerance-scale rescales the tol column before deciding status") {
  TempDir dir;
  write_file(dir.path / "config.json", kCos2xVerify);
  const CliResult r = run_cli(dir, "run --config \"" + (dir.path / "config.json").string() +
                                       "\" --out \"" + (dir.path / "out").string() +
                                       "\" --tolerance-scale 2");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(read_file(dir.path / "out" / "job_0_verify.csv"));
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][5] == "2e-09");
    CHECK(rows[i][6] == "pass");
  }
}

TEST_CASE("shrinking tolerances exposes round-off in the power representation rows") {
  // The identity rows evaluate an algebraically exact rewrite of lambda^(-s);
  // the two routes round differently except at special pairs, so a absurdly
  // small tolerance must flip exactly the rows with a nonzero difference.
  TempDir dir;
  write_file(dir.path / "config.json",
             R"({"schema":1,"jobs":[{"type":"zeta","powerrep":[[0.3,0.7],[3,1.3],[7,0.51]]}]})");
  const std::string cfg = "run --config \"" + (dir.path / "config.json").string() + "\"";
  const CliResult ok = run_cli(dir, cfg + " --out \"" + (dir.path / "a").string() + "\"");
  CHECK(ok.exit_code == 0);
  const CliResult tight =
      run_cli(dir, cfg + " --out \"" + (dir.path / "b").string() + "\" --tolerance-scale 1e-30");
  CHECK(tight.exit_code == 2);
  const auto rows = parse_csv(read_file(dir.path / "b" / "job_0_zeta.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[1][0] == "power_identity");
  CHECK(rows[1][5] == "1e-42");
  CHECK(rows[1][6] == "pass");  // 0.3^(-0.7) happens to round identically
  CHECK(rows[2][6] == "fail");
  CHECK(rows[3][6] == "fail");
}

TEST_CASE("schema violations exit 4 with a line-anchored message") {
  TempDir dir;
  const std::string out = " --out \"" + (dir.path / "out").string() + "\"";
  auto run_config = [&](const char* name, const std::string& text) {
    write_file(dir.path / name, text);
    return run_cli(dir, "run --config \"" + (dir.path / name).string() + "\"" + out);
  };

  SUBCASE("truncated JSON") {
    const CliResult r = run_config("bad.json", R"({"schema":1,"jobs":[{"type":"verify",)");
    CHECK(r.exit_code == 4);
    CHECK(contains(r.err, "bad.json:1:"));
    CHECK(contains(r.err, "parse error"));
    CHECK(!fs::exists(dir.path / "out"));  // nothing ran, nothing written
  }
  SUBCASE("unknown job type names the offending job") {
    const CliResult r = run_config("c.json", R"({"schema":1,"jobs":[{"type":"bogus"}]})");
    CHECK(r.exit_code == 4);
    CHECK(contains(r.err, "jobs[0]"));
    CHECK(contains(r.err, "unknown job type \"bogus\""));
    // The manifest still records the failed plan; no CSV is written.
    CHECK(fs::exists(dir.path / "out" / "run-manifest.json"));
    CHECK(!fs::exists(dir.path / "out" / "job_0_bogus.csv"));
  }
  SUBCASE("unknown theorem tag") {
    const CliResult r = run_config(
        "c.json",
        R"({"schema":1,"jobs":[{"type":"verify","theorem":"nonsense",)"
        R"("potential":{"type":"fourier","coeffs":[1]},"n":1}]})");
    CHECK(r.exit_code == 4);
    CHECK(contains(r.err, "unknown theorem tag \"nonsense\""));
  }
  SUBCASE("duplicate output file") {
    const CliResult r = run_config(
        "c.json",
        R"({"schema":1,"jobs":[{"type":"zeta","powerrep":[[2,1]],"out":"x.csv"},)"
        R"({"type":"zeta","powerrep":[[3,1]],"out":"x.csv"}]})");
    CHECK(r.exit_code == 4);
    CHECK(contains(r.err, "jobs[1]"));
    CHECK(contains(r.err, "duplicate output file \"x.csv\""));
  }
  SUBCASE("output name may not contain path separators") {
    const CliResult r = run_config(
        "c.json", R"({"schema":1,"jobs":[{"type":"zeta","powerrep":[[2,1]],"out":"a/b.csv"}]})");
    CHECK(r.exit_code == 4);
    CHECK(contains(r.err, "plain file name"));
  }
  SUBCASE("missing config file") {
    const CliResult r =
        run_cli(dir, "run --config \"" + (dir.path / "nosuch.json").string() + "\"" + out);
    CHECK(r.exit_code == 4);
    CHECK(contains(r.err, "cannot open config file"));
  }
  SUBCASE("non-positive tolerance scale") {
    const CliResult r = run_config("c.json", kCos2xVerify);
    CHECK(r.exit_code == 0);
    const CliResult bad = run_cli(dir, "run --config \"" + (dir.path / "c.json").string() + "\"" +
                                           out + " --tolerance-scale 0");
    CHECK(bad.exit_code == 4);
    CHECK(contains(bad.err, "tolerance scale"));
  }
  SUBCASE("unsupported schema version") {
    const CliResult r = run_config("c.json", R"({"schema":2,"jobs":[]})");
    CHECK(r.exit_code == 4);
    CHECK(contains(r.err, "unsupported \"schema\" 2"));
  }
}

TEST_CASE("a config exercising every job type runs clean with default file names") {
  TempDir dir;
  write_file(dir.path / "config.json", R"({"schema":1,"jobs":[
 {"type":"interval-spectrum","potential":{"type":"fourier","coeffs":[0]},"bc":"neumann","count":2},
 {"type":"torus-spectrum","lattice":{"vectors":[[6.283185307179586,0],[0,6.283185307179586]]},"count":3},
 {"type":"verify","theorem":"dirichlet_sum","potential":{"type":"fourier","coeffs":[0,0,1]},"n":2},
 {"type":"trace","potential":{"type":"fourier","coeffs":[0,0,1]},"n_max":6,"basis":64},
 {"type":"dikii","potential":{"type":"fourier","coeffs":[0,0,1]},"n":3,"basis":48},
 {"type":"zeta","lambdas":[1,4,9],"a":[1,4,9],"b":[1,4,9],"s":1,"powerrep":[[2,1]]},
 {"type":"counterexample","n":2,"t_values":[0,1]}
]})");
  const CliResult r = run_cli(dir, "run --config \"" + (dir.path / "config.json").string() +
                                       "\" --out \"" + (dir.path / "out").string() + "\"");
  CHECK(r.exit_code == 0);
  const char* files[] = {"job_0_interval-spectrum.csv", "job_1_torus-spectrum.csv",
                         "job_2_verify.csv",            "job_3_trace.csv",
                         "job_4_dikii.csv",             "job_5_zeta.csv",
                         "job_6_counterexample.csv",    "run-manifest.json"};
  for (const char* f : files) CHECK(fs::exists(dir.path / "out" / f));
  const std::string manifest = read_file(dir.path / "out" / "run-manifest.json");
  CHECK(contains(manifest, "\"exit_code\": 0"));
  CHECK(contains(manifest, "\"tool_name\": \"spectral-sums\""));
  // Torus spectrum of the square lattice with side 2*pi starts 0,1,1,1,1.
  const auto torus = parse_csv(read_file(dir.path / "out" / "job_1_torus-spectrum.csv"));
  REQUIRE(torus.size() == 4);
  CHECK(torus[1][0] == "0");
  CHECK(torus[1][1] == "0");
  CHECK(std::abs(std::strtod(torus[2][1].c_str(), nullptr) - 1.0) <= 1e-12);
  CHECK(std::abs(std::strtod(torus[3][1].c_str(), nullptr) - 1.0) <= 1e-12);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli-binary> [doctest options]\n", argv[0]);
    return 1;
  }
  g_cli = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  return ctx.run();
}
