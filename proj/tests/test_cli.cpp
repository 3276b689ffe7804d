// Integration tests for the command-line tool. The binary path arrives via
// the FISHERID_CLI environment variable (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string cli_path() {
  const char* env = std::getenv("FISHERID_CLI");
  REQUIRE_MESSAGE(env != nullptr, "FISHERID_CLI must point at the CLI binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout
  std::string errors;  // stderr
};

RunResult run_cli(const std::string& args, const fs::path& dir,
                  const std::string& env_prefix = "") {
  const fs::path err_file = dir / "stderr.txt";
  const std::string command =
      env_prefix + cli_path() + " " + args + " 2>" + err_file.string();
  std::array<char, 4096> buffer;
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_file);
  result.errors.assign((std::istreambuf_iterator<char>(err)),
                       std::istreambuf_iterator<char>());
  return result;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  return lines;
}

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("fisherid_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate writes the table and its sidecar") {
  Workspace ws;
  auto r = run_cli("generate --kind ball --n 5 --N 200 --seed 1 --output " +
                       ws.file("ball.csv"),
                   ws.dir);
  CHECK(r.exit_code == 0);
  const std::string table = read_file(ws.file("ball.csv"));
  CHECK(count_lines(table) == 201);  // header + 200 rows
  CHECK(table.rfind("x0,x1,x2,x3,x4\n", 0) == 0);

  const json meta = json::parse(read_file(ws.file("ball.meta.json")));
  CHECK(meta["kind"] == "ball");
  CHECK(meta["count"] == 200);
  CHECK(meta["rng"] == "smc64/1");

  // Same seed reproduces the bytes; another seed does not.
  auto again = run_cli("generate --kind ball --n 5 --N 200 --seed 1 --output " +
                           ws.file("ball2.csv"),
                       ws.dir);
  CHECK(again.exit_code == 0);
  CHECK(read_file(ws.file("ball2.csv")) == table);
  run_cli("generate --kind ball --n 5 --N 200 --seed 2 --output " + ws.file("ball3.csv"),
          ws.dir);
  CHECK(read_file(ws.file("ball3.csv")) != table);
}

TEST_CASE("generate honors --ambient zero padding") {
  Workspace ws;
  auto r = run_cli("generate --kind ball --n 2 --N 50 --ambient 4 --seed 1 --output " +
                       ws.file("p.csv"),
                   ws.dir);
  CHECK(r.exit_code == 0);
  const std::string table = read_file(ws.file("p.csv"));
  CHECK(table.rfind("x0,x1,x2,x3\n", 0) == 0);
  std::istringstream in(table);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.substr(line.size() - 4) == ",0,0");
}

TEST_CASE("estimate accepts an explicit alpha list") {
  Workspace ws;
  run_cli("generate --kind ball --n 3 --N 200 --seed 2 --output " + ws.file("b.csv"),
          ws.dir);
  auto r = run_cli("estimate --input " + ws.file("b.csv") +
                       " --alphas 0.7,0.8 --output " + ws.file("r.json"),
                   ws.dir);
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(read_file(ws.file("r.json")));
  CHECK(report["config"]["alphas"].size() == 2);
  CHECK(report["estimates"]["fishers"]["alpha_profile"].size() == 2);
}

TEST_CASE("generate ten_balls appends the label column") {
  Workspace ws;
  auto r = run_cli("generate --kind ten_balls --points-per-ball 50 --seed 7 --output " +
                       ws.file("tb.csv"),
                   ws.dir);
  CHECK(r.exit_code == 0);
  const std::string table = read_file(ws.file("tb.csv"));
  CHECK(count_lines(table) == 501);
  std::istringstream in(table);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x0,x1,x2,x3,x4,x5,x6,x7,x8,x9,x10,label");
  std::string first_row;
  std::getline(in, first_row);
  CHECK(first_row.substr(first_row.rfind(',') + 1) == "2");
}

TEST_CASE("estimate produces global, profile, pointwise and local blocks") {
  Workspace ws;
  run_cli("generate --kind ball --n 3 --N 300 --seed 4 --output " + ws.file("b.csv"),
          ws.dir);
  auto r = run_cli("estimate --input " + ws.file("b.csv") +
                       " --estimator fishers --local --pointwise --k 50 --output " +
                       ws.file("report.json"),
                   ws.dir);
  REQUIRE(r.exit_code == 0);

  const json report = json::parse(read_file(ws.file("report.json")));
  CHECK(report["command"] == "estimate");
  CHECK(report["input"]["rows"] == 300);
  const json& fishers = report["estimates"]["fishers"];
  const double dim = fishers["global"]["dimension"].get<double>();
  CHECK(dim > 2.0);
  CHECK(dim < 4.5);
  CHECK(fishers["alpha_profile"].size() == 20);
  CHECK(fishers["pointwise"].size() == 300);
  CHECK(fishers["local"].size() == 300);
  CHECK(report["preprocessing"]["retained_components"] == 3);

  int selected = 0;
  for (const auto& row : fishers["alpha_profile"]) {
    selected += row.value("selected", false) ? 1 : 0;
  }
  CHECK(selected == 1);
}

TEST_CASE("fully separable data reports saturation explicitly") {
  Workspace ws;
  run_cli("generate --kind sphere --n 49 --N 12 --seed 3 --output " + ws.file("s.csv"),
          ws.dir);
  auto r = run_cli("estimate --input " + ws.file("s.csv") + " --output " +
                       ws.file("r.json"),
                   ws.dir);
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(read_file(ws.file("r.json")));
  const json& fishers = report["estimates"]["fishers"];
  CHECK(fishers["fully_separable"] == true);
  CHECK(fishers["global"]["saturated"] == true);
  CHECK(fishers["global"]["alpha"] == 0.6);
  CHECK(fishers["global"]["dimension"] == fishers["global"]["cap"]);
}

TEST_CASE("estimate runs every baseline") {
  Workspace ws;
  run_cli("generate --kind swiss_roll --N 300 --seed 5 --output " + ws.file("s.csv"),
          ws.dir);
  auto r = run_cli("estimate --input " + ws.file("s.csv") +
                       " --estimator mle,cd,twonn --output " + ws.file("r.json"),
                   ws.dir);
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(read_file(ws.file("r.json")));
  CHECK(report["estimates"].contains("mle"));
  CHECK(report["estimates"].contains("cd"));
  CHECK(report["estimates"].contains("twonn"));
  CHECK(report["estimates"]["twonn"]["dimension"].get<double>() > 1.0);
}

TEST_CASE("estimate to stdout is byte-stable across runs and threads") {
  Workspace ws;
  run_cli("generate --kind ball --n 4 --N 250 --seed 9 --output " + ws.file("b.csv"),
          ws.dir);
  const std::string args = "estimate --input " + ws.file("b.csv") + " --local --k 40";
  const auto a = run_cli(args + " --threads 1", ws.dir);
  const auto b = run_cli(args + " --threads 1", ws.dir);
  const auto c = run_cli(args + " --threads 3", ws.dir);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output == c.output);
}

TEST_CASE("FISHERID_THREADS only sets the default worker count") {
  Workspace ws;
  run_cli("generate --kind ball --n 3 --N 200 --seed 6 --output " + ws.file("b.csv"),
          ws.dir);
  const std::string args = "estimate --input " + ws.file("b.csv") + " --local --k 30";
  const auto base = run_cli(args, ws.dir);
  const auto env = run_cli(args, ws.dir, "FISHERID_THREADS=2 ");
  CHECK(base.exit_code == 0);
  CHECK(env.exit_code == 0);
  CHECK(base.output == env.output);
}

TEST_CASE("pointwise output keeps dropped rows as null placeholders") {
  Workspace ws;
  // The fifth row sits exactly at the centroid, so preprocessing drops it.
  std::ofstream csv(ws.file("c.csv"));
  csv << "0,0\n2,0\n0,2\n2,2\n1,1\n1.5,0.5\n0.5,1.5\n";
  csv.close();
  auto r = run_cli("estimate --input " + ws.file("c.csv") + " --pointwise --output " +
                       ws.file("r.json"),
                   ws.dir);
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(read_file(ws.file("r.json")));
  const json& dropped = report["preprocessing"]["dropped_point_indices"];
  REQUIRE(dropped.size() == 1);
  CHECK(dropped[0] == 4);
  const json& pointwise = report["estimates"]["fishers"]["pointwise"];
  REQUIRE(pointwise.size() == 7);
  CHECK(pointwise[4]["dimension"].is_null());
  CHECK(pointwise[4]["dropped"] == "zero_vector");
  CHECK(pointwise[3]["dimension"].is_number());
}

TEST_CASE("exit code 2 on unreadable or ragged input") {
  Workspace ws;
  auto missing = run_cli("estimate --input " + ws.file("nope.csv"), ws.dir);
  CHECK(missing.exit_code == 2);
  CHECK(count_lines(missing.errors) == 1);

  std::ofstream ragged(ws.file("ragged.csv"));
  ragged << "1,2\n3\n";
  ragged.close();
  auto r = run_cli("estimate --input " + ws.file("ragged.csv"), ws.dir);
  CHECK(r.exit_code == 2);
  CHECK(count_lines(r.errors) == 1);
  CHECK(r.errors.find(":2:") != std::string::npos);
}

TEST_CASE("exit code 3 on degenerate data") {
  Workspace ws;
  std::ofstream dup(ws.file("dup.csv"));
  for (int i = 0; i < 10; ++i) dup << "1,2,3\n";
  dup.close();
  auto r = run_cli("estimate --input " + ws.file("dup.csv"), ws.dir);
  CHECK(r.exit_code == 3);
}

TEST_CASE("sweep emits one selected alpha and an optional histogram") {
  Workspace ws;
  run_cli("generate --kind ball --n 4 --N 400 --seed 2 --output " + ws.file("b.csv"),
          ws.dir);
  auto r = run_cli("sweep --input " + ws.file("b.csv") + " --output " +
                       ws.file("sweep.csv") + " --histogram " + ws.file("hist.csv"),
                   ws.dir);
  REQUIRE(r.exit_code == 0);
  const std::string sweep = read_file(ws.file("sweep.csv"));
  CHECK(count_lines(sweep) == 21);  // header + 20 alphas
  CHECK(sweep.rfind("alpha,mean_p,dimension,saturated,selected,cap,", 0) == 0);

  std::istringstream lines(sweep);
  std::string line;
  std::getline(lines, line);
  int selected = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string field;
    for (int i = 0; i < 5; ++i) std::getline(fields, field, ',');
    selected += field == "1";
  }
  CHECK(selected == 1);

  const std::string hist = read_file(ws.file("hist.csv"));
  CHECK(count_lines(hist) == 1 + 20 * 21);  // header + 21 bins per alpha
}

TEST_CASE("caps tabulates the grid") {
  Workspace ws;
  auto r = run_cli("caps --alphas 0.6:0.9:0.1 --sizes 100,1000 --output " +
                       ws.file("caps.csv"),
                   ws.dir);
  REQUIRE(r.exit_code == 0);
  const std::string caps = read_file(ws.file("caps.csv"));
  CHECK(count_lines(caps) == 1 + 4 * 2);
  CHECK(caps.rfind("alpha,n_points,cap_pointwise,cap_global\n", 0) == 0);
}

TEST_CASE("benchmark writes json plus records and summary tables") {
  Workspace ws;
  const std::string args =
      "benchmark --kinds ball:3 --sizes 100,150 --repeats 2 --k 50 "
      "--estimator fishers,twonn --seed 5 --output " +
      ws.file("bench");
  auto r = run_cli(args, ws.dir);
  REQUIRE(r.exit_code == 0);

  const json report = json::parse(read_file(ws.file("bench.json")));
  CHECK(report["records"].size() == 2 * 2 * 2);
  CHECK(report["summary"].size() == 2 * 2);
  for (const auto& record : report["records"]) {
    CHECK(!record.contains("runtime_seconds"));  // only with --timings
  }

  const std::string records = read_file(ws.file("bench_records.csv"));
  CHECK(count_lines(records) == 1 + 8);
  const std::string summary = read_file(ws.file("bench_summary.csv"));
  CHECK(count_lines(summary) == 1 + 4);

  // Byte-identical on rerun.
  auto again = run_cli(
      "benchmark --kinds ball:3 --sizes 100,150 --repeats 2 --k 50 "
      "--estimator fishers,twonn --seed 5 --output " +
          ws.file("bench2"),
      ws.dir);
  CHECK(again.exit_code == 0);
  CHECK(read_file(ws.file("bench2.json")) == read_file(ws.file("bench.json")));
  CHECK(read_file(ws.file("bench2_records.csv")) == records);

  // Timings appear only on request.
  auto timed = run_cli(args + "_t --timings", ws.dir);
  CHECK(timed.exit_code == 0);
  const json timed_report = json::parse(read_file(ws.file("bench_t.json")));
  CHECK(timed_report["records"][0].contains("runtime_seconds"));
}

TEST_CASE("estimate accepts --no-sphere and benchmark ingests --input tables") {
  Workspace ws;
  run_cli("generate --kind gaussian --n 3 --N 250 --seed 8 --output " + ws.file("g.csv"),
          ws.dir);
  auto r = run_cli("estimate --input " + ws.file("g.csv") + " --no-sphere --output " +
                       ws.file("ns.json"),
                   ws.dir);
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(read_file(ws.file("ns.json")));
  CHECK(report["config"]["project_to_sphere"] == false);
  CHECK(report["estimates"]["fishers"]["global"]["dimension"].get<double>() > 1.5);

  auto b = run_cli("benchmark --input " + ws.file("g.csv") +
                       " --sizes 120 --repeats 1 --k 50 --estimator fishers --output " +
                       ws.file("bi"),
                   ws.dir);
  REQUIRE(b.exit_code == 0);
  const json bench = json::parse(read_file(ws.file("bi.json")));
  CHECK(bench["records"][0]["dataset_id"] == "g");
}

TEST_CASE("help lists all subcommands") {
  Workspace ws;
  auto r = run_cli("--help", ws.dir);
  CHECK(r.exit_code == 0);
  for (const char* name : {"estimate", "generate", "sweep", "caps", "benchmark"}) {
    CHECK(r.output.find(name) != std::string::npos);
  }
}

}  // TEST_SUITE
