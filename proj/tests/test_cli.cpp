#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QDC_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(QDC_GOLDEN_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("compute matches golden output") {
  const Run a = run("compute euler-modified -n 0 -q 2");
  CHECK(a.status == 0);
  CHECK(a.out == golden("compute_euler_modified.txt"));
  CHECK(first_line(a.out) == "3/2");

  const Run b = run("compute dc-classical -m 1 -h 1 -k 3");
  CHECK(b.out == golden("compute_dc_classical.txt"));
  CHECK(first_line(b.out) == "-1/6");

  const Run c = run("compute t-int-a -m 1 -a 1 -N 3 -p 3 -q 4");
  CHECK(c.out == golden("compute_t_int_a.txt"));
  CHECK(first_line(c.out) == "-19/2");

  CHECK(run("compute t-series -s 1 -a 1 -N 3 -p 3 -q 4 -K 6").out == golden("compute_t_series.txt"));
}

TEST_CASE("human and machine lines agree") {
  const Run r = run("compute q-euler-poly -m 1 -a 1 -N 3 -q 4");
  CHECK(first_line(r.out) == "-19/42");
  CHECK(r.out.find("\"value\":\"-19/42\"") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("compute t-int-a -m 2 -a 1 -N 3 -p 3 -q 4").status == 2);
  CHECK(run("compute euler-modified -n 1 -q 1").status == 3);
  CHECK(run("compute euler-modified -n 1 -q 2/0").status == 2);
  CHECK(run("compute euler-modified -q 2").status == 2);
  CHECK(run("compute frobnicate").status == 2);
  CHECK(run("compute t-series -s 1 -a 1 -N 3 -p 3 -q 4 -K 1").status == 0);
  CHECK(run("oracle --family modified -p 3 -q 4 --maxN 13").status == 3);
  CHECK(run("verify --claim nope").status == 2);
  CHECK(run("verify --claim eq3 --n 0..x").status == 2);
  CHECK(run("verify --claim eq2 --p 4").status == 2);
  CHECK(run("--bogus").status == 2);
}

TEST_CASE("verify exit status follows the expected-verdict table") {
  CHECK(run("verify --claim measure-additivity --p 3 --maxN 4 --q 4/1").status == 0);
  CHECK(run("verify --claim eq3 --d 1,3,5 --n 0..6 --q 2/1,4/1").status == 0);
  const Run a = run("verify --claim eq5-A");
  CHECK(a.status == 0);
  CHECK(a.out.find("\"verdict\": \"fails-as-expected\"") != std::string::npos);
  CHECK(a.out.find("\"discrepancy\"") != std::string::npos);

  // Marking eq5-A as holding turns its failures into unexpected verdicts.
  const auto path = std::filesystem::temp_directory_path() / "qdc_flipped_table.json";
  std::ofstream(path) << R"({"version": 2, "claims": {"eq5-A": {"rule": "holds"}}})";
  CHECK(run("verify --claim eq5-A --expected " + path.string()).status == 1);
  std::filesystem::remove(path);
}

TEST_CASE("verify golden report and formats") {
  CHECK(run("verify --claim measure-additivity --p 3 --maxN 2 --q 4/1").out ==
        golden("verify_measure.json"));
  const Run csv = run("verify --claim kummer --p 3 --c 0 --format csv");
  CHECK(csv.out.rfind("claim,index,params,", 0) == 0);
  CHECK(csv.out.find("kummer,0,") != std::string::npos);

  const auto path = std::filesystem::temp_directory_path() / "qdc_report.json";
  CHECK(run("verify --claim eq4 --p 3 --out " + path.string()).status == 0);
  CHECK(std::filesystem::file_size(path) > 0);
  std::filesystem::remove(path);
}

TEST_CASE("oracle golden trace") {
  CHECK(run("oracle --family carlitz -m 1 -p 3 -q 4 --maxN 3").out == golden("oracle_carlitz.txt"));
  const Run one = run("oracle --family one -p 3 -q 4 --maxN 4");
  CHECK(one.out == "N,value,vp_diff,vp_target\n1,1/1,,inf\n2,1/1,inf,inf\n3,1/1,inf,inf\n4,1/1,inf,inf\n");
}

TEST_CASE("full ledger is deterministic across runs and parallelism") {
  const Run a = run("verify --claim all --jobs 1");
  const Run b = run("verify --claim all --jobs 1");
  const Run c = run("verify --claim all --jobs 5");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}
