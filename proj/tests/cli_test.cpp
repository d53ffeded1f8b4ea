#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "sgp/generators.hpp"
#include "sgp/io.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  json report;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sgp::cli::run(args, out, err);
  // exactly one report line
  const std::string e = err.str();
  const auto last = e.rfind('\n', e.size() - 2);
  const std::string line = last == std::string::npos ? e : e.substr(last + 1);
  return {code, out.str(), json::parse(line)};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "sgp_cli_test") { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("gen") {
  TempDir dir;
  auto r = run({"gen", "path", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 1\n");
  CHECK(r.report["command"] == "gen");
  CHECK(r.report["exit_code"] == 0);

  r = run({"gen", "path", "--n", "75", "--override", "37:-0.05", "--out", dir / "neg.mtx"});
  CHECK(r.code == 0);
  CHECK(sgp::io::load_graph(dir / "neg.mtx") == sgp::path_string({75, {{36, -0.05}}}));
  CHECK(r.report["outputs"][0] == dir / "neg.mtx");

  run({"gen", "cobra", "--out", dir / "cobra.csv"});
  CHECK(sgp::io::load_graph(dir / "cobra.csv") == sgp::cobra());

  CHECK(run({"gen", "path", "--override", "0:1"}).code == 2);
  CHECK(run({"gen", "path", "--override", "x"}).code == 2);
  CHECK(run({"gen", "cobra", "--n", "4"}).code == 2);
  CHECK(run({"gen", "torus"}).code == 2);
}

TEST_CASE("spectrum") {
  TempDir dir;
  run({"gen", "path", "--out", dir / "unit.mtx"});
  auto r = run({"spectrum", dir / "unit.mtx", "--k", "5"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 77);
  CHECK(rows[0] == "vertex,mode_0,mode_1,mode_2,mode_3,mode_4");
  CHECK(rows[1].rfind("eigenvalue,", 0) == 0);
  CHECK(rows[2].rfind("1,", 0) == 0);
  CHECK(rows[76].rfind("75,", 0) == 0);
  CHECK(r.report["input_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);

  CHECK(run({"spectrum", dir / "unit.mtx", "--k", "76"}).code == 2);
  CHECK(run({"spectrum", dir / "unit.mtx", "--k", "75", "--deflate-ones"}).code == 2);

  r = run({"spectrum", dir / "unit.mtx", "--k", "3", "--solver", "lobpcg", "--max-iter", "2"});
  CHECK(r.code == 0);
  CHECK(r.report["warnings"].size() == 1);

  // identical invocations, identical bytes
  CHECK(run({"spectrum", dir / "unit.mtx", "--solver", "lobpcg", "--seed", "5"}).out ==
        run({"spectrum", dir / "unit.mtx", "--solver", "lobpcg", "--seed", "5"}).out);
}

TEST_CASE("partition") {
  TempDir dir;
  run({"gen", "dumbbell", "--out", dir / "d.mtx"});
  auto r = run({"partition", dir / "d.mtx", "--emit-confidence"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["n"] == 13);
  CHECK(j["kind"] == "standard");
  CHECK(j["confidence"].size() == 13);
  const int first = j["side"][0].get<int>();
  for (int i = 0; i < 13; ++i) CHECK(j["side"][i].get<int>() == (i < 6 ? first : 1 - first));

  run({"gen", "cobra", "--out", dir / "c.mtx"});
  const auto c = json::parse(run({"partition", dir / "c.mtx"}).out);
  CHECK(c["side"][0] == c["side"][1]);
  CHECK(c["side"][2] == c["side"][3]);
  CHECK(c["side"][0] != c["side"][2]);

  // the leading signed eigenvector of the cobra has one sign
  r = run({"partition", dir / "c.mtx", "--laplacian", "signed"});
  CHECK(r.code == 6);
  CHECK(r.report["error"].get<std::string>().find("DegenerateVector") != std::string::npos);

  run({"gen", "noisy-string", "--seed", "3", "--out", dir / "n.mtx"});
  r = run({"partition", dir / "n.mtx", "--laplacian", "signed", "--solver", "lobpcg"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).contains("clustered_warning"));

  write(dir / "split.csv", "i,j,w\n0,1,1\n2,3,1\n");
  CHECK(run({"partition", dir / "split.csv"}).code == 5);
  CHECK(run({"partition", dir / "missing.mtx"}).code == 3);
  write(dir / "bad.mtx", "not a matrix\n");
  CHECK(run({"partition", dir / "bad.mtx"}).code == 2);
  CHECK(run({"partition", dir / "d.mtx", "--bogus"}).code == 2);
}

TEST_CASE("metrics") {
  TempDir dir;
  run({"gen", "cobra", "--out", dir / "c.mtx"});
  write(dir / "p.json", R"({"n": 6, "side": [0, 0, 1, 1, 1, 1]})");
  auto r = run({"metrics", dir / "c.mtx", "--partition", dir / "p.json"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["signed_cut"] == 2.0);
  CHECK(j["cut"] == 0.0);

  run({"gen", "dumbbell", "--out", dir / "d.mtx"});
  write(dir / "q.json", R"({"side": [0,0,0,0,0,0,1,1,1,1,1,1,1]})");
  j = json::parse(run({"metrics", dir / "d.mtx", "--partition", dir / "q.json"}).out);
  CHECK(j["cut"] == 0.0);
  CHECK(j["signed_cut"] == 4.0);

  write(dir / "empty.json", R"({"side": [0, 0, 0, 0, 0, 0]})");
  CHECK(run({"metrics", dir / "c.mtx", "--partition", dir / "empty.json"}).code == 2);
  write(dir / "short.json", R"({"side": [0, 1]})");
  CHECK(run({"metrics", dir / "c.mtx", "--partition", dir / "short.json"}).code == 2);

  // partition output feeds metrics directly
  run({"partition", dir / "d.mtx", "--out", dir / "part.json"});
  CHECK(run({"metrics", dir / "d.mtx", "--partition", dir / "part.json"}).code == 0);
}

TEST_CASE("compare") {
  TempDir dir;
  run({"gen", "path", "--n", "20", "--out", dir / "u.mtx"});
  auto j = json::parse(run({"compare", dir / "u.mtx"}).out);
  const auto& a = j["standard"]["partition"];
  const auto& b = j["signed"]["partition"];
  CHECK((a == b || (a["side_a"] == b["side_b"] && a["side_b"] == b["side_a"])));
  CHECK_FALSE(j.contains("ratios"));

  run({"gen", "path", "--override", "37:-0.05", "--out", dir / "neg.mtx"});
  auto r = run({"compare", dir / "neg.mtx"});
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["ratios"]["gap_standard_over_baseline"].get<double>() > 1.0);
  CHECK(j["ratios"]["gap_signed_over_baseline"].get<double>() < 1.0);
  CHECK(j["ratios"]["condition_signed_over_standard"].get<double>() > 1.0);
}

TEST_CASE("demo") {
  TempDir dir;
  for (const char* name : {"string-modes", "weak-link", "negative-edge", "noisy-string", "cobra", "dumbbell"}) {
    const auto r = run({"demo", name, "--out", dir.path.string()});
    CHECK(r.code == 0);
    CHECK(r.report["outputs"].size() >= 1);
  }
  const auto cobra = json::parse(run({"demo", "cobra", "--out", dir.path.string()}).out);
  const auto tail = json::array({5, 6});
  CHECK((cobra["nullified"]["side_a"] == tail || cobra["nullified"]["side_b"] == tail));
  CHECK(run({"demo", "nothing"}).code == 2);
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("partition") != std::string::npos);
  CHECK(run({}).code == 2);
}
