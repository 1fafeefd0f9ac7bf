#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "abc/cli.hpp"
#include "abc/greedy.hpp"
#include "abc/structure.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace abc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Fresh scratch directory; the result store lives inside it.
struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("abc_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    ::setenv("ABC_RESULTS", (dir / "store.jsonl").c_str(), 1);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
  std::vector<nlohmann::json> records() const {
    std::vector<nlohmann::json> out;
    std::ifstream in(dir / "store.jsonl");
    std::string line;
    while (std::getline(in, line)) out.push_back(nlohmann::json::parse(line));
    return out;
  }
};

std::string path_file(int n) {
  std::string s = std::to_string(n) + "\n";
  for (int i = 0; i + 1 < n; ++i) s += std::to_string(i) + " " + std::to_string(i + 1) + "\n";
  return s;
}

}  // namespace

TEST_CASE("index prints six decimals") {
  Scratch s;
  const auto r = call({"index", s.write("p10.tree", path_file(10))});
  CHECK(r.code == 0);
  CHECK(r.out == "6.363961\n");
}

TEST_CASE("brute reports the path on five vertices") {
  Scratch s;
  const auto r = call({"brute", "--n", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("abc_min=2.828427") != std::string::npos);
  CHECK(r.out.find("  0 1 2 1 2\n") != std::string::npos);
  REQUIRE(s.records().size() == 1);
  CHECK(s.records()[0]["payload"]["n"] == 5);
}

TEST_CASE("exit codes") {
  Scratch s;
  const auto bad = call({"index", s.write("bad.tree", "3\n0 1\n1 x\n")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 3") != std::string::npos);
  CHECK(call({"index", (s.dir / "missing.tree").string()}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"brute", "--n", "21"}).code == 2);
  CHECK(call({"brute"}).code == 2);
  CHECK(call({"brute", "--n", "5", "--range", "5..6"}).code == 2);
  CHECK(call({"dsearch", "--n", "9"}).code == 2);
  CHECK(call({"greedy", "--degrees", "3,3,1,1"}).code == 2);
  CHECK(call({"verify", "everything"}).code == 2);
  CHECK(call({"report", "--range", "9-3"}).code == 2);
  CHECK(call({"brute", "--n", "5", "--format", "xml"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("verify subcommands succeed") {
  Scratch s;
  const auto c = call({"verify", "constants"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("id,paper_value,computed,abs_error,pass\n", 0) == 0);
  CHECK(c.out.find(",false") == std::string::npos);
  const auto p = call({"verify", "propositions"});
  CHECK(p.code == 0);
  CHECK(std::count(p.out.begin(), p.out.end(), '\n') == 5);
  const auto g = call({"verify", "greedy", "--n", "7"});
  CHECK(g.code == 0);
  CHECK(nlohmann::json::parse(g.out)["violations"].empty());
}

TEST_CASE("greedy and props subcommands") {
  Scratch s;
  const auto g = call({"greedy", "--degrees", "4,3,3,2,1,1,1,1,1,1", "--format", "json"});
  REQUIRE(g.code == 0);
  const auto j = nlohmann::json::parse(g.out);
  CHECK(j["tree"].get<std::string>().rfind("10\n", 0) == 0);
  const auto p = call({"props", s.write("p12.tree", path_file(12))});
  CHECK(p.code == 0);
  CHECK(p.out.find("no_pendant_path_ge4 fail") != std::string::npos);
}

TEST_CASE("transform emits trees and a delta record") {
  Scratch s;
  // Hub with a B1, a B5 and four B2 branches.
  TreeBuilder b;
  const Vertex u = b.add_vertex();
  for (int k : {1, 5, 2, 2, 2, 2}) b.add_branch(u, k);
  const std::string file = s.write("hub.tree", format_tree(b.build(u)));
  const auto r = call({"transform", "--kind", "T_PRO05", "--tree", file, "--out",
                       (s.dir / "t").string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["bound_kind"] == "exact");
  CHECK(j["delta_exact"].get<double>() == doctest::Approx(-0.0331932).epsilon(1e-6));
  CHECK(std::abs(j["delta_exact"].get<double>() - j["delta_closed_form"].get<double>()) <= 1e-12);
  CHECK(fs::exists(s.dir / "t" / "after.tree"));
  CHECK(call({"transform", "--kind", "TB", "--tree", file}).code == 2);
  CHECK(call({"transform", "--kind", "T_PRO05", "--tree", file, "--loc", "3"}).code == 2);
  CHECK(call({"transform", "--kind", "T9", "--tree", file}).code == 2);
}

TEST_CASE("payloads do not depend on the worker count") {
  for (int n = 4; n <= 16; ++n) {
    const auto one = cli::payload_json(cli::parallel_search(cli::Method::Brute, n, 1));
    REQUIRE(one == cli::payload_json(cli::parallel_search(cli::Method::Brute, n, 8)));
    REQUIRE(one == cli::payload_json(cli::parallel_search(cli::Method::Brute, n, 3)));
  }
  for (int n = 10; n <= 20; ++n) {
    const auto one = cli::payload_json(cli::parallel_search(cli::Method::DegreeSequence, n, 1));
    REQUIRE(one == cli::payload_json(cli::parallel_search(cli::Method::DegreeSequence, n, 8)));
  }
}

TEST_CASE("identical configurations append identical records") {
  Scratch s;
  REQUIRE(call({"dsearch", "--n", "12"}).code == 0);
  REQUIRE(call({"dsearch", "--n", "12", "--jobs", "4"}).code == 0);
  const auto recs = s.records();
  REQUIRE(recs.size() == 2);
  CHECK(recs[0]["payload"].dump() == recs[1]["payload"].dump());
  CHECK(recs[0]["config_hash"] == recs[1]["config_hash"]);
  CHECK(recs[0]["version"] == cli::kVersion);
  REQUIRE(call({"dsearch", "--n", "12", "--tol", "1e-9"}).code == 0);
  CHECK(s.records()[2]["config_hash"] != recs[0]["config_hash"]);
}

TEST_CASE("report joins both methods") {
  Scratch s;
  const auto empty = call({"report", "--range", "10..20"});
  CHECK(empty.code == 0);
  CHECK(empty.out == "n,brute_abc_min,ds_abc_min,agree,properties,config_hash\n");

  REQUIRE(call({"brute", "--range", "10..13", "--jobs", "2"}).code == 0);
  REQUIRE(call({"dsearch", "--range", "10..12"}).code == 0);
  const auto r = call({"report", "--range", "10..14"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0, agree = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.find(",yes,") != std::string::npos) ++agree;
  }
  CHECK(rows == 4);
  CHECK(agree == 3);
  CHECK(r.err.find("gaps: 14") != std::string::npos);
  CHECK(r.out.find(";") != std::string::npos);
}

TEST_CASE("helpers") {
  CHECK(cli::stable_hash("") == "cbf29ce484222325");
  CHECK(cli::stable_hash("a") == "af63dc4c8601ec8c");
  CHECK(cli::parse_range("10..20") == std::pair{10, 20});
  CHECK_THROWS_AS(cli::parse_range("10..x"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_range("20..10"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_range("7"), std::invalid_argument);
}
