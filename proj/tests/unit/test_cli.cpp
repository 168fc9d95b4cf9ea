#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "allrel/cli.hpp"
#include "allrel/csv.hpp"
#include "support/fixtures.hpp"

using namespace allrel;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "allrel");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("allrel_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

}  // namespace

TEST_CASE("gen-xor is byte-identical across runs") {
  TempDir dir;
  const auto a = run({"gen-xor", "--objects", "125", "--attributes", "125", "--seed", "7", "--out", dir.file("a.csv")});
  const auto b = run({"gen-xor", "--objects", "125", "--attributes", "125", "--seed", "7", "--out", dir.file("b.csv"),
                      "--truth-out", dir.file("truth.txt")});
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
  const Dataset data = ingest_csv(dir.file("a.csv"), "class");
  CHECK(data.n_objects() == 125);
  CHECK(data.n_attributes() == 125);
  CHECK(slurp(dir.file("truth.txt")) == "V1\nV2\nV3\nV4\nV5\nV6\nV7\nV8\nV9\nV10\n");
}

TEST_CASE("score prints the confusion counts") {
  TempDir dir;
  spit(dir.file("truth.txt"), "V1\nV2\n");
  const auto perfect = run({"score", "--selection", dir.file("truth.txt"), "--truth", dir.file("truth.txt")});
  CHECK(perfect.code == kExitOk);
  CHECK(perfect.out.find("TP=2 FP=0 FN=0") != std::string::npos);
  CHECK(perfect.out.find("F=1.0") != std::string::npos);
  spit(dir.file("sel.txt"), "V1\nV3\n");
  const auto half = run({"score", "--selection", dir.file("sel.txt"), "--truth", dir.file("truth.txt")});
  CHECK(half.out.find("F=0.5") != std::string::npos);
  spit(dir.file("universe.txt"), "V1\nV2\n");
  const auto outside = run({"score", "--selection", dir.file("sel.txt"), "--truth", dir.file("truth.txt"),
                            "--universe", dir.file("universe.txt")});
  CHECK(outside.code == kExitFailure);
}

TEST_CASE("select confirms a decision copy and documents the run") {
  TempDir dir;
  std::ofstream csv(dir.file("copy.csv"));
  write_dataset(csv, fixtures::decision_copy(150, 8, 3));
  csv.close();
  const auto result = run({"select", "--data", dir.file("copy.csv"), "--algorithm", "boruta", "--trees", "200",
                           "--seed", "5", "--out", dir.file("result.json")});
  REQUIRE(result.code == kExitOk);
  const auto doc = nlohmann::json::parse(slurp(dir.file("result.json")));
  CHECK(doc.at("seed") == 5);
  CHECK(doc.at("version").is_string());
  CHECK(doc.at("config").at("forest").at("numTrees") == 200);
  CHECK(doc.at("classes").size() == 2);
  const auto& copy = doc.at("result").at("attributes").at(0);
  CHECK(copy.at("name") == "copy");
  CHECK(copy.at("status") == "Confirmed");
  CHECK(fs::exists(dir.file("result.json.timing.json")));

  const auto again = run({"select", "--data", dir.file("copy.csv"), "--algorithm", "boruta", "--trees", "200",
                          "--seed", "5", "--out", dir.file("again.json")});
  REQUIRE(again.code == kExitOk);
  CHECK(slurp(dir.file("result.json")) == slurp(dir.file("again.json")));

  spit(dir.file("truth.txt"), "copy\n");
  const auto score = run({"score", "--selection", dir.file("result.json"), "--truth", dir.file("truth.txt")});
  CHECK(score.out.find("TP=1") != std::string::npos);
}

TEST_CASE("usage errors exit with status 2 and write nothing") {
  TempDir dir;
  std::ofstream csv(dir.file("d.csv"));
  write_dataset(csv, fixtures::decision_copy(40, 2, 1));
  csv.close();
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"gen-xor", "--objects", "10"}).code == kExitUsage);
  CHECK(run({"gen-xor", "--objects", "125", "--attributes", "125", "--bogus"}).code == kExitUsage);
  CHECK(run({"select", "--data", dir.file("d.csv"), "--algorithm", "lasso"}).code == kExitUsage);
  CHECK(run({"select", "--data", dir.file("d.csv"), "--algorithm", "ace", "--max-runs", "20"}).code == kExitUsage);
  CHECK(run({"select", "--data", dir.file("d.csv"), "--replicates", "5"}).code == kExitUsage);
  const auto bad = run({"select", "--data", dir.file("d.csv"), "--alpha", "2", "--out", dir.file("r.json")});
  CHECK(bad.code == kExitUsage);
  CHECK_FALSE(fs::exists(dir.file("r.json")));
  CHECK(run({"bench-grid", "--cells", "100x100"}).code != kExitOk);
}

TEST_CASE("ingestion failures exit with status 1") {
  TempDir dir;
  spit(dir.file("missing.csv"), "a,b,class\n1,,x\n2,3,y\n");
  const auto r = run({"select", "--data", dir.file("missing.csv"), "--out", dir.file("r.json")});
  CHECK(r.code == kExitFailure);
  CHECK(r.err.find("row") != std::string::npos);
  CHECK_FALSE(fs::exists(dir.file("r.json")));
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("select") != std::string::npos);
}
