// Copyright 2026 The finitepop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "finitepop/cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
namespace cli = finitepop::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "finitepop");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("finitepop_cli_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& contents) const {
    const auto p = path_ / name;
    std::ofstream(p) << contents;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("tw subcommand") {
  auto q = run({"tw", "--quantile", "0.95"});
  CHECK(q.code == 0);
  CHECK(std::abs(std::stod(q.out) - 0.9765) <= 0.01);
  auto c = run({"tw", "--cdf", "-1.2680"});
  CHECK(c.code == 0);
  CHECK(std::abs(std::stod(c.out) - 0.5) <= 0.002);
  auto p = run({"tw", "--pvalue", "0.9765"});
  CHECK(std::abs(std::stod(p.out) - 0.05) <= 0.002);
  CHECK(run({"tw", "--quantile", "1.5"}).code == cli::kExitInput);
  CHECK(run({"tw"}).code == cli::kExitInput);
  CHECK(run({"tw", "--cdf", "0", "--pvalue", "0"}).code == cli::kExitInput);
  CHECK(run({"tw", "--cdf", "abc"}).code == cli::kExitInput);
}

TEST_CASE("edge subcommand") {
  auto a = run({"edge", "--identity", "--c", "1"});
  REQUIRE(a.code == 0);
  const auto ja = json::parse(a.out);
  CHECK(ja["edge"]["e_plus"].get<double>() == doctest::Approx(4.0));
  CHECK(ja["manifest"]["command"] == "edge");
  auto b = run({"edge", "--identity", "--c", "0.25"});
  CHECK(json::parse(b.out)["edge"]["e_plus"].get<double>() == doctest::Approx(2.25));

  TempDir dir;
  const auto good = dir.file("t.txt", "# variances\n1\n2\n");
  auto g = run({"edge", "--tvals", good, "--c", "1"});
  REQUIRE(g.code == 0);
  CHECK(json::parse(g.out)["edge"]["e_plus"].get<double>() == doctest::Approx(6.5329520964121799));
  CHECK(json::parse(g.out)["manifest"]["input_checksum"].get<std::string>().rfind("fnv1a64:", 0) == 0);

  CHECK(run({"edge", "--tvals", dir.file("z.txt", "1 0 2\n"), "--c", "1"}).code == cli::kExitInput);
  CHECK(run({"edge", "--tvals", dir.file("bad.txt", "1 x\n"), "--c", "1"}).code == cli::kExitInput);
  CHECK(run({"edge", "--tvals", good, "--identity", "--c", "1"}).code == cli::kExitInput);
  CHECK(run({"edge", "--c", "1"}).code == cli::kExitInput);
  CHECK(run({"edge", "--identity", "--c", "-1"}).code == cli::kExitInput);

  const auto out = dir.path("edge.json");
  CHECK(run({"edge", "--identity", "--c", "4", "--out", out}).code == 0);
  CHECK(json::parse(slurp(out))["edge"]["e_plus"].get<double>() == doctest::Approx(9.0));
}

TEST_CASE("pa subcommand error paths") {
  TempDir dir;
  const auto malformed = dir.file("bad.csv", "1,2,3\n4,5\n");
  auto m = run({"pa", malformed});
  CHECK(m.code == cli::kExitInput);
  CHECK(m.err.find("line 2") != std::string::npos);

  const auto degenerate = dir.file("deg.csv", "1,2,3,4\n5,5,5,5\n0,1,0,2\n");
  auto d = run({"pa", degenerate, "--kmax", "2"});
  CHECK(d.code == cli::kExitDegenerate);
  CHECK(d.err.find("rows (1-based): 2") != std::string::npos);

  const auto ok = dir.file("ok.csv", "1,2,3,4\n2,1,4,3\n0,1,0,2\n");
  CHECK(run({"pa", ok, "--method", "tw", "--variant", "raw"}).code == cli::kExitInput);
  CHECK(run({"pa", ok, "--method", "mc", "--perms", "5"}).code == cli::kExitInput);
  CHECK(run({"pa", ok, "--kmax", "9"}).code == cli::kExitInput);
  CHECK(run({"pa", ok, "--method", "bogus"}).code == cli::kExitInput);
  CHECK(run({"pa", ok, "--seed", "0xZZ"}).code == cli::kExitInput);
  CHECK(run({"pa", dir.path("missing.csv")}).code == cli::kExitInput);
}

TEST_CASE("pa subcommand output") {
  TempDir dir;
  std::string text = "v1,v2,v3,v4,v5,v6\n";
  // rows are observations here; --transpose makes them columns
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 6; ++j) {
      text += std::to_string(std::sin(1.7 * i + 0.3 * j * j) + (j < 3 ? 4.0 * std::cos(0.9 * i) : 0.0));
      text += j < 5 ? "," : "\n";
    }
  }
  const auto in = dir.file("obs.csv", text);
  const auto scree = dir.path("scree.csv");
  auto r = run({"pa", in, "--transpose", "--method", "mc", "--perms", "50", "--seed", "0x2a",
                "--kmax", "3", "--scree", scree});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["p"] == 6);
  CHECK(j["result"]["n"] == 40);
  CHECK(j["result"]["seed"] == "42");
  CHECK(j["manifest"]["seed"] == "42");
  CHECK(j["result"]["method"] == "monte_carlo");
  CHECK(j["result"]["num_permutations"] == 50);
  const auto s = slurp(scree);
  CHECK(s.rfind("factor,observed,threshold\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
  auto again = run({"pa", in, "--transpose", "--method", "mc", "--perms", "50", "--seed", "42",
                    "--kmax", "3"});
  CHECK(json::parse(again.out)["result"] == j["result"]);
}

TEST_CASE("simulate-null subcommand") {
  TempDir dir;
  const auto a = dir.path("a.csv"), b = dir.path("b.csv");
  auto r1 = run({"simulate-null", "--p", "8", "--n", "12", "--perms", "100", "--seed", "7", "--csv", a});
  auto r2 = run({"simulate-null", "--p", "8", "--n", "12", "--perms", "100", "--seed", "7", "--csv", b});
  REQUIRE(r1.code == 0);
  REQUIRE(r2.code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).rfind("percentile,empirical,tw_law\n", 0) == 0);
  const auto j = json::parse(r1.out);
  REQUIRE(j["table"]["rows"].size() == 3);
  for (const auto& row : j["table"]["rows"]) CHECK(std::isfinite(row["empirical"].get<double>()));
  CHECK(run({"simulate-null", "--p", "8", "--n", "12", "--perms", "50"}).code == cli::kExitInput);
  CHECK(run({"simulate-null", "--p", "8", "--n", "12", "--percentiles", "0.5,1.2"}).code == cli::kExitInput);
  CHECK(run({"simulate-null", "--n", "12"}).code == cli::kExitInput);
}

TEST_CASE("spectrum subcommand") {
  TempDir dir;
  // Orthogonal rows with equal norms: every eigenvalue is the same.
  const auto orth = dir.file("orth.csv", "1,1,1,1\n1,-1,1,-1\n1,1,-1,-1\n");
  auto r = run({"spectrum", orth});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "index,eigenvalue");
  int count = 0;
  while (std::getline(lines, line)) {
    const double v = std::stod(line.substr(line.find(',') + 1));
    CHECK(v == doctest::Approx(1.0));
    ++count;
  }
  CHECK(count == 3);

  // Monotone copies of one row: Spearman's matrix is all ones.
  const auto mono = dir.file("mono.csv", "1,5,2,8,3\n2,10,4,16,6\n-1,-5,-2,-8,-3.5\n0.1,9,0.2,100,1\n");
  const auto ev = dir.path("ev.csv");
  auto s = run({"spectrum", mono, "--matrix", "spearman", "--out", ev});
  REQUIRE(s.code == 0);
  // rows 1, 2 and 4 are increasing transforms of each other; row 3 reverses them
  const std::string e = slurp(ev);
  const auto first = e.find('\n') + 1;
  const double top = std::stod(e.substr(e.find(',', first) + 1));
  CHECK(top == doctest::Approx(4.0));
  const auto manifest = json::parse(s.out);
  CHECK(manifest["manifest"]["command"] == "spectrum");

  const auto mf = dir.path("m.json"), dens = dir.path("d.csv");
  auto o = run({"spectrum", orth, "--density-overlay", "--grid", "200", "--manifest", mf, "--density", dens});
  REQUIRE(o.code == 0);
  const auto jm = json::parse(slurp(mf));
  CHECK(jm["spectrum"].contains("ks_distance"));
  CHECK(slurp(dens).rfind("x,density\n", 0) == 0);

  CHECK(run({"spectrum", dir.file("c.csv", "1,2\n3,3\n"), "--matrix", "spatial-sign"}).code ==
        cli::kExitDegenerate);
  CHECK(run({"spectrum", orth, "--matrix", "nope"}).code == cli::kExitInput);
}

TEST_CASE("top-level usage") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == cli::kExitInput);
  CHECK(run({"frobnicate"}).code == cli::kExitInput);
}
