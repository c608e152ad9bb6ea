// Copyright 2026 The Authors.
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

// Drives the fastgas executable end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "fastgas/serialize.hpp"
#include "test_util.hpp"

using namespace fastgas;

namespace {

struct Run {
  int code = -1;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli {
 public:
  Cli() : dir_("cli") {}

  Run operator()(const std::string& args, const std::string& env = "") const {
    const auto err = dir_ / "stderr.txt";
    const std::string cmd = env + " " + FASTGAS_CLI_PATH + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
  }
  std::string out() const { return slurp(dir_ / "stdout.txt"); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  testing::TempDir dir_;
};

}  // namespace

TEST_CASE("exit codes") {
  Cli cli;
  Run r = cli("build-graph --input /no/such/file.bin");
  CHECK(r.code == 1);
  CHECK(r.err.find("/no/such/file.bin") != std::string::npos);

  REQUIRE(cli("generate --n 60 --dim 8 --clusters 3 --output " + cli.path("pool.bin")).code == 0);
  CHECK(cli("build-graph --input " + cli.path("pool.bin") + " --k 0").code == 2);
  CHECK(cli("select --input " + cli.path("pool.bin") + " --K 2 --budget 61").code == 2);
  CHECK(cli("select --input " + cli.path("pool.bin") + " --budget 5").code == 2);  // fastgas needs K
  CHECK(cli("select --input " + cli.path("pool.bin") + " --K 2 --budget 5 --method nope").code == 2);
  CHECK(cli("select --bogus-flag").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("select --help").code == 0);
  std::ofstream(cli.path("broken.jsonl")) << "{\"id\":\"a\",\"vector\":[1]}\n{\"id\":\"b\"}\n";
  r = cli("build-graph --format jsonl --input " + cli.path("broken.jsonl"));
  CHECK(r.code == 1);
  CHECK(r.err.find("record 2") != std::string::npos);
  CHECK(cli("verify --max-n 30").code == 2);
}

TEST_CASE("build-graph output") {
  Cli cli;
  REQUIRE(cli("generate --n 300 --dim 32 --format jsonl --output " + cli.path("pool.jsonl")).code == 0);
  const Run r = cli("build-graph --format jsonl --k 10 --input " + cli.path("pool.jsonl"));
  REQUIRE(r.code == 0);
  CHECK(r.err.find("N=300") != std::string::npos);
  CHECK(r.err.find("build_ms=") != std::string::npos);
  const auto g = graph_from_json(Json::parse(cli.out()));
  CHECK(g.num_vertices() == 300);
  for (VertexId v = 0; v < 300; ++v) CHECK(g.degree(v) >= 10);
}

TEST_CASE("every subcommand is byte-identical across runs and thread counts") {
  Cli cli;
  REQUIRE(cli("generate --n 500 --dim 24 --clusters 5 --seed 4 --output " + cli.path("pool.bin")).code == 0);
  REQUIRE(cli("generate --n 20 --dim 24 --clusters 5 --seed 5 --output " + cli.path("tests.bin")).code == 0);
  REQUIRE(cli("build-graph --input " + cli.path("pool.bin") + " --output " + cli.path("graph.json")).code == 0);
  REQUIRE(cli("select --input " + cli.path("pool.bin") + " --K 5 --budget 20 --no-timings --output " +
              cli.path("sel.json")).code == 0);

  const std::string pool = " --input " + cli.path("pool.bin");
  const std::vector<std::string> commands{
      "build-graph" + pool,
      "partition" + pool + " --K 7 --seed 3 --no-timings",
      "partition --graph " + cli.path("graph.json") + " --K 7 --seed 3 --no-timings",
      "select" + pool + " --K 6 --budget 18 --seed 0 --no-timings",
      "select" + pool + " --method random --budget 18 --seed 2 --no-timings",
      "select" + pool + " --method top-degree --budget 18 --no-timings",
      "select" + pool + " --method pagerank --budget 18 --no-timings",
      "select" + pool + " --method subcluster --K 3 --budget 18 --seed 1 --no-timings",
      "retrieve" + pool + " --selection " + cli.path("sel.json") + " --tests " + cli.path("tests.bin") + " --m 4",
      "retrieve" + pool + " --selection " + cli.path("sel.json") + " --mode random --num-tests 5 --m 4",
      "bench --sizes 200,400 --dim 16 --budget 20 --repeats 1 --no-timings",
      "verify --instances 50 --no-timings",
  };
  for (const auto& c : commands) {
    CAPTURE(c);
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "8", "8"}) {
      const Run r = cli(c + " --threads " + threads);
      CHECK(r.code == 0);
      outputs.push_back(cli.out());
    }
    CHECK(!outputs[0].empty());
    for (const auto& o : outputs) CHECK(o == outputs[0]);
  }
}

TEST_CASE("presets, config files and environment seed") {
  Cli cli;
  REQUIRE(cli("generate --n 400 --dim 16 --output " + cli.path("pool.bin")).code == 0);
  const std::string sel = "select --no-timings --input " + cli.path("pool.bin");
  auto doc = [&] { return Json::parse(cli.out()); };

  REQUIRE(cli(sel + " --preset paper-18").code == 0);
  CHECK(doc()["budget"] == 18);
  CHECK(doc()["K"] == 6);
  REQUIRE(cli(sel + " --preset paper-100").code == 0);
  CHECK(doc()["budget"] == 100);
  CHECK(doc()["K"] == 10);
  CHECK(cli(sel + " --preset paper-7").code == 2);

  std::ofstream(cli.path("cfg.json")) << R"({"budget": 5, "K": 5, "seed": 11})";
  REQUIRE(cli(sel + " --config " + cli.path("cfg.json")).code == 0);
  CHECK(doc()["budget"] == 5);
  CHECK(doc()["seed"] == 11);
  REQUIRE(cli(sel + " --config " + cli.path("cfg.json") + " --budget 7").code == 0);
  CHECK(doc()["budget"] == 7);
  CHECK(doc()["K"] == 5);
  REQUIRE(cli(sel + " --budget 7 --config " + cli.path("cfg.json")).code == 0);
  CHECK(doc()["budget"] == 7);  // flags win regardless of position
  REQUIRE(cli(sel + " --preset paper-18 --config " + cli.path("cfg.json")).code == 0);
  CHECK(doc()["budget"] == 5);  // config beats preset
  std::ofstream(cli.path("bad.json")) << R"({"budgett": 5})";
  CHECK(cli(sel + " --config " + cli.path("bad.json")).code == 2);

  REQUIRE(cli(sel + " --K 2 --budget 3", "FASTGAS_SEED=77").code == 0);
  CHECK(doc()["seed"] == 77);
  REQUIRE(cli(sel + " --K 2 --budget 3 --seed 5", "FASTGAS_SEED=77").code == 0);
  CHECK(doc()["seed"] == 5);
}

TEST_CASE("select writes timings and ids; bench writes CSV") {
  Cli cli;
  REQUIRE(cli("generate --n 300 --dim 16 --output " + cli.path("pool.bin")).code == 0);
  REQUIRE(cli("select --input " + cli.path("pool.bin") + " --K 3 --budget 9").code == 0);
  const Json d = Json::parse(cli.out());
  for (const char* stage : {"embed_load", "knn", "coarsen", "init_bisect", "refine", "partition_total", "select", "total"}) {
    CHECK(d["timings_ms"].contains(stage));
  }
  CHECK(d["selected_ids"][0].get<std::string>().rfind("syn-", 0) == 0);

  REQUIRE(cli("bench --sizes 100,200 --dim 8 --budget 10 --repeats 1 --output " + cli.path("bench.json")).code == 0);
  const std::string csv = slurp(cli.path("bench.csv"));
  CHECK(csv.rfind("n,edges,", 0) == 0);
  CHECK(Json::parse(slurp(cli.path("bench.json")))["rows"].size() == 2);
}
