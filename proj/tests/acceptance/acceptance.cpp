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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Thresholds are fixed here, not tuned.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fastgas/embedding.hpp"
#include "fastgas/partitioner.hpp"
#include "fastgas/pipeline.hpp"
#include "fastgas/retrieval.hpp"
#include "fastgas/selector.hpp"
#include "fastgas/serialize.hpp"
#include "fastgas/timer.hpp"

namespace fs = std::filesystem;
using namespace fastgas;

namespace {

// Pinned thresholds.
constexpr std::size_t kVerifyInstances = 500;
constexpr double kVerifySeconds = 60.0;
constexpr std::size_t kPartitionGraphs = 100;
constexpr double kPartitionSeconds = 300.0;
constexpr double kPlantedAgreement = 0.90;
constexpr double kPlantedCutFactor = 2.0;
constexpr double kPipelineSeconds = 10.0;
constexpr double kSelectSeconds = 1.0;
constexpr double kDoublingRatio = 2.6;
constexpr std::size_t kRetrievalFixtures = 1000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int digits = 3) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << x;
  return s.str();
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FASTGAS_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Best agreement over all relabelings (permutation enumeration, k <= 8).
double best_agreement(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, std::size_t k) {
  std::vector<std::vector<std::size_t>> confusion(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < a.size(); ++i) ++confusion[a[i]][b[i]];
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hit = 0;
    for (std::size_t c = 0; c < k; ++c) hit += confusion[c][perm[c]];
    best = std::max(best, hit);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return double(best) / double(a.size());
}

struct Shared {
  fs::path dir;
  VerifyReport verify;
  bool verify_ran = false;
};

Outcome coverage_bound(Shared& s) {
  VerifyConfig config;
  config.instances = kVerifyInstances;
  config.max_n = 12;
  config.max_budget = 4;
  config.seed = 2026;
  s.verify = run_verify(config);
  s.verify_ran = true;
  write_json_file(s.dir / "verify_counterexamples.json", s.verify.counterexamples);
  const double secs = s.verify.elapsed_ms / 1000.0;
  const bool pass = s.verify.instances >= kVerifyInstances && s.verify.bound_violations == 0 &&
                    secs < kVerifySeconds;
  return {pass, std::to_string(s.verify.instances - s.verify.bound_violations) + "/" +
                    std::to_string(s.verify.instances) + " instances meet the (1-1/e) bound; min ratio " +
                    fmt(s.verify.min_ratio) + "; exact optimum on " + fmt(100.0 * s.verify.exact_rate(), 1) +
                    "% (" + std::to_string(s.verify.counterexamples.size()) +
                    " counterexamples archived to verify_counterexamples.json); " + fmt(secs) + " s < " +
                    fmt(kVerifySeconds, 0) + " s"};
}

Outcome argmax(Shared& s) {
  if (!s.verify_ran) return {false, "verify suite did not run"};
  return {s.verify.argmax_violations == 0 && s.verify.greedy_picks > 0,
          std::to_string(s.verify.argmax_violations) + " violations over " +
              std::to_string(s.verify.greedy_picks) + " greedy picks"};
}

Outcome partitioner_invariants(Shared&) {
  const std::size_t ks[] = {2, 3, 6, 9, 10, 25};
  std::mt19937_64 gen(7);
  Stopwatch sw;
  std::size_t runs = 0, failures = 0, levels = 0;
  std::string first_failure;
  auto fail = [&](const std::string& what) {
    if (failures++ == 0) first_failure = what;
  };
  for (std::size_t t = 0; t < kPartitionGraphs; ++t) {
    const std::size_t n = 50 + gen() % 1951;
    const std::size_t k = gen() % 2 ? 10 : 5;
    const std::size_t clusters = 1 + gen() % 12;
    const auto pool = generate_synthetic(n, 32, clusters, 0.1 + 0.4 * double(gen() % 100) / 100.0, gen());
    const auto g = build_knn_graph(pool.matrix, k);
    for (std::size_t parts : ks) {
      PartitionOptions opts;
      opts.bisect.collect_trace = true;
      const auto r = partition_kway(g, parts, gen(), opts);
      ++runs;
      const std::string tag = "graph " + std::to_string(t) + " N=" + std::to_string(n) + " K=" + std::to_string(parts);
      // Disjoint and covering.
      std::vector<std::size_t> seen(n, 0);
      const auto members = r.partition.members();
      if (members.size() != parts) fail(tag + ": wrong part count");
      for (const auto& m : members)
        for (auto v : m) ++seen[v];
      if (std::any_of(seen.begin(), seen.end(), [](std::size_t c) { return c != 1; })) fail(tag + ": not a partition");
      const double cap = std::ceil(double(n) / double(parts)) * 1.03;
      for (std::size_t sz : r.partition.part_sizes()) {
        if (sz < 1 || double(sz) > cap) fail(tag + ": part size " + std::to_string(sz) + " vs cap " + fmt(cap));
      }
      for (const auto& tr : r.traces) {
        Weight prev = tr.rebalanced_cut;
        for (Weight c : tr.coarsest_pass_cuts) {
          if (c > prev) fail(tag + ": coarsest refinement raised the cut");
          prev = c;
        }
        for (const auto& lt : tr.levels) {
          ++levels;
          if (lt.fine_vertex_weight != lt.coarse_vertex_weight) fail(tag + ": vertex weight not conserved");
          if (lt.coarse_edge_weight > lt.fine_edge_weight) fail(tag + ": edge weight grew");
          if (lt.projected_cut != lt.coarse_cut) fail(tag + ": projection changed the cut");
          Weight p = lt.projected_cut;
          for (Weight c : lt.pass_cuts) {
            if (c > p) fail(tag + ": refinement raised the cut");
            p = c;
          }
          if (lt.refined_cut > lt.projected_cut) fail(tag + ": refined cut above projected cut");
        }
      }
    }
  }
  const double secs = sw.elapsed_ms() / 1000.0;
  const bool pass = failures == 0 && secs < kPartitionSeconds;
  std::string detail = std::to_string(runs) + " partitions of " + std::to_string(kPartitionGraphs) +
                       " graphs, " + std::to_string(levels) + " uncoarsening levels checked, " +
                       std::to_string(failures) + " violations; " + fmt(secs, 1) + " s < " +
                       fmt(kPartitionSeconds, 0) + " s";
  if (failures) detail += "; first: " + first_failure;
  return {pass, detail};
}

Outcome planted_recovery(Shared&) {
  const auto pool = generate_synthetic(600, 768, 6, 0.1, 600);
  const auto g = build_knn_graph(pool.matrix, 10);
  const auto r = partition_kway(g, 6, 0);
  std::vector<std::size_t> assign(r.partition.assignment().begin(), r.partition.assignment().end());
  const double agreement = best_agreement(pool.labels, assign, 6);
  Weight planted_cut = 0;
  for (const auto& e : g.edges()) planted_cut += pool.labels[e.u] != pool.labels[e.v] ? e.weight : 0;
  const auto sizes = r.partition.part_sizes();
  const bool pass = agreement >= kPlantedAgreement &&
                    double(r.cut) <= kPlantedCutFactor * double(planted_cut);
  return {pass, "agreement " + fmt(100.0 * agreement, 2) + "% >= 90%; cut " + std::to_string(r.cut) +
                    " <= 2 x planted " + std::to_string(planted_cut) + "; part sizes " +
                    std::to_string(*std::min_element(sizes.begin(), sizes.end())) + ".." +
                    std::to_string(*std::max_element(sizes.begin(), sizes.end()))};
}

Outcome pipeline_time(Shared& s) {
  const auto pool = generate_synthetic(3000, 768, 10, 0.1, 3000);
  const fs::path bin = s.dir / "pool3000.bin";
  save_embeddings(pool.matrix, bin, EmbeddingFormat::kBinary);
  const fs::path out = s.dir / "select3000.json";
  const auto start = std::chrono::steady_clock::now();
  const int code = run_cli("select --input " + bin.string() + " --k 10 --K 10 --budget 100 --seed 0 --output " +
                           out.string());
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (code != 0) return {false, "CLI exited with " + std::to_string(code)};
  const Json doc = Json::parse(slurp(out));
  const double select_s = doc["timings_ms"]["select"].get<double>() / 1000.0;
  const bool pass = wall <= kPipelineSeconds && select_s <= kSelectSeconds && doc["selected"].size() == 100;
  return {pass, "load+kNN+partition+select wall-clock " + fmt(wall) + " s <= 10 s (embed_load " +
                    fmt(doc["timings_ms"]["embed_load"].get<double>()) + " ms, knn " +
                    fmt(doc["timings_ms"]["knn"].get<double>()) + " ms, partition " +
                    fmt(doc["timings_ms"]["partition_total"].get<double>()) + " ms); select " +
                    fmt(select_s * 1000.0) + " ms <= 1 s"};
}

Outcome divide_and_conquer(Shared&) {
  const auto pool = generate_synthetic(3000, 768, 10, 0.1, 3000);
  const auto g = build_knn_graph(pool.matrix, 10);
  std::vector<double> k1, k10;
  FastgasOptions opts;
  opts.threads = 1;
  for (int r = 0; r < 5; ++r) {
    k1.push_back(fastgas_select(g, 1, 100, 0, opts).timings.at("select"));
    k10.push_back(fastgas_select(g, 10, 100, 0, opts).timings.at("select"));
  }
  const double m1 = median(k1), m10 = median(k10);
  return {m10 < m1, "median select stage K=10 " + fmt(m10, 4) + " ms < K=1 " + fmt(m1, 4) +
                        " ms (speedup " + fmt(m1 / m10, 2) + "x)"};
}

Outcome scaling(Shared& s) {
  BenchConfig config;
  config.sizes = {1000, 2000, 4000, 8000};
  config.k = 10;
  config.num_parts = 10;
  config.budget = 100;
  config.repeats = 5;
  config.threads = 1;
  const auto report = run_bench(config);
  write_text_file(s.dir / "bench_scaling.csv", bench_to_csv(report));
  std::string ratios;
  for (double r : report.doubling_ratios) ratios += (ratios.empty() ? "" : ", ") + fmt(r, 2);
  std::string totals;
  for (const auto& row : report.rows) totals += (totals.empty() ? "" : ", ") + fmt(row.fastgas.at("fastgas_total"), 1);
  std::string with_knn;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& a = report.rows[i - 1];
    const auto& b = report.rows[i];
    const double r = (b.knn_ms + b.fastgas.at("fastgas_total")) / (a.knn_ms + a.fastgas.at("fastgas_total"));
    with_knn += (with_knn.empty() ? "" : ", ") + fmt(r, 2);
  }
  return {report.max_doubling_ratio <= kDoublingRatio && report.doubling_ratios.size() == 3,
          "partition+select ms per size [" + totals + "]; doubling ratios [" + ratios +
              "] <= 2.6 (informational, with exact kNN graph build: [" + with_knn + "])"};
}

Outcome determinism(Shared& s) {
  const fs::path d = s.dir / "det";
  fs::create_directories(d);
  const std::string pool = (d / "pool.bin").string();
  const std::string tests = (d / "tests.jsonl").string();
  std::vector<std::pair<std::string, std::string>> stages{
      {"generate", "generate --n 3000 --dim 768 --seed 5 --output " + pool},
      {"generate-tests", "generate --n 50 --dim 768 --seed 6 --format jsonl --output " + tests},
      {"build-graph", "build-graph --input " + pool + " --k 10"},
      {"partition", "partition --input " + pool + " --K 10 --seed 1 --no-timings"},
      {"select-fastgas", "select --input " + pool + " --K 10 --budget 100 --seed 1 --no-timings"},
      {"select-random", "select --input " + pool + " --method random --budget 100 --seed 1 --no-timings"},
      {"select-top-degree", "select --input " + pool + " --method top-degree --budget 100 --no-timings"},
      {"select-pagerank", "select --input " + pool + " --method pagerank --budget 100 --no-timings"},
      {"select-subcluster", "select --input " + pool + " --method subcluster --K 10 --budget 100 --seed 1 --no-timings"},
      {"retrieve-similar", "retrieve --input " + pool + " --selection SEL --tests " + tests +
                               " --tests-format jsonl --m 4"},
      {"retrieve-random", "retrieve --input " + pool + " --selection SEL --mode random --num-tests 50 --m 4 --seed 2"},
      {"bench", "bench --sizes 500,1000 --dim 64 --repeats 1 --no-timings"},
      {"verify", "verify --instances 200 --seed 3 --no-timings"},
  };
  std::string failed;
  std::size_t compared = 0;
  std::string reference_selection;
  for (auto [name, args] : stages) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "8", "8"}) {
      const fs::path out = d / (name + "_" + threads + "_" + std::to_string(outputs.size()) + ".out");
      std::string a = args;
      const auto at = a.find("SEL");
      if (at != std::string::npos) a.replace(at, 3, reference_selection);
      const bool writes_itself = name.rfind("generate", 0) == 0;
      const std::string target = writes_itself ? "" : " --output " + out.string();
      if (run_cli(a + " --threads " + threads + target) != 0) {
        failed += " " + name + "(exit)";
        break;
      }
      outputs.push_back(writes_itself ? slurp(name == "generate" ? pool : tests) : slurp(out));
      if (name == "select-fastgas" && outputs.size() == 1) reference_selection = out.string();
    }
    ++compared;
    if (outputs.size() != 4 || outputs[0].empty() ||
        std::any_of(outputs.begin(), outputs.end(), [&](const std::string& o) { return o != outputs[0]; })) {
      failed += " " + name;
    }
  }
  return {failed.empty(), std::to_string(compared) + " stages run twice at 1 and 8 threads" +
                              (failed.empty() ? ", all byte-identical" : "; differing:" + failed)};
}

Outcome retrieval_oracle(Shared&) {
  std::mt19937_64 gen(9);
  std::normal_distribution<float> nd;
  std::size_t discrepancies = 0, lists = 0;
  for (std::size_t f = 0; f < kRetrievalFixtures; ++f) {
    const std::size_t n = 2 + gen() % 200, d = 1 + gen() % 64, t = 1 + gen() % 10;
    auto make = [&](std::size_t rows, const char* tag) {
      std::vector<std::string> ids;
      std::vector<float> v;
      for (std::size_t i = 0; i < rows; ++i) {
        ids.push_back(tag + std::to_string(i));
        for (std::size_t j = 0; j < d; ++j) v.push_back(nd(gen));
      }
      return EmbeddingMatrix(ids, v, d);
    };
    const auto pool = make(n, "p");
    const auto tests = make(t, "t");
    std::vector<std::size_t> sel(n);
    std::iota(sel.begin(), sel.end(), 0);
    std::shuffle(sel.begin(), sel.end(), gen);
    sel.resize(1 + gen() % n);
    const std::size_t m = 1 + gen() % 10;
    const auto plan = retrieve_similar(pool, sel, tests, m);
    for (std::size_t q = 0; q < t; ++q) {
      ++lists;
      std::vector<std::pair<double, std::size_t>> ranked;
      for (std::size_t s : sel) {
        double dot = 0, a = 0, b = 0;
        for (std::size_t j = 0; j < d; ++j) {
          dot += double(pool.row(s)[j]) * tests.row(q)[j];
          a += double(pool.row(s)[j]) * pool.row(s)[j];
          b += double(tests.row(q)[j]) * tests.row(q)[j];
        }
        ranked.emplace_back(-dot / std::sqrt(a * b), s);
      }
      std::sort(ranked.begin(), ranked.end());
      const std::size_t take = std::min(m, sel.size());
      std::vector<std::size_t> expected;
      for (std::size_t i = take; i > 0; --i) expected.push_back(ranked[i - 1].second);  // ascending
      const auto& got = plan.per_test[q];
      if (std::set<std::size_t>(got.begin(), got.end()) !=
              std::set<std::size_t>(expected.begin(), expected.end()) ||
          got.size() != take) {
        ++discrepancies;
      }
    }
  }
  return {discrepancies == 0, std::to_string(kRetrievalFixtures) + " fixtures, " + std::to_string(lists) +
                                  " prompt lists, " + std::to_string(discrepancies) + " discrepancies"};
}

Outcome quotas(Shared&) {
  const auto pool = generate_synthetic(3000, 768, 10, 0.1, 3000);
  const auto g = build_knn_graph(pool.matrix, 10);
  const auto r18 = fastgas_select(g, 6, 18, 0);
  const auto r10 = fastgas_select(g, 3, 10, 0);
  std::vector<std::size_t> s18, s10;
  for (const auto& p : r18.per_part) s18.push_back(p.size());
  for (const auto& p : r10.per_part) s10.push_back(p.size());
  std::vector<std::size_t> sorted10 = s10;
  std::sort(sorted10.rbegin(), sorted10.rend());
  const bool pass = s18 == std::vector<std::size_t>(6, 3) && sorted10 == std::vector<std::size_t>{4, 3, 3} &&
                    r18.selected.size() == 18 && r10.selected.size() == 10;
  auto show = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return "(" + s + ")";
  };
  return {pass, "M=18,K=6 per-part " + show(s18) + "; M=10,K=3 per-part " + show(s10)};
}

}  // namespace

int main() {
  Shared shared;
  shared.dir = fs::current_path() / "acceptance_artifacts";
  fs::create_directories(shared.dir);

  const std::vector<std::pair<std::string, std::function<Outcome(Shared&)>>> criteria{
      {"1 coverage bound", coverage_bound},
      {"2 per-step argmax", argmax},
      {"3 partitioner invariants", partitioner_invariants},
      {"4 planted recovery", planted_recovery},
      {"5 pipeline time", pipeline_time},
      {"6 divide-and-conquer", divide_and_conquer},
      {"7 scaling", scaling},
      {"8 determinism", determinism},
      {"9 retrieval oracle", retrieval_oracle},
      {"10 quota arithmetic", quotas},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check(shared);
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
