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

// fastgas: selective annotation from the command line.
//
// Option precedence: explicit flags > --config JSON file > --preset > defaults.
// Presets and config entries are spliced in front of the user's flags and
// every option keeps its last occurrence.

#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "fastgas/serialize.hpp"

namespace {

using fastgas::cli::RunConfig;

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || value == 0) {
      throw fastgas::Error(fastgas::ErrorCode::kInvalidParameter, "bad size '" + item + "' in --sizes");
    }
    out.push_back(static_cast<std::size_t>(value));
  }
  if (out.empty()) throw fastgas::Error(fastgas::ErrorCode::kInvalidParameter, "--sizes is empty");
  return out;
}

std::vector<std::string> preset_args(const std::string& name) {
  // Pool of 3000, ten nearest neighbors, budgets 18 and 100.
  if (name == "paper-18") return {"--k", "10", "--budget", "18", "--K", "6", "--n", "3000", "--sizes", "3000"};
  if (name == "paper-100") return {"--k", "10", "--budget", "100", "--K", "10", "--n", "3000", "--sizes", "3000"};
  throw fastgas::Error(fastgas::ErrorCode::kInvalidParameter, "unknown preset '" + name + "'");
}

std::vector<std::string> config_args(const std::string& path) {
  const fastgas::Json doc = fastgas::read_json_file(path);
  if (!doc.is_object()) {
    throw fastgas::Error(fastgas::ErrorCode::kFormatError, "config file must hold a JSON object");
  }
  std::vector<std::string> out;
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
      out.insert(out.end(), {flag, joined});
    } else {
      out.insert(out.end(), {flag, value.is_string() ? value.get<std::string>() : value.dump()});
    }
  }
  return out;
}

// Value of --name X or --name=X in args, or empty.
std::string find_flag(const std::vector<std::string>& args, const std::string& name) {
  std::string found;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == name && i + 1 < args.size()) found = args[i + 1];
    if (args[i].rfind(name + "=", 0) == 0) found = args[i].substr(name.size() + 1);
  }
  return found;
}

// Keeps only flag/value pairs the subcommand understands.
std::vector<std::string> filter_for(CLI::App* sub, const std::vector<std::string>& args, bool strict) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const CLI::Option* opt = sub->get_option_no_throw(args[i]);
    const bool takes_value = opt != nullptr && opt->get_type_size() != 0;
    if (opt == nullptr) {
      if (strict) {
        throw fastgas::Error(fastgas::ErrorCode::kInvalidParameter,
                             "config key '" + args[i].substr(2) + "' does not apply to '" +
                                 sub->get_name() + "'");
      }
      if (i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0) ++i;
      continue;
    }
    out.push_back(args[i]);
    if (takes_value && i + 1 < args.size()) out.push_back(args[++i]);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string sizes_text;
  std::string preset_name, config_path;

  CLI::App app{"fastgas: graph-based selective annotation"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  std::map<std::string, std::function<int(const RunConfig&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, auto handler) {
    CLI::App* sub = app.add_subcommand(name, help);
    handlers[name] = handler;
    sub->add_option("--preset", preset_name, "paper-18 or paper-100");
    sub->add_option("--config", config_path, "JSON file of option values");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
    sub->add_option("--output", cfg.output, "output path (stdout when omitted)");
    sub->add_flag("--no-timings", cfg.no_timings, "omit timings for byte-stable output");
    return sub;
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed")->envname("FASTGAS_SEED");
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "embeddings file");
    sub->add_option("--format", cfg.format, "jsonl or binary")->check(CLI::IsMember({"jsonl", "binary"}));
  };

  CLI::App* gen = add("generate", "write a synthetic Gaussian-mixture pool", fastgas::cli::cmd_generate);
  gen->add_option("--n", cfg.n, "instances");
  gen->add_option("--dim", cfg.dim, "dimension");
  gen->add_option("--clusters", cfg.clusters, "mixture components");
  gen->add_option("--spread", cfg.spread, "component standard deviation");
  gen->add_option("--format", cfg.format, "jsonl or binary")->check(CLI::IsMember({"jsonl", "binary"}));
  add_seed(gen);

  CLI::App* bg = add("build-graph", "build the kNN similarity graph", fastgas::cli::cmd_build_graph);
  add_input(bg);
  bg->add_option("--k", cfg.k, "nearest neighbors per vertex");

  CLI::App* part = add("partition", "K-way balanced partition", fastgas::cli::cmd_partition);
  add_input(part);
  part->add_option("--graph", cfg.graph, "graph JSON from build-graph");
  part->add_option("--k", cfg.k, "nearest neighbors per vertex");
  part->add_option("--K", cfg.num_parts, "number of parts");
  part->add_option("--epsilon", cfg.epsilon, "balance tolerance");
  add_seed(part);

  CLI::App* sel = add("select", "select instances to annotate", fastgas::cli::cmd_select);
  add_input(sel);
  sel->add_option("--graph", cfg.graph, "graph JSON from build-graph");
  sel->add_option("--method", cfg.method, "fastgas|random|top-degree|pagerank|subcluster")
      ->check(CLI::IsMember({"fastgas", "random", "top-degree", "pagerank", "subcluster"}));
  sel->add_option("--k", cfg.k, "nearest neighbors per vertex");
  sel->add_option("--K", cfg.num_parts, "parts / top-level clusters");
  sel->add_option("--budget", cfg.budget, "annotation budget M");
  sel->add_option("--epsilon", cfg.epsilon, "balance tolerance");
  sel->add_option("--damping", cfg.damping, "PageRank damping");
  sel->add_option("--tol", cfg.tolerance, "PageRank L1 tolerance");
  sel->add_option("--max-iters", cfg.max_iters, "PageRank / k-means iteration cap");
  add_seed(sel);

  CLI::App* ret = add("retrieve", "build per-test prompt example lists", fastgas::cli::cmd_retrieve);
  add_input(ret);
  ret->add_option("--selection", cfg.selection, "selection JSON from select");
  ret->add_option("--tests", cfg.tests, "test embeddings file");
  ret->add_option("--tests-format", cfg.tests_format, "format of --tests (defaults to --format)");
  ret->add_option("--num-tests", cfg.num_tests, "test count for random mode without --tests");
  ret->add_option("--m", cfg.m, "examples per prompt");
  ret->add_option("--mode", cfg.mode, "similar or random")->check(CLI::IsMember({"similar", "random"}));
  ret->add_option("--order", cfg.order, "asc or desc")->check(CLI::IsMember({"asc", "desc"}));
  add_seed(ret);

  CLI::App* bench = add("bench", "selection-time scaling benchmark", fastgas::cli::cmd_bench);
  bench->add_option("--sizes", sizes_text, "comma-separated pool sizes");
  bench->add_option("--n", cfg.n, "single pool size (used when --sizes is absent)");
  bench->add_option("--dim", cfg.dim, "dimension");
  bench->add_option("--clusters", cfg.clusters, "mixture components");
  bench->add_option("--spread", cfg.spread, "component standard deviation");
  bench->add_option("--k", cfg.k, "nearest neighbors per vertex");
  bench->add_option("--K", cfg.num_parts, "number of parts");
  bench->add_option("--budget", cfg.budget, "annotation budget M");
  bench->add_option("--epsilon", cfg.epsilon, "balance tolerance");
  bench->add_option("--repeats", cfg.repeats, "FastGAS repetitions per size (median reported)");
  bench->add_option("--csv", cfg.csv, "CSV report path (defaults next to --output)");
  add_seed(bench);

  CLI::App* ver = add("verify", "greedy coverage audit against exhaustive search", fastgas::cli::cmd_verify);
  ver->add_option("--max-n", cfg.max_n, "largest random graph");
  ver->add_option("--max-budget", cfg.max_budget, "largest budget");
  ver->add_option("--instances", cfg.instances, "random instances");
  add_seed(ver);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (!args.empty() && handlers.count(args[0])) {
      CLI::App* sub = app.get_subcommand(args[0]);
      std::vector<std::string> rest(args.begin() + 1, args.end());
      std::vector<std::string> injected;
      if (const auto p = find_flag(rest, "--preset"); !p.empty()) {
        injected = filter_for(sub, preset_args(p), false);
      }
      if (const auto c = find_flag(rest, "--config"); !c.empty()) {
        const auto from_config = filter_for(sub, config_args(c), true);
        injected.insert(injected.end(), from_config.begin(), from_config.end());
      }
      args.assign(1, args[0]);
      args.insert(args.end(), injected.begin(), injected.end());
      args.insert(args.end(), rest.begin(), rest.end());
    }
    std::vector<const char*> cargv{argv[0]};
    for (const auto& a : args) cargv.push_back(a.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const fastgas::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return fastgas::exit_code_for(e.code());
  }

  try {
    for (const auto& [name, handler] : handlers) {
      if (!app.got_subcommand(name)) continue;
      if (name == "bench") {
        if (!sizes_text.empty()) {
          cfg.sizes = parse_sizes(sizes_text);
        } else if (app.get_subcommand(name)->count("--n") > 0) {
          cfg.sizes = {cfg.n};
        }
      }
      return handler(cfg);
    }
  } catch (const fastgas::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return fastgas::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
