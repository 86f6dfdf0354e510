// Copyright 2026 The hetcache Authors
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

// Command-line front end: scenario runs, two-user queries, bounds, self-test.
//
// Exit codes: 0 success, 1 invalid input, 2 internal invariant violation.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "hetcache/allocation.hpp"
#include "hetcache/bounds.hpp"
#include "hetcache/errors.hpp"
#include "hetcache/experiments.hpp"
#include "hetcache/pair_optimal.hpp"
#include "hetcache/rate_model.hpp"
#include "hetcache/simkit.hpp"

namespace fs = std::filesystem;
using namespace hetcache;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kInternal = 2;

struct RunArgs {
  std::string config;
  std::string format = "csv";
  std::string out;
};

struct PairArgs {
  double m1 = 0, m2 = 0, r1 = 0, r2 = 0;
  std::vector<int> demand{1, 2};
  bool simulate = false;
  std::int64_t block_len = 10000;
  std::uint64_t seed = 1;
};

// An explicit relative --out, or the default file name, lands in
// $HETCACHE_OUT_DIR when that is set.
std::optional<fs::path> output_path(const RunArgs& args, const ScenarioConfig& cfg, OutputFormat fmt) {
  const char* dir = std::getenv("HETCACHE_OUT_DIR");
  if (!args.out.empty()) {
    const fs::path p(args.out);
    return (dir && *dir && p.is_relative()) ? fs::path(dir) / p : p;
  }
  if (dir && *dir) return fs::path(dir) / (cfg.name + (fmt == OutputFormat::Csv ? ".csv" : ".json"));
  return std::nullopt;
}

int cmd_run(const RunArgs& args) {
  const ScenarioConfig cfg = load_scenario(args.config);
  const OutputFormat format = parse_output_format(args.format);
  const auto curves = run_scenario(cfg);
  if (const auto path = output_path(args, cfg, format)) {
    emit_to_file(curves, format, *path);
    fmt::print(stderr, "wrote {} curves to {}\n", curves.size(), path->string());
  } else {
    emit(curves, format, std::cout);
  }
  const auto violations = dominance_violations(curves);
  for (const std::string& v : violations) fmt::print(stderr, "dominance violation: {}\n", v);
  return violations.empty() ? kOk : kInternal;
}

int cmd_pair(const PairArgs& args) {
  const PairParams p{args.m1, args.m2, args.r1, args.r2};
  p.validate();
  const DemandVector demand{args.demand};
  demand.validate(2, 2);

  const PlacementTable table = build_placement(p);
  const DeliveryMessage msg = delivery_message(table, demand);
  decode(table, 1, msg, demand);
  decode(table, 2, msg, demand);

  fmt::print("case {}\n", to_string(table.which));
  fmt::print("optimal_rate {}\n", format_number(optimal_rate(p)));
  std::string sizes;
  for (int part = 1; part <= 8; ++part) sizes += fmt::format("{}{}", part > 1 ? " " : "", format_number(table.size(part)));
  fmt::print("part_sizes {}\n", sizes);
  fmt::print("cache_load {} {}\n", format_number(table.cache_load(1)), format_number(table.cache_load(2)));
  std::string pieces;
  for (const Piece& piece : msg.pieces) pieces += (pieces.empty() ? "" : " ") + to_string(piece);
  fmt::print("message {}\n", pieces.empty() ? "(empty)" : pieces);
  fmt::print("message_rate {}\n", format_number(msg.total_rate));

  if (args.simulate) {
    const PairSimResult sim = simulate_pair({2, 2, 1.0, args.block_len}, p, demand, args.seed);
    fmt::print("simulated_bits {}\n", sim.achieved_rate_bits);
    fmt::print("decode_ok {}\n", sim.decode_ok);
    if (!sim.decode_ok) return kInternal;
  }
  return kOk;
}

int cmd_bound(const std::string& path) {
  const ScenarioConfig cfg = load_scenario(path);
  const RateProfile rates = cfg.rate_profile();
  std::vector<double> axis = cfg.sweep;
  std::sort(axis.begin(), axis.end());
  fmt::print("M,bound,s,users\n");
  for (double m : axis) {
    const BoundReport b = cutset_bound(cfg.caches_at(m), rates, cfg.num_files);
    std::string users;
    for (int u : b.argmax_users) users += (users.empty() ? "" : " ") + std::to_string(u);
    fmt::print("{},{},{},{}\n", format_number(m), format_number(b.value), b.argmax_s, users);
  }
  return kOk;
}

int cmd_selftest() {
  int failed = 0;
  auto check = [&](bool ok, const std::string& what) {
    fmt::print("{} {}\n", ok ? "ok  " : "FAIL", what);
    if (!ok) ++failed;
  };
  check(std::abs(rate_of_distortion(4.0, 0.5) - 1.5) < 1e-12, "rate of distortion");
  check(std::abs(optimal_rate({1, 1, 1, 2}) - 1.5) < 1e-12, "two-user optimum");
  for (const DemandVector& d : {DemandVector{{1, 2}}, DemandVector{{2, 1}}, DemandVector{{1, 1}}, DemandVector{{2, 2}}}) {
    const PairSimResult sim = simulate_pair({2, 2, 1.0, 10000}, {1, 1, 1, 2}, d);
    check(sim.decode_ok && sim.achieved_rate_bits <= 15008,
          fmt::format("two-user simulation, demand ({},{})", d.files[0], d.files[1]));
  }
  SubLayerSpec s;
  s.layer_users = 3;
  s.cached_users = 3;
  s.cache = 0.6;
  s.num_files = 3;
  check(verify_corner(s, 1, 6000, 1) && verify_corner(s, 2, 6000, 1), "coded delivery corners");
  SimFaults corrupt;
  corrupt.corrupt_cache = true;
  check(!verify_corner(s, 1, 6000, 1, corrupt), "corrupted cache detected");

  ScenarioConfig cfg = fig2_scenario();
  cfg.sweep = {0, 5, 20, 100};
  const auto curves = run_scenario(cfg);
  bool anchors = true;
  for (const RateCurve& c : curves) {
    anchors &= c.points.front().rate == 55.0;
    if (c.scheme != "cutset") anchors &= c.points.back().rate == 0.0;
  }
  check(anchors, "zero and full cache anchors");
  check(dominance_violations(curves).empty(), "dominance ordering");
  return failed == 0 ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coded caching with heterogeneous distortion targets"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a scenario config and emit rate curves");
  run->add_option("config", run_args.config, "Scenario config file")->required();
  run->add_option("--format", run_args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--out", run_args.out, "Output file (default stdout, or $HETCACHE_OUT_DIR/<name>.<ext>)");

  PairArgs pair_args;
  auto* pair = app.add_subcommand("pair", "Two users, two files: case, placement, delivery");
  pair->add_option("--m1", pair_args.m1, "Cache of user 1")->required();
  pair->add_option("--m2", pair_args.m2, "Cache of user 2")->required();
  pair->add_option("--r1", pair_args.r1, "Rate of user 1")->required();
  pair->add_option("--r2", pair_args.r2, "Rate of user 2")->required();
  pair->add_option("--demand", pair_args.demand, "Requested files, e.g. 1,2")->delimiter(',')->expected(2);
  pair->add_flag("--simulate", pair_args.simulate, "Also run the bit-level simulation");
  pair->add_option("--block-len", pair_args.block_len, "Block length for --simulate");
  pair->add_option("--seed", pair_args.seed, "Seed for --simulate");

  std::string bound_config;
  auto* bound = app.add_subcommand("bound", "Cut-set bound along a config's sweep");
  bound->add_option("config", bound_config, "Scenario config file")->required();

  auto* selftest = app.add_subcommand("selftest", "Quick internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*pair) return cmd_pair(pair_args);
    if (*bound) return cmd_bound(bound_config);
    if (*selftest) return cmd_selftest();
  } catch (const InvariantError& e) {
    fmt::print(stderr, "internal error: {}\n", e.what());
    return kInternal;
  } catch (const DecodeError& e) {
    fmt::print(stderr, "decode failure: {}\n", e.what());
    return kInternal;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kInvalid;
  }
  return kInvalid;
}
