// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The ndris Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


// Command-line front end: Monte Carlo experiments, config validation and
// small-instance oracle checks.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ndris/ndris.hpp"

namespace {

using namespace ndris;

struct RunArgs {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out = "-";
  std::string format = "csv";
  int workers = 1;
  std::string sweep = "none";
  std::vector<double> values;
};

int run_command(const RunArgs& args) {
  SystemConfig cfg = reference_defaults();
  SweepAxis axis = SweepAxis::kNone;
  std::vector<double> values;
  SweepOptions opts;
  if (!args.preset.empty()) {
    Preset p = make_preset(args.preset);
    cfg = p.config;
    axis = p.axis;
    values = p.values;
    opts = p.options;
  }
  if (!args.config_path.empty()) cfg = load_config(args.config_path, cfg);
  if (args.sweep != "none") {
    axis = parse_axis(args.sweep);
    values = args.values;
  }
  if (args.seed) cfg.seed = *args.seed;
  if (args.trials) cfg.trials = *args.trials;
  opts.workers = args.workers;
  cfg.validate();

  const ExperimentReport report = run_sweep(cfg, axis, values, opts);
  emit(report, parse_format(args.format), args.out, std::cout);
  return 0;
}

int validate_command(const std::string& path) {
  const SystemConfig cfg = load_config(path, reference_defaults());
  cfg.validate();
  std::cout << "config OK: " << path << '\n';
  for (const auto& [key, value] : to_key_values(cfg)) std::cout << "  " << key << " = " << value << '\n';
  std::cout << "  pilot_slots = " << pilot_slot_count(cfg.scheme, cfg.dims.elements) << '\n';
  std::cout << "  prelog = " << cfg.overhead.prelog(cfg.scheme, cfg.dims.elements) << '\n';
  return 0;
}

CMatrix dense_cascade(const CMatrix& h, const CVector& g, const SwitchConfig& cfg) {
  const CMatrix jt = cfg.dense_jt().cast<Complex>();
  const CMatrix jr = cfg.dense_jr().cast<Complex>();
  return h * jt * CVector(jr * g).asDiagonal();
}

int oracle_command(std::uint64_t seed, int instances) {
  RandomStream rng(seed);
  std::uniform_int_distribution<int> pick_m(2, 7);
  int failures = 0;

  // Sorted pairing against exhaustive search.
  double worst_gap = 0.0;
  for (int i = 0; i < instances; ++i) {
    const int m = pick_m(rng.engine());
    const CVector g = sample_noise(m, 1, 1.0, rng).col(0);
    const CVector h = sample_noise(m, 1, 1.0, rng).col(0);
    const RVector gm = g.cwiseAbs();
    const RVector hm = h.cwiseAbs();
    const double sorted = pairing_gain(gm, hm, siso_pairing(g, h).mapping);
    const double brute = pairing_gain(gm, hm, brute_force_pairing(gm, hm).mapping);
    worst_gap = std::max(worst_gap, std::abs(sorted - brute));
    failures += sorted != brute;
  }
  std::cout << "pairing oracle: " << instances << " instances, max |sorted - brute| = "
            << worst_gap << (failures == 0 ? "  PASS" : "  FAIL") << '\n';

  // Index-map algebra against dense matrix products.
  int dense_failures = 0;
  double worst_rel = 0.0;
  for (int i = 0; i < instances; ++i) {
    const int m = pick_m(rng.engine());
    const int n = 1 + pick_m(rng.engine()) % 4;
    const CMatrix h = sample_noise(n, m, 1.0, rng);
    const CVector g = sample_noise(m, 1, 1.0, rng).col(0);
    std::vector<int> a = detail::identity_indices(m);
    std::vector<int> b = a;
    std::shuffle(a.begin(), a.end(), rng.engine());
    std::shuffle(b.begin(), b.end(), rng.engine());
    const SwitchConfig cfg = SwitchConfig::permutation_pair(a, b);
    for (const SwitchConfig& c : {cfg, stage1_switch(m), stage2_switch(m)}) {
      const CMatrix fast = effective_cascade(h, g, c);
      const double rel = (fast - dense_cascade(h, g, c)).norm() / fast.norm();
      worst_rel = std::max(worst_rel, rel);
      dense_failures += rel > 1e-12;
    }
    const PhaseVector q = passive_phases(sample_noise(m, 1, 1.0, rng).col(0));
    const CVector w = random_unit_vector(n, rng);
    const double p6 = received_power(q, cfg, h, g, w, 1.0);
    const double p3 = received_power_theta(build_theta(cfg, q), h, g, w, 1.0);
    const double rel = std::abs(p6 - p3) / p3;
    worst_rel = std::max(worst_rel, rel);
    dense_failures += rel > 1e-12;
  }
  std::cout << "dense-matrix oracle: " << instances << " instances, max relative error = "
            << worst_rel << (dense_failures == 0 ? "  PASS" : "  FAIL") << '\n';
  return failures + dense_failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-diagonal RIS channel estimation simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment");
  run->add_option("--config", run_args.config_path, "Key/value config file")
      ->check(CLI::ExistingFile);
  run->add_option("--preset", run_args.preset, "Figure preset")
      ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6"}));
  run->add_option("--seed", run_args.seed, "Master seed");
  run->add_option("--trials", run_args.trials, "Trials per sweep point")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", run_args.out, "Output path, '-' for stdout");
  run->add_option("--format", run_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--workers", run_args.workers, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--sweep", run_args.sweep, "Sweep axis: p_u_dbm, tau_ratio, M, N, trials");
  run->add_option("--values", run_args.values, "Sweep values")->delimiter(',');

  std::string validate_path;
  auto* validate = app.add_subcommand("validate-config", "Parse and check a config file");
  validate->add_option("config", validate_path, "Config file")->required();

  std::uint64_t oracle_seed = 7;
  int oracle_instances = 1000;
  auto* oracle = app.add_subcommand("oracle", "Brute-force pairing and dense-matrix checks");
  oracle->add_option("--seed", oracle_seed, "Seed");
  oracle->add_option("--instances", oracle_instances, "Random instances")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(run_args);
    if (*validate) return validate_command(validate_path);
    if (*oracle) return oracle_command(oracle_seed, oracle_instances);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
