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


#ifndef NDRIS_EXPERIMENT_HPP_
#define NDRIS_EXPERIMENT_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "ndris/channel.hpp"
#include "ndris/config.hpp"
#include "ndris/design.hpp"
#include "ndris/estimation.hpp"
#include "ndris/metrics.hpp"
#include "ndris/random.hpp"
#include "ndris/ris.hpp"

namespace ndris {

struct StageEnergy {
  double error = 0.0;  // ||F_hat - F||^2
  double truth = 0.0;  // ||F||^2
};

struct TrialMetrics {
  // Stage 1 on the selected antenna row, stage 2 and stage 3 on full N x M.
  StageEnergy stage1;
  StageEnergy stage2;
  StageEnergy stage3;
  int selected_antenna = 0;
  // Configured scheme's pairing against the pairing of the true channels.
  double mapping_accuracy = 0.0;
  // Achieved on the true channels with the estimated configuration.
  double se = 0.0;          // configured scheme
  double se_nondiag = 0.0;  // three-stage protocol, prelog 1 - 3M tau_m / tau
  double se_diag = 0.0;     // ON/OFF diagonal RIS, prelog 1 - M tau_m / tau
  int ao_iterations_nondiag = 0;
  int ao_iterations_diag = 0;
  bool ao_converged = true;
  std::int64_t pilot_slots = 0;
  std::vector<double> trace_nondiag;
  std::vector<double> trace_diag;
  std::vector<std::pair<int, int>> rank_pairs;
};

namespace detail {

struct Beamformer {
  PhaseVector q;
  CVector w;
  std::vector<double> trace;
  int iterations = 0;
  bool converged = true;
};

inline Beamformer design_beamformer(const CMatrix& f_cas_hat, const SystemConfig& cfg,
                                    double prelog, RandomStream& rng) {
  Beamformer bf;
  if (f_cas_hat.rows() == 1) {
    // SISO: closed-form phase alignment, w = 1.
    bf.q = passive_phases(f_cas_hat.row(0).transpose());
    bf.w = CVector::Ones(1);
    const double gain = std::norm((f_cas_hat * bf.q.values())(0));
    bf.trace = {prelog * std::log2(1.0 + cfg.budget.p_t() / cfg.budget.noise() * gain)};
    bf.iterations = 1;
    return bf;
  }
  BeamformingSolution sol = alternating_optimization(f_cas_hat, cfg.budget, prelog, cfg.ao, rng);
  bf.q = std::move(sol.q);
  bf.w = std::move(sol.w);
  bf.trace = std::move(sol.objective_trace);
  bf.iterations = sol.iterations;
  bf.converged = sol.converged;
  return bf;
}

}  // namespace detail

// Switch design from the stage-1 selected row and the stage-2 estimate:
// SISO sorting when N = 1, averaged-magnitude sorting otherwise.
inline PairingDesign design_pairing(const CVector& g_scaled, const CMatrix& h_scaled) {
  if (h_scaled.rows() == 1) return siso_pairing(g_scaled, h_scaled.row(0).transpose());
  return miso_pairing(g_scaled, h_scaled);
}

// One coherence block. Draw order from the stream: H, g, stage-1 noise,
// stage-2 noise, stage-3 noise, diagonal ON/OFF noise, AO start (three-stage),
// AO start (diagonal), then the exhaustive reference stage when configured.
inline TrialMetrics run_trial(const SystemConfig& cfg, RandomStream& rng,
                              EstimationResult* estimates = nullptr) {
  const int m = cfg.dims.elements;
  const double noise_var = cfg.pilot_noise();
  const PilotConfig pilot = PilotConfig::from_power(cfg.budget.p_u(), m);

  const ChannelRealization ch = sample_channels(cfg.dims, cfg.geometry, rng);

  const StageObservation s1 = run_stage(ch, stage1_switch(m), pilot, noise_var, rng);
  const AntennaSelection sel = select_antenna(s1.f_hat);
  const CVector f1_sel_truth = s1.f_truth.row(sel.index).transpose();

  const StageObservation s2 = run_stage(ch, stage2_switch(m), pilot, noise_var, rng);

  const PairingDesign designed = design_pairing(sel.row, s2.f_hat);
  const PairingDesign reference = design_pairing(ch.g, ch.h);
  const SwitchConfig designed_cfg = permutation_from_mapping(designed.mapping);
  const StageObservation s3 = run_stage(ch, designed_cfg, pilot, noise_var, rng);

  const SwitchConfig diagonal_cfg = permutation_from_mapping(ElementMapping::identity(m));
  const StageObservation sd = run_stage(ch, diagonal_cfg, pilot, noise_var, rng);

  TrialMetrics out;
  out.stage1 = {(sel.row - f1_sel_truth).squaredNorm(), f1_sel_truth.squaredNorm()};
  out.stage2 = {(s2.f_hat - s2.f_truth).squaredNorm(), s2.f_truth.squaredNorm()};
  out.stage3 = {(s3.f_hat - s3.f_truth).squaredNorm(), s3.f_truth.squaredNorm()};
  out.selected_antenna = sel.index;

  const double prelog_nd = cfg.overhead.prelog(Scheme::kNonDiagonal, m);
  const double prelog_d = cfg.overhead.prelog(Scheme::kDiagonal, m);
  const double p_t = cfg.budget.p_t();
  const double noise = cfg.budget.noise();

  detail::Beamformer bf_nd = detail::design_beamformer(s3.f_hat, cfg, prelog_nd, rng);
  detail::Beamformer bf_d = detail::design_beamformer(sd.f_hat, cfg, prelog_d, rng);
  out.se_nondiag = spectral_efficiency(
      received_power(bf_nd.q, designed_cfg, ch.h, ch.g, bf_nd.w, p_t), noise, prelog_nd);
  out.se_diag = spectral_efficiency(
      received_power(bf_d.q, diagonal_cfg, ch.h, ch.g, bf_d.w, p_t), noise, prelog_d);
  out.ao_iterations_nondiag = bf_nd.iterations;
  out.ao_iterations_diag = bf_d.iterations;
  out.ao_converged = bf_nd.converged && bf_d.converged;
  out.trace_nondiag = std::move(bf_nd.trace);
  out.trace_diag = std::move(bf_d.trace);

  ElementMapping scheme_mapping = designed.mapping;
  switch (cfg.scheme) {
    case Scheme::kNonDiagonal:
      out.se = out.se_nondiag;
      break;
    case Scheme::kDiagonal:
      scheme_mapping = ElementMapping::identity(m);
      out.se = out.se_diag;
      break;
    case Scheme::kExhaustive: {
      // Full CSI identifies the reference pairing directly.
      scheme_mapping = reference.mapping;
      const SwitchConfig ex_cfg = permutation_from_mapping(reference.mapping);
      const double prelog_ex = cfg.overhead.prelog(Scheme::kExhaustive, m);
      const StageObservation se = run_stage(ch, ex_cfg, pilot, noise_var, rng);
      const detail::Beamformer bf = detail::design_beamformer(se.f_hat, cfg, prelog_ex, rng);
      out.se = spectral_efficiency(received_power(bf.q, ex_cfg, ch.h, ch.g, bf.w, p_t), noise,
                                   prelog_ex);
      break;
    }
  }
  out.pilot_slots = pilot_slot_count(cfg.scheme, m);
  out.mapping_accuracy = mapping_accuracy(scheme_mapping, reference.mapping);
  const RVector h_mag =
      ch.h.rows() == 1 ? RVector(ch.h.row(0).cwiseAbs().transpose()) : average_magnitude(ch.h);
  out.rank_pairs = rank_pairs(scheme_mapping, ch.g.cwiseAbs(), h_mag);

  if (estimates != nullptr) {
    estimates->f1_hat = s1.f_hat;
    estimates->f1_sel = sel.row;
    estimates->f1_sel_truth = f1_sel_truth;
    estimates->selected_antenna = sel.index;
    estimates->f2_hat = s2.f_hat;
    estimates->f2_truth = s2.f_truth;
    estimates->fcas_hat = s3.f_hat;
    estimates->fcas_truth = s3.f_truth;
  }
  return out;
}

inline TrialMetrics run_trial(const SystemConfig& cfg, std::uint64_t trial_index) {
  RandomStream rng = RandomStream::for_trial(cfg.seed, trial_index);
  return run_trial(cfg, rng);
}

// Runs trials [0, cfg.trials) on `workers` threads. Results are indexed by
// trial, so the output does not depend on the worker count.
template <typename Reduce>
std::vector<std::invoke_result_t<Reduce, TrialMetrics&&>> run_trials(
    const SystemConfig& cfg, int workers, Reduce reduce) {
  using Result = std::invoke_result_t<Reduce, TrialMetrics&&>;
  std::vector<Result> results(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1)) {
      try {
        results[static_cast<std::size_t>(t)] =
            reduce(run_trial(cfg, static_cast<std::uint64_t>(t)));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(cfg.trials);
      }
    }
  };
  const int n_threads = std::max(1, std::min(workers, cfg.trials));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

inline std::vector<TrialMetrics> run_trials(const SystemConfig& cfg, int workers = 1) {
  return run_trials(cfg, workers, [](TrialMetrics&& m) { return std::move(m); });
}

// ------------------------------------------------------------------------
// Sweeps and aggregation.

enum class SweepAxis { kNone, kPuDbm, kTauRatio, kElements, kAntennas, kTrials };

inline std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::kNone: return "none";
    case SweepAxis::kPuDbm: return "p_u_dbm";
    case SweepAxis::kTauRatio: return "tau_ratio";
    case SweepAxis::kElements: return "M";
    case SweepAxis::kAntennas: return "N";
    case SweepAxis::kTrials: return "trials";
  }
  return "none";
}

inline SweepAxis parse_axis(std::string_view name) {
  for (SweepAxis a : {SweepAxis::kNone, SweepAxis::kPuDbm, SweepAxis::kTauRatio,
                      SweepAxis::kElements, SweepAxis::kAntennas, SweepAxis::kTrials}) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

inline SystemConfig apply_axis(SystemConfig cfg, SweepAxis axis, double value) {
  auto as_int = [&](const char* what) {
    if (value != std::floor(value)) {
      throw std::invalid_argument(std::string("sweep: ") + what + " must be an integer");
    }
    return static_cast<int>(value);
  };
  switch (axis) {
    case SweepAxis::kNone: break;
    case SweepAxis::kPuDbm: cfg.budget.p_u_dbm = value; break;
    case SweepAxis::kTauRatio: cfg.overhead.tau_m_s = value * cfg.overhead.tau_s; break;
    case SweepAxis::kElements: cfg.dims.elements = as_int("M"); break;
    case SweepAxis::kAntennas: cfg.dims.antennas = as_int("N"); break;
    case SweepAxis::kTrials: cfg.trials = as_int("trials"); break;
  }
  return cfg;
}

struct MetricAggregate {
  std::string metric;
  double mean = 0.0;
  double std_error = 0.0;
  long trials = 0;
};

struct SweepPoint {
  double value = 0.0;
  SystemConfig config;
  std::vector<MetricAggregate> metrics;
};

struct ExperimentReport {
  SystemConfig base;
  SweepAxis axis = SweepAxis::kNone;
  std::vector<SweepPoint> points;

  const MetricAggregate& find(std::size_t point, const std::string& metric) const {
    for (const auto& m : points.at(point).metrics) {
      if (m.metric == metric) return m;
    }
    throw std::out_of_range("report has no metric '" + metric + "'");
  }
};

struct SweepOptions {
  int workers = 1;
  bool rank_pairs = false;  // emit trial 0's rank scatter as rank_pair:<k>
  bool ao_traces = false;   // emit mean AO traces as ao_trace_{nondiag,diag}:<k>
};

inline MetricAggregate aggregate_mean(std::string name, const std::vector<double>& xs) {
  const auto n = static_cast<long>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double se = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  return {std::move(name), mean, se, n};
}

// Ratio of sums with a delta-method standard error.
inline MetricAggregate aggregate_ratio(std::string name, const std::vector<StageEnergy>& xs) {
  NmseAccumulator acc;
  for (const auto& x : xs) acc.add(x.error, x.truth);
  const double ratio = acc.value();
  const auto n = static_cast<long>(xs.size());
  double se = 0.0;
  if (n > 1) {
    const double mean_truth = acc.truth_energy() / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& x : xs) ss += (x.error - ratio * x.truth) * (x.error - ratio * x.truth);
    se = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) / mean_truth;
  }
  return {std::move(name), ratio, se, n};
}

namespace detail {

inline void append_trace_metrics(std::vector<MetricAggregate>& out, const std::string& name,
                                 const std::vector<TrialMetrics>& trials,
                                 std::vector<double> TrialMetrics::*trace) {
  std::size_t len = 0;
  for (const auto& t : trials) len = std::max(len, (t.*trace).size());
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<double> xs;
    xs.reserve(trials.size());
    for (const auto& t : trials) {
      const auto& tr = t.*trace;
      // A converged run holds its final value.
      xs.push_back(k < tr.size() ? tr[k] : tr.back());
    }
    out.push_back(aggregate_mean(name + ":" + std::to_string(k + 1), xs));
  }
}

}  // namespace detail

inline std::vector<MetricAggregate> aggregate_point(std::vector<TrialMetrics>& trials,
                                                    const SweepOptions& opts) {
  std::vector<MetricAggregate> out;
  auto collect = [&](auto getter) {
    std::vector<double> xs;
    xs.reserve(trials.size());
    for (const auto& t : trials) xs.push_back(static_cast<double>(getter(t)));
    return xs;
  };
  auto energies = [&](StageEnergy TrialMetrics::*stage) {
    std::vector<StageEnergy> xs;
    xs.reserve(trials.size());
    for (const auto& t : trials) xs.push_back(t.*stage);
    return xs;
  };
  out.push_back(aggregate_ratio("nmse_stage1", energies(&TrialMetrics::stage1)));
  out.push_back(aggregate_ratio("nmse_stage2", energies(&TrialMetrics::stage2)));
  out.push_back(aggregate_ratio("nmse_stage3", energies(&TrialMetrics::stage3)));
  out.push_back(aggregate_mean("mapping_accuracy",
                               collect([](const TrialMetrics& t) { return t.mapping_accuracy; })));
  out.push_back(aggregate_mean("se", collect([](const TrialMetrics& t) { return t.se; })));
  out.push_back(
      aggregate_mean("se_nondiag", collect([](const TrialMetrics& t) { return t.se_nondiag; })));
  out.push_back(
      aggregate_mean("se_diag", collect([](const TrialMetrics& t) { return t.se_diag; })));
  out.push_back(aggregate_mean("ao_iterations_nondiag", collect([](const TrialMetrics& t) {
                                 return t.ao_iterations_nondiag;
                               })));
  out.push_back(aggregate_mean("ao_iterations_diag", collect([](const TrialMetrics& t) {
                                 return t.ao_iterations_diag;
                               })));
  out.push_back(aggregate_mean("pilot_slots",
                               collect([](const TrialMetrics& t) { return t.pilot_slots; })));
  if (opts.rank_pairs && !trials.empty()) {
    for (const auto& [true_rank, est_rank] : trials.front().rank_pairs) {
      out.push_back({"rank_pair:" + std::to_string(true_rank), static_cast<double>(est_rank), 0.0, 1});
    }
  }
  if (opts.ao_traces) {
    detail::append_trace_metrics(out, "ao_trace_nondiag", trials, &TrialMetrics::trace_nondiag);
    detail::append_trace_metrics(out, "ao_trace_diag", trials, &TrialMetrics::trace_diag);
  }
  return out;
}

inline ExperimentReport run_sweep(const SystemConfig& base, SweepAxis axis,
                                  const std::vector<double>& values,
                                  const SweepOptions& opts = {}) {
  if (axis != SweepAxis::kNone && values.empty()) {
    throw std::invalid_argument("run_sweep: no values for axis '" +
                                std::string(to_string(axis)) + "'");
  }
  ExperimentReport report;
  report.base = base;
  report.axis = axis;
  const std::vector<double> points = axis == SweepAxis::kNone ? std::vector<double>{0.0} : values;
  for (double v : points) {
    SweepPoint point;
    point.value = v;
    point.config = apply_axis(base, axis, v);
    point.config.validate();
    const bool keep_traces = opts.ao_traces;
    std::vector<TrialMetrics> trials =
        run_trials(point.config, opts.workers, [keep_traces](TrialMetrics&& t) {
          if (!keep_traces) {
            t.trace_nondiag.clear();
            t.trace_nondiag.shrink_to_fit();
            t.trace_diag.clear();
            t.trace_diag.shrink_to_fit();
          }
          return std::move(t);
        });
    for (std::size_t i = 1; i < trials.size(); ++i) {
      trials[i].rank_pairs.clear();
      trials[i].rank_pairs.shrink_to_fit();
    }
    point.metrics = aggregate_point(trials, opts);
    report.points.push_back(std::move(point));
  }
  return report;
}

// ------------------------------------------------------------------------
// Figure presets. Common parameters: d_H = 30 m, d_g = 20 m, eta = 3,
// sigma_z^2 = -80 dBm.

struct Preset {
  std::string name;
  SystemConfig config;
  SweepAxis axis = SweepAxis::kNone;
  std::vector<double> values;
  SweepOptions options;
};

inline SystemConfig reference_defaults() {
  SystemConfig cfg;
  cfg.geometry = {30.0, 20.0, 3.0, 3.0};
  cfg.budget = {30.0, 40.0, -80.0};
  cfg.overhead = {1e-6, 1e-1};
  return cfg;
}

inline std::vector<std::string> preset_names() { return {"fig3", "fig4", "fig5", "fig6"}; }

inline Preset make_preset(const std::string& name) {
  Preset p;
  p.name = name;
  p.config = reference_defaults();
  if (name == "fig3") {
    // SISO mapping accuracy, M = 128.
    p.config.dims = {1, 128};
    p.config.trials = 1000;
    p.axis = SweepAxis::kPuDbm;
    p.values = {-15.0, 0.0, 15.0};
    p.options.rank_pairs = true;
  } else if (name == "fig4") {
    // Per-stage NMSE, N = 4, M = 64.
    p.config.dims = {4, 64};
    p.config.trials = 10000;
    p.axis = SweepAxis::kPuDbm;
    p.values = {-10.0, 0.0, 10.0, 20.0, 30.0};
  } else if (name == "fig5") {
    // SE versus tau_m / tau, P_u = 30 dBm, P_t = 40 dBm.
    p.config.dims = {4, 64};
    p.config.trials = 1000;
    p.axis = SweepAxis::kTauRatio;
    p.values = {0.0, 5e-5, 1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 3e-3, 4e-3, 5e-3};
  } else if (name == "fig6") {
    // AO convergence averaged over 100 runs.
    p.config.dims = {4, 64};
    p.config.trials = 100;
    p.axis = SweepAxis::kPuDbm;
    p.values = {30.0};
    p.options.ao_traces = true;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "' (expected fig3|fig4|fig5|fig6)");
  }
  return p;
}

}  // namespace ndris

#endif  // NDRIS_EXPERIMENT_HPP_
