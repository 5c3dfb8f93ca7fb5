#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reso/evolve.hpp"
#include "reso/report.hpp"

namespace reso {

/// Batch simulation driver shared by the CLI and the verification suites.
struct RunConfig {
  GridPtr grid;
  SystemSpec system;
  InitialDataConfig data;
  double t_start = 1.0;
  double t_end = 18.0;
  double dt = 1.0 / 16.0;
  double report_every = 0.5;
  XNormParams xnorm = XNormParams::desk_scale();
  std::vector<double> snapshot_times;
  bool force_direct_budget = false;
};

struct RunResult {
  std::vector<NormReport> series;
  std::vector<std::pair<double, SpectralField>> snapshots;  // (time, profile)
  SimulationState final_state;
  bool nan_aborted = false;
  double abort_time = 0.0;
};

inline RunResult run_simulation(const RunConfig& cfg,
                                const std::function<void(const SimulationState&)>& on_step = {}) {
  cfg.system.validate();
  if (!(cfg.dt > 0.0) || !(cfg.t_end > cfg.t_start))
    throw std::invalid_argument("run_simulation: bad time range");
  if (cfg.t_start < 1.0)
    throw std::invalid_argument("run_simulation: profiles start at t0 = 1");

  SimulationState state;
  state.time = cfg.t_start;
  SpectralField f0 = make_initial_data(cfg.grid, cfg.data);
  for (std::size_t c = 0; c < cfg.system.components.size(); ++c) state.profiles.push_back(f0);

  RunResult result{{}, {}, state, false, 0.0};
  long total_steps = std::lround((cfg.t_end - cfg.t_start) / cfg.dt);
  long report_stride =
      std::max<long>(1, std::lround(cfg.report_every / cfg.dt));
  std::vector<long> snapshot_steps;
  for (double ts : cfg.snapshot_times)
    snapshot_steps.push_back(std::lround((ts - cfg.t_start) / cfg.dt));

  auto maybe_record = [&](long k) {
    if (k % report_stride == 0 || k == total_steps) {
      NormReport r = xnorm_report(cfg.system, state, cfg.xnorm);
      if (!r.finite()) throw std::runtime_error("run_simulation: non-finite norm report");
      result.series.push_back(r);
    }
    for (std::size_t s = 0; s < snapshot_steps.size(); ++s)
      if (snapshot_steps[s] == k) result.snapshots.emplace_back(state.time, state.profiles[0]);
  };

  maybe_record(0);
  for (long k = 1; k <= total_steps; ++k) {
    try {
      state = step(cfg.system, state, cfg.dt, {}, cfg.force_direct_budget);
    } catch (const std::runtime_error&) {
      result.nan_aborted = true;
      result.abort_time = state.time;
      break;
    }
    if (on_step) on_step(state);
    maybe_record(k);
  }
  result.final_state = state;
  return result;
}

/// Linear propagation experiment: evolves a localized packet with the free
/// half-wave propagator and samples ||u||_inf and ||u||_2 at the given
/// times. The decay window must respect the wrap-around horizon.
struct LinearDecaySample {
  double t;
  double u_linf;
  double u_l2;
};

inline std::vector<LinearDecaySample> linear_decay_experiment(GridPtr grid,
                                                              const InitialDataConfig& data,
                                                              const std::vector<double>& times,
                                                              double speed = 1.0) {
  SpectralField fhat = make_initial_data(grid, data);
  std::vector<LinearDecaySample> out;
  out.reserve(times.size());
  for (double t : times) {
    SpectralField uhat = propagate_linear(fhat, t, speed);
    out.push_back({t, lebesgue_norm(uhat, std::numeric_limits<double>::infinity()),
                   frequency_l2_norm(uhat)});
  }
  return out;
}

inline std::vector<double> log_spaced_times(double t1, double t2, int count) {
  std::vector<double> ts;
  for (int i = 0; i < count; ++i)
    ts.push_back(t1 * std::pow(t2 / t1, count == 1 ? 0.0 : static_cast<double>(i) / (count - 1)));
  return ts;
}

}  // namespace reso
