// Acceptance suite: one pass/fail line per verification criterion, with the
// measured quantities and elapsed time. Exit code is the number of failed
// criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "reso/experiments.hpp"
#include "reso/expr.hpp"
#include "reso/lowrank.hpp"
#include "reso/resonance.hpp"
#include "reso/sampling.hpp"

using namespace reso;

namespace {

int g_failures = 0;

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<bool(std::string*)> run;
};

void run_criterion(const Criterion& c) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = c.run(&detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_budget = secs < c.budget_seconds;
  bool pass = ok && in_budget;
  if (!pass) ++g_failures;
  std::printf("[%s] %s: %s (%.2f s / budget %.0f s)\n", pass ? "PASS" : "FAIL", c.name.c_str(),
              detail.c_str(), secs, c.budget_seconds);
  std::fflush(stdout);
}

bool halton_pair(HaltonSampler& sampler, double clearance, Vec* xi, Vec* eta) {
  double u[6];
  sampler.next(u, 6);
  *xi = HaltonSampler::radius(u[2], 0.5, 2.0) * HaltonSampler::direction(u[0], u[1], 3);
  *eta = HaltonSampler::radius(u[5], 0.25, 4.0) * HaltonSampler::direction(u[3], u[4], 3);
  return norm(*xi) > clearance && norm(*eta) > clearance && norm(*xi - *eta) > clearance;
}

// --------------------------------------------------------------- criterion 1
bool identity_suite(std::string* detail) {
  const int kPoints = 10000;
  const double clearance = 1e-3;
  double worst14 = 0.0, worst35 = 0.0, worst39 = 0.0;
  for (Phase p : {Phase::minus_plus(), Phase::plus_plus()}) {
    HaltonSampler sampler;
    int done = 0;
    while (done < kPoints) {
      Vec xi, eta;
      if (!halton_pair(sampler, clearance, &xi, &eta)) continue;
      ++done;
      double scaled =
          scaling_identity_residual(p, xi, eta) / (1e-12 * (1.0 + norm(xi) + norm(eta)));
      worst14 = std::max(worst14, scaled);
    }
  }
  {
    HaltonSampler sampler;
    int done = 0;
    while (done < kPoints) {
      Vec xi, eta;
      if (!halton_pair(sampler, clearance, &xi, &eta)) continue;
      if (dot(xi, eta) + norm(xi) * norm(eta) < 0.75 * norm(xi) * norm(eta)) continue;
      ++done;
      double inv_phi = std::abs(1.0 / phase_value(Phase::minus_plus(), xi, eta));
      worst35 = std::max(worst35, reciprocal_phase_residual(xi, eta) / (1e-12 * inv_phi));
    }
  }
  {
    HaltonSampler sampler;
    int done = 0;
    while (done < kPoints) {
      Vec xi, eta;
      if (!halton_pair(sampler, clearance, &xi, &eta)) continue;
      Vec delta = xi - eta;
      if (dot(xi, delta) + norm(xi) * norm(delta) < 0.75 * norm(xi) * norm(delta)) continue;
      ++done;
      double scaled = space_resonance_identity_residual(xi, eta) /
                      (1e-12 * (1.0 + norm(xi) + norm(eta)));
      worst39 = std::max(worst39, scaled);
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "scaled residuals: scaling %.3f, reciprocal %.3f, space-resonance %.3f (all <= 1)",
                worst14, worst35, worst39);
  *detail = buf;
  return worst14 <= 1.0 && worst35 <= 1.0 && worst39 <= 1.0;
}

// --------------------------------------------------------------- criterion 2
bool null_form_equalities(std::string* detail) {
  const int kPoints = 10000;
  double worst_q0 = 0.0, worst_qij = 0.0;
  for (int se : {1, -1})
    for (int sd : {1, -1}) {
      BilinearSymbol q0 = null_form_q0(se, sd);
      Phase p = Phase::from_signs(se, sd);
      HaltonSampler sampler;
      int done = 0;
      while (done < kPoints) {
        Vec xi, eta;
        if (!halton_pair(sampler, 1e-3, &xi, &eta)) continue;
        ++done;
        Vec grad = phase_grad_eta(p, xi, eta);
        worst_q0 = std::max(worst_q0, std::abs(q0.eval(xi, eta).real() - dot(grad, grad)));
      }
    }
  Phase pp = Phase::plus_plus(), pm = Phase::plus_minus();
  HaltonSampler sampler;
  int done = 0;
  while (done < kPoints) {
    Vec xi, eta;
    if (!halton_pair(sampler, 1e-3, &xi, &eta)) continue;
    ++done;
    Vec gp = phase_grad_eta(pp, xi, eta), gm = phase_grad_eta(pm, xi, eta);
    for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
      double rhs = gp[i - 1] * gm[j - 1] - gp[j - 1] * gm[i - 1];
      worst_qij =
          std::max(worst_qij, std::abs(null_form_qij(i, j).eval(xi, eta).real() - rhs));
    }
  }
  char buf[192];
  std::snprintf(buf, sizeof(buf), "max |m0 - |grad phi|^2| = %.2e, max qij identity gap = %.2e",
                worst_q0, worst_qij);
  *detail = buf;
  return worst_q0 <= 1e-12 && worst_qij <= 1e-12;
}

// --------------------------------------------------------------- criterion 3
bool resonant_set_oracle(std::string* detail) {
  auto grid = make_grid(3, 64, 16.0 * kPi);
  Vec xi(1, 0, 0);
  double tol = recommended_mask_tol(*grid, xi);
  std::size_t beyond = 0, witnesses = 0;
  bool symdiff_ok = true;
  for (auto rc : {ResonanceCase::mm, ResonanceCase::pp, ResonanceCase::mp}) {
    auto masks = resonance_masks(phase_for_case(rc), xi, grid, tol);
    auto agree = mask_oracle_agreement(rc, masks);
    beyond += agree.beyond_cell;
    if (rc == ResonanceCase::pp) symdiff_ok = agree.time_space_symdiff_within_cell;
    if (rc == ResonanceCase::mp) witnesses = agree.strict_inclusion_witnesses;
  }
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "beyond-cell mismatches %zu (=0), S++=T++ within cell %s, strict witnesses %zu (>=100)",
                beyond, symdiff_ok ? "yes" : "no", witnesses);
  *detail = buf;
  return beyond == 0 && symdiff_ok && witnesses >= 100;
}

// --------------------------------------------------------------- criterion 4
bool null_condition_checker(std::string* detail) {
  NullCheckConfig cfg;
  int wrong = 0;
  std::string first_wrong;
  auto expect = [&](const BilinearSymbol& q, const Phase& p, const char* want) {
    auto rep = null_condition_check(q, p, cfg);
    if (rep.verdict != want) {
      ++wrong;
      if (first_wrong.empty())
        first_wrong = q.name + " vs " + p.label() + " -> " + rep.verdict + " (want " + want + ")";
    }
  };
  for (int se : {1, -1})
    for (int sd : {1, -1}) {
      Phase p = Phase::from_signs(se, sd);
      expect(null_form_q0(se, sd), p, "non-resonant");
      for (int i = 1; i <= 3; ++i) expect(null_form_q0i(i, se, sd), p, "non-resonant");
      for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}})
        expect(null_form_qij(i, j), p, "non-resonant");
      expect(symbol_phi_over_eta(p), p, "non-resonant");
    }
  expect(symbol_one(), Phase::plus_plus(), "resonant");
  expect(symbol_one(), Phase::minus_plus(), "resonant");
  char buf[256];
  std::snprintf(buf, sizeof(buf), "34 verdicts checked, %d wrong%s%s", wrong,
                wrong ? ": " : "", first_wrong.c_str());
  *detail = buf;
  return wrong == 0;
}

// --------------------------------------------------------------- criterion 5
bool pseudoproduct_oracle(std::string* detail) {
  double worst = 0.0, worst_one = 0.0;
  std::vector<BilinearSymbol> syms;
  for (int se : {1, -1})
    for (int sd : {1, -1}) {
      syms.push_back(null_form_q0(se, sd));
      for (int i = 1; i <= 3; ++i) syms.push_back(null_form_q0i(i, se, sd));
    }
  for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}})
    syms.push_back(null_form_qij(i, j));
  for (int n : {8, 16}) {
    auto grid = make_grid(3, n, 2.0 * kPi);
    std::mt19937_64 rng(91);
    SpectralField f = random_band_limited(grid, std::max(1, n / 6), rng);
    SpectralField g = random_band_limited(grid, std::max(1, n / 6), rng);
    for (const auto& s : syms) {
      SpectralField direct = apply_direct(s, f, g);
      SpectralField fast = apply_separable(*s.separable, f, g);
      SpectralField diff = axpy(fast, -1.0, direct);
      double den = frequency_l2_norm(direct);
      worst = std::max(worst, den == 0.0 ? 0.0 : frequency_l2_norm(diff) / den);
    }
    // T_1(f, g) = f g
    SpectralField t1 = apply_direct(symbol_one(), f, g);
    SpectralField fp = to_physical(f), gp = to_physical(g);
    SpectralField prod(grid, Representation::physical);
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = fp[i] * gp[i];
    SpectralField diff = axpy(t1, -1.0, to_frequency(prod));
    worst_one = std::max(worst_one, frequency_l2_norm(diff) / frequency_l2_norm(t1));
  }
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "19 null-form routes x {8,16}: max rel L2 gap %.2e (<=1e-10); T_1 gap %.2e (<=1e-12)",
                worst, worst_one);
  *detail = buf;
  return worst <= 1e-10 && worst_one <= 1e-12;
}

// --------------------------------------------------------------- criterion 6
bool bilinear_bound_trend(std::string* detail) {
  std::vector<int> sizes = {8, 16, 32};
  double slope_one, slope_q0, slope_cm;
  {
    auto stats = bilinear_bound_probe(symbol_one(), 4, 4, 2, 100, sizes, 3, 2.0 * kPi, 1234);
    slope_one = stats.trend_slope;
  }
  {
    auto stats = bilinear_bound_probe(null_form_q0(1, 1), 4, 4, 2, 100, sizes, 3, 2.0 * kPi, 1235);
    slope_q0 = stats.trend_slope;
  }
  {
    // the smooth test symbol has no exact factorization: direct quadrature
    // over the band-limited supports, forced past the size budget
    auto stats =
        bilinear_bound_probe(symbol_cm_test(), 4, 4, 2, 100, sizes, 3, 2.0 * kPi, 1236, true);
    slope_cm = stats.trend_slope;
  }
  char buf[192];
  std::snprintf(buf, sizeof(buf), "trend slopes: one %.4f, q0++ %.4f, cm %.4f (all <= 0.1)",
                slope_one, slope_q0, slope_cm);
  *detail = buf;
  return slope_one <= 0.1 && slope_q0 <= 0.1 && slope_cm <= 0.1;
}

// --------------------------------------------------------------- criterion 7
bool linear_dispersive_decay(std::string* detail) {
  auto grid = make_grid(3, 128, 100.0);
  InitialDataConfig data;
  data.epsilon = 1e-2;
  data.sigma = 0.75;  // narrow plain Gaussian: shell clear of the near field by t = 2
  data.carrier = Vec(0, 0, 0);
  data.band = 0.0;
  data.modes = 1;
  data.seed = 2;
  auto times = log_spaced_times(2.0, 20.0, 16);
  auto samples = linear_decay_experiment(grid, data, times);
  std::vector<double> ts, linf;
  double l2_drift = 0.0;
  for (const auto& s : samples) {
    ts.push_back(s.t);
    linf.push_back(s.u_linf);
    l2_drift = std::max(l2_drift, std::abs(s.u_l2 - samples[0].u_l2) / samples[0].u_l2);
  }
  auto fit = decay_fit(ts, linf, 2.0, 20.0, grid->box_length());
  char buf[192];
  std::snprintf(buf, sizeof(buf), "L^inf slope %.4f (=-1.0 +- 0.15), rel L2 drift %.2e (<=1e-10)",
                fit.slope, l2_drift);
  *detail = buf;
  return std::abs(fit.slope + 1.0) <= 0.15 && l2_drift <= 1e-10;
}

// --------------------------------------------------------------- criterion 8
RunConfig dichotomy_config(BilinearSymbol symbol) {
  RunConfig cfg;
  cfg.grid = make_grid(3, 64, 80.0);
  Component comp{1, 1.0};
  Interaction inter{0, 0, true, 0, false, std::move(symbol), Route::separable};
  cfg.system.components.push_back(comp);
  cfg.system.interactions.push_back(std::move(inter));
  // low-frequency packet: its free flow is already in the 1/t regime over
  // the whole measurement window
  cfg.data.epsilon = 1e-2;
  cfg.data.sigma = 2.2;
  cfg.data.carrier = Vec(0, 0, 0);
  cfg.data.band = 0.3;
  cfg.data.modes = 6;
  cfg.data.seed = 4;
  cfg.t_start = 1.0;
  cfg.t_end = 18.0;
  cfg.dt = 1.0 / 16.0;
  cfg.report_every = 0.5;
  cfg.snapshot_times = {2.0, 4.0, 8.0, 16.0};
  return cfg;
}

bool decay_dichotomy(std::string* detail) {
  RunResult null_run = run_simulation(dichotomy_config(null_form_q0(-1, 1)));
  RunResult res_run = run_simulation(dichotomy_config(symbol_one()));
  if (null_run.nan_aborted || res_run.nan_aborted) {
    *detail = "a run aborted on NaN";
    return false;
  }
  auto t_uinf_at = [](const RunResult& r, double t) {
    for (const auto& s : r.series)
      if (std::abs(s.t - t) < 1e-9) return s.t * s.u_linf;
    return -1.0;
  };
  double null_base = t_uinf_at(null_run, 2.0);
  double null_sup = 0.0;
  for (const auto& s : null_run.series)
    if (s.t >= 2.0 && s.t <= 18.0) null_sup = std::max(null_sup, s.t * s.u_linf);
  double null_end = t_uinf_at(null_run, 18.0);
  double res_end = t_uinf_at(res_run, 18.0);
  double contrast = res_end / null_end;

  std::vector<SpectralField> snaps;
  for (const auto& [t, f] : null_run.snapshots) snaps.push_back(f);
  auto diffs = scattering_diagnostic(snaps);
  bool cauchy = diffs.size() == 3 && diffs[0] > diffs[1] && diffs[1] > diffs[2];

  bool flat = null_sup <= 1.5 * null_base;
  bool contrast_ok = contrast >= 2.0;
  char buf[320];
  std::snprintf(buf, sizeof(buf),
                "null sup(t u_inf)/value@2 = %.3f (<=1.5); resonant/null t u_inf @18 = %.3f "
                "(>=2.0); scattering diffs %.3e > %.3e > %.3e (%s)",
                null_sup / null_base, contrast, diffs.size() > 0 ? diffs[0] : -1.0,
                diffs.size() > 1 ? diffs[1] : -1.0, diffs.size() > 2 ? diffs[2] : -1.0,
                cauchy ? "decreasing" : "NOT decreasing");
  *detail = buf;
  return flat && contrast_ok && cauchy;
}

// --------------------------------------------------------------- criterion 9
bool integrator_order(std::string* detail) {
  auto grid = make_grid(2, 8, 2.0 * kPi);
  SpectralField base(grid, Representation::frequency, Role::profile);
  int ia[3] = {1, 0, 0}, ib[3] = {0, 7, 0}, ic[3] = {2, 1, 0};
  base[grid->flatten(ia)] = Complex(0.5, 0.1);
  base[grid->flatten(ib)] = Complex(-0.2, 0.3);
  base[grid->flatten(ic)] = Complex(0.15, -0.25);
  auto amp_at = [](double t) {
    return std::polar(1.0, 0.7 * std::sin(2.0 * t)) * (1.0 + 0.3 * std::cos(t));
  };
  auto damp_at = [&](double t) {
    return amp_at(t) * Complex(0.0, 1.4 * std::cos(2.0 * t)) -
           std::polar(1.0, 0.7 * std::sin(2.0 * t)) * 0.3 * std::sin(t);
  };
  auto exact_at = [&](double t) {
    SpectralField f = base;
    for (auto& v : f.values()) v *= amp_at(t);
    f.set_role(Role::profile);
    return f;
  };
  SystemSpec sys;
  sys.components.push_back({1, 1.0});
  sys.interactions.push_back({0, 0, true, 0, false, null_form_q0(-1, 1, 2), Route::separable});
  Forcing forcing = [&](const SimulationState& st) {
    SimulationState ref;
    ref.time = st.time;
    ref.profiles.push_back(exact_at(st.time));
    auto nl = nonlinearity(sys, ref);
    SpectralField dexact = base;
    for (auto& v : dexact.values()) v *= damp_at(st.time);
    std::vector<SpectralField> out;
    out.push_back(axpy(dexact, -1.0, nl[0]));
    return out;
  };
  std::vector<double> errs;
  for (double dt : {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    SimulationState s;
    s.time = 1.0;
    s.profiles.push_back(exact_at(1.0));
    long steps = std::lround(1.0 / dt);
    for (long k = 0; k < steps; ++k) s = step(sys, s, dt, forcing);
    SpectralField diff = axpy(s.profiles[0], -1.0, exact_at(2.0));
    errs.push_back(frequency_l2_norm(diff));
  }
  double worst_gap = 0.0, order_lo = 10.0, order_hi = 0.0;
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    double order = std::log2(errs[i] / errs[i + 1]);
    order_lo = std::min(order_lo, order);
    order_hi = std::max(order_hi, order);
    worst_gap = std::max(worst_gap, std::abs(order - 4.0));
  }
  // q = 0 invariance
  SimulationState s;
  s.time = 1.0;
  s.profiles.push_back(base);
  SystemSpec free_sys;
  free_sys.components.push_back({1, 1.0});
  SimulationState after = step(free_sys, s, 0.3);
  SpectralField drift = axpy(after.profiles[0], -1.0, base);
  double invariance = frequency_l2_norm(drift);
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "observed orders in [%.2f, %.2f] (4.0 +- 0.2); q=0 profile drift %.2e (<=1e-12)",
                order_lo, order_hi, invariance);
  *detail = buf;
  return worst_gap <= 0.2 && invariance <= 1e-12;
}

// -------------------------------------------------------------- criterion 10
bool multi_speed_triviality(std::string* detail) {
  auto grid = make_grid(3, 64, 16.0 * kPi);
  Vec xi(1, 0, 0);
  double tol = recommended_mask_tol(*grid, xi);
  double cell = std::sqrt(3.0) * grid->dxi();
  std::size_t outside = 0, total = 0;
  // both mixed-sign pairings of the |v|^2 source at output speed c = 2
  for (auto p : {Phase::from_signs(-1, 1, 2.0, 1.0, 1.0), Phase::from_signs(1, -1, 2.0, 1.0, 1.0)}) {
    auto masks = resonance_masks(p, xi, grid, tol);
    for (std::size_t i = 0; i < grid->size(); ++i) {
      if (!masks.time_mask[i]) continue;
      ++total;
      Vec eta = grid->frequency(i);
      double dist = std::min(norm(eta), norm(eta - xi));
      if (dist > cell) ++outside;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "time-resonant points: %zu total, %zu beyond one cell of the eta-axis degeneracies (=0)",
                total, outside);
  *detail = buf;
  return outside == 0;
}

}  // namespace

int main() {
  std::printf("space-time resonance toolkit: acceptance criteria\n");
  std::vector<Criterion> criteria = {
      {"C1 phase identity suite", 1.0, identity_suite},
      {"C2 null-form symbol equalities", 1.0, null_form_equalities},
      {"C3 resonant-set oracle equivalence", 30.0, resonant_set_oracle},
      {"C4 null-condition checker verdicts", 60.0, null_condition_checker},
      {"C5 pseudo-product oracle equivalence", 120.0, pseudoproduct_oracle},
      {"C6 bilinear boundedness probe", 600.0, bilinear_bound_trend},
      {"C7 linear dispersive decay", 600.0, linear_dispersive_decay},
      {"C8 decay dichotomy", 3600.0, decay_dichotomy},
      {"C9 integrator order", 300.0, integrator_order},
      {"C10 multi-speed triviality", 30.0, multi_speed_triviality},
  };
  for (const auto& c : criteria) run_criterion(c);
  if (g_failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", g_failures);
  return g_failures;
}
