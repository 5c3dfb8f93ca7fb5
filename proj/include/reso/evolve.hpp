#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "reso/norms.hpp"
#include "reso/phase.hpp"
#include "reso/pseudoproduct.hpp"

namespace reso {

enum class Route { direct, separable };

/// One dispersive component d_t u = i sign speed Lambda u + (interactions).
struct Component {
  int sign = 1;
  double speed = 1.0;
};

/// Quadratic interaction T_q(src1, src2) feeding a target component;
/// conjugate flags select u vs ubar sources. The route picks direct
/// quadrature (test oracle, budget-guarded) or the separable fast path.
struct Interaction {
  int target = 0;
  int source1 = 0;
  bool conjugate1 = false;
  int source2 = 0;
  bool conjugate2 = false;
  BilinearSymbol symbol;
  Route route = Route::separable;
};

struct SystemSpec {
  std::vector<Component> components;
  std::vector<Interaction> interactions;

  void validate() const {
    int n = static_cast<int>(components.size());
    if (n == 0) throw std::invalid_argument("SystemSpec: no components");
    for (const auto& c : components) {
      if (c.sign != 1 && c.sign != -1) throw std::invalid_argument("SystemSpec: sign must be +-1");
      if (!(c.speed > 0.0)) throw std::invalid_argument("SystemSpec: speed must be positive");
    }
    for (const auto& i : interactions) {
      if (i.target < 0 || i.target >= n || i.source1 < 0 || i.source1 >= n || i.source2 < 0 ||
          i.source2 >= n)
        throw std::invalid_argument("SystemSpec: interaction references a missing component");
      if (i.route == Route::separable && !i.symbol.separable)
        throw std::invalid_argument("SystemSpec: separable route needs a separable form on symbol " +
                                    i.symbol.name);
    }
  }
};

/// Profile-space state: per-component fhat with f = e^{-it sign c Lambda} u,
/// so the linear flow is exactly factored out and q = 0 keeps profiles
/// constant.
struct SimulationState {
  double time = 1.0;
  int step_count = 0;
  std::vector<SpectralField> profiles;

  void check_finite() const {
    for (const auto& f : profiles)
      if (!all_finite(f)) throw std::runtime_error("SimulationState: non-finite profile");
  }
};

inline SpectralField solution_field(const SimulationState& state, const Component& c,
                                    const SpectralField& profile) {
  return propagate_linear(profile, state.time * c.sign, c.speed);
}

/// Profile tendencies of all interactions at the state's time: each
/// T_q(src1, src2) is evaluated on the solution-space fields and pulled back
/// by the target's inverse propagator, which reproduces the Fourier-space
/// oscillatory integrand e^{is phi} q fhat fhat.
inline std::vector<SpectralField> nonlinearity(const SystemSpec& sys, const SimulationState& state,
                                               bool force_direct_budget = false) {
  std::vector<SpectralField> solutions;
  solutions.reserve(sys.components.size());
  for (std::size_t c = 0; c < sys.components.size(); ++c)
    solutions.push_back(solution_field(state, sys.components[c], state.profiles[c]));

  std::vector<SpectralField> tendency;
  tendency.reserve(sys.components.size());
  for (std::size_t c = 0; c < sys.components.size(); ++c)
    tendency.emplace_back(state.profiles[c].grid_ptr(), Representation::frequency, Role::profile);

  for (const auto& inter : sys.interactions) {
    const SpectralField& u1 = solutions[static_cast<std::size_t>(inter.source1)];
    const SpectralField& u2 = solutions[static_cast<std::size_t>(inter.source2)];
    SpectralField a1 = inter.conjugate1 ? conjugate(u1) : u1;
    SpectralField a2 = inter.conjugate2 ? conjugate(u2) : u2;
    SpectralField t = inter.route == Route::separable
                          ? apply_separable(*inter.symbol.separable, a1, a2)
                          : apply_direct(inter.symbol, a1, a2, force_direct_budget);
    const Component& target = sys.components[static_cast<std::size_t>(inter.target)];
    SpectralField pulled = propagate_linear(t, -state.time * target.sign, target.speed);
    tendency[static_cast<std::size_t>(inter.target)] =
        axpy(tendency[static_cast<std::size_t>(inter.target)], 1.0, pulled);
  }
  return tendency;
}

/// Optional extra RHS (manufactured-solution forcing); receives the grid
/// profiles' time.
using Forcing = std::function<std::vector<SpectralField>(const SimulationState&)>;

namespace detail {
inline std::vector<SpectralField> rhs(const SystemSpec& sys, const SimulationState& state,
                                      const Forcing& forcing, bool force_direct) {
  std::vector<SpectralField> r = nonlinearity(sys, state, force_direct);
  if (forcing) {
    std::vector<SpectralField> f = forcing(state);
    for (std::size_t c = 0; c < r.size(); ++c) r[c] = axpy(r[c], 1.0, f[c]);
  }
  return r;
}

inline SimulationState displaced(const SimulationState& base, double dt,
                                 const std::vector<SpectralField>& slope, double scale) {
  SimulationState s = base;
  s.time = base.time + dt;
  for (std::size_t c = 0; c < s.profiles.size(); ++c)
    s.profiles[c] = axpy(base.profiles[c], scale, slope[c]);
  return s;
}
}  // namespace detail

/// Classical RK4 on the profile ODE d_t f = N(f, t); the linear phase is
/// applied exactly inside N, so there is no stiff linear term and dt is an
/// accuracy knob only (dt <= 0.5 / xi_max recommended). Throws on NaN,
/// leaving the caller's state untouched.
inline SimulationState step(const SystemSpec& sys, const SimulationState& state, double dt,
                            const Forcing& forcing = {}, bool force_direct_budget = false) {
  auto k1 = detail::rhs(sys, state, forcing, force_direct_budget);
  auto s2 = detail::displaced(state, 0.5 * dt, k1, 0.5 * dt);
  auto k2 = detail::rhs(sys, s2, forcing, force_direct_budget);
  auto s3 = detail::displaced(state, 0.5 * dt, k2, 0.5 * dt);
  auto k3 = detail::rhs(sys, s3, forcing, force_direct_budget);
  auto s4 = detail::displaced(state, dt, k3, dt);
  auto k4 = detail::rhs(sys, s4, forcing, force_direct_budget);

  SimulationState next = state;
  next.time = state.time + dt;
  next.step_count = state.step_count + 1;
  for (std::size_t c = 0; c < next.profiles.size(); ++c) {
    SpectralField acc = axpy(k1[c], 2.0, k2[c]);
    acc = axpy(acc, 2.0, k3[c]);
    acc = axpy(acc, 1.0, k4[c]);
    next.profiles[c] = axpy(state.profiles[c], dt / 6.0, acc);
  }
  next.check_finite();
  return next;
}

/// One time-sample of every constituent of the a-priori norm (component 0),
/// plus the combined weighted value.
struct NormReport {
  double t = 0.0;
  double u_hn = 0.0;      // ||u||_{H^N}
  double u_h2 = 0.0;      // ||u||_{H^2}
  double u_linf = 0.0;    // ||u||_{L^inf}
  double ru_linf = 0.0;   // max_j ||R_j u||_{L^inf}
  double xf_l2 = 0.0;     // || x f ||_{L^2}
  double lxf_h1 = 0.0;    // || Lambda x f ||_{H^1}
  double x2lf_h1 = 0.0;   // || |x|^2 Lambda f ||_{H^1}
  double xnorm = 0.0;

  bool finite() const {
    for (double v : {t, u_hn, u_h2, u_linf, ru_linf, xf_l2, lxf_h1, x2lf_h1, xnorm})
      if (!std::isfinite(v) || v < 0.0) return false;
    return true;
  }
};

inline NormReport xnorm_report(const SystemSpec& sys, const SimulationState& state,
                               const XNormParams& params, std::size_t component = 0) {
  const Component& comp = sys.components.at(component);
  const SpectralField& fhat = state.profiles.at(component);
  const Grid& g = fhat.grid();
  double resolvable = std::log2(static_cast<double>(g.points_per_axis()));
  if (params.sobolev_index > 2.0 * resolvable)
    throw std::invalid_argument("xnorm_report: Sobolev index exceeds resolvable smoothness");

  SpectralField uhat = solution_field(state, comp, fhat);
  NormReport r;
  r.t = state.time;
  r.u_hn = sobolev_norm(uhat, params.sobolev_index, 2.0);
  r.u_h2 = sobolev_norm(uhat, 2.0, 2.0);
  double inf = std::numeric_limits<double>::infinity();
  r.u_linf = lebesgue_norm(uhat, inf);
  for (int axis = 0; axis < g.dim(); ++axis)
    r.ru_linf = std::max(r.ru_linf, lebesgue_norm(riesz_transform(uhat, axis), inf));
  r.xf_l2 = weight_moment(fhat, 1, 0, 0);
  // || Lambda x f ||_{H^1}: coordinate weight first, then Lambda, per axis.
  SpectralField fphys = to_physical(fhat);
  double acc = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    SpectralField xf = multiply_by_coordinate(fphys, axis);
    double n = sobolev_norm(lambda_power(to_frequency(xf), 1.0), 1.0, 2.0);
    acc += n * n;
  }
  r.lxf_h1 = std::sqrt(acc);
  r.x2lf_h1 = weight_moment(fhat, 2, 1, 1);
  double t = state.time;
  r.xnorm = std::pow(t, -params.eps) * r.u_hn + r.u_h2 + t * (r.u_linf + r.ru_linf) +
            std::pow(t, -params.gamma) * r.xf_l2 + r.lxf_h1 + r.x2lf_h1 / t;
  return r;
}

/// Normal-form boundary term: ghat(t, xi) = sum_eta e^{it phi(xi,eta)}
/// a(xi,eta) fhat(t, xi-eta) fhat(t, eta), by direct quadrature (same budget
/// guard as apply_direct). Default weight a = 1/|eta|.
inline SpectralField normal_form_boundary(const SimulationState& state, const Phase& phase,
                                          std::optional<BilinearSymbol> a_symbol = {},
                                          std::size_t component = 0, bool force = false) {
  const SpectralField& fhat = state.profiles.at(component);
  if (fhat.representation() != Representation::frequency)
    throw std::invalid_argument("normal_form_boundary: profile must be in frequency representation");
  const Grid& g = fhat.grid();
  std::size_t cost = g.size() * g.size();
  if (!force && cost > kDirectBudget)
    throw std::runtime_error("normal_form_boundary: direct-route budget exceeded; pass force");
  BilinearSymbol a = a_symbol ? *a_symbol : symbol_eta_inverse();
  double t = state.time;

  int n = g.points_per_axis();
  SpectralField out(fhat.grid_ptr(), Representation::frequency, Role::profile);
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    int xi_idx[3], eta_idx[3], diff_idx[3];
    for (std::size_t ix = lo; ix < hi; ++ix) {
      g.unflatten(ix, xi_idx);
      Vec xi = g.frequency(ix);
      Complex acc{};
      for (std::size_t ie = 0; ie < g.size(); ++ie) {
        Complex fe = fhat[ie];
        if (fe == Complex(0.0)) continue;
        g.unflatten(ie, eta_idx);
        for (int ax = 0; ax < g.dim(); ++ax) diff_idx[ax] = (xi_idx[ax] - eta_idx[ax] + n) % n;
        Complex fd = fhat[g.flatten(diff_idx)];
        if (fd == Complex(0.0)) continue;
        Vec eta = g.frequency(ie);
        Complex av = a.eval_on_lattice(xi, eta);
        if (av == Complex(0.0)) continue;
        acc += std::polar(1.0, t * phase_value(phase, xi, eta)) * av * fd * fe;
      }
      out[ix] = acc;
    }
  });
  return out;
}

struct DecayFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  int samples = 0;
};

/// Least-squares slope of log(value) against log(t) over the window; the
/// window must stay inside the wrap-around horizon t < L/4.
inline DecayFit decay_fit(const std::vector<double>& times, const std::vector<double>& values,
                          double t1, double t2, double box_length) {
  if (times.size() != values.size()) throw std::invalid_argument("decay_fit: length mismatch");
  if (!(t2 > t1)) throw std::invalid_argument("decay_fit: empty window");
  if (t2 >= box_length / 4.0)
    throw std::invalid_argument("decay_fit: window end " + std::to_string(t2) +
                                " violates the wrap-around horizon L/4 = " +
                                std::to_string(box_length / 4.0));
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t1 - 1e-12 || times[i] > t2 + 1e-12) continue;
    if (!(values[i] > 0.0)) continue;
    xs.push_back(std::log(times[i]));
    ys.push_back(std::log(values[i]));
  }
  if (xs.size() < 8)
    throw std::invalid_argument("decay_fit: need at least 8 samples in the window, have " +
                                std::to_string(xs.size()));
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  DecayFit fit;
  fit.samples = static_cast<int>(xs.size());
  fit.slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - fit.slope * sx) / n;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (intercept + fit.slope * xs[i]);
    sse += e * e;
  }
  if (xs.size() > 2)
    fit.stderr_slope = std::sqrt(sse / (n - 2.0) / (sxx - sx * sx / n));
  return fit;
}

/// || f(t_{i+1}) - f(t_i) ||_{H^2} over consecutive snapshots of one run;
/// Cauchy decrease of these differences is the scattering diagnostic.
inline std::vector<double> scattering_diagnostic(const std::vector<SpectralField>& profiles) {
  if (profiles.size() < 2)
    throw std::invalid_argument("scattering_diagnostic: need at least two snapshots");
  std::vector<double> diffs;
  for (std::size_t i = 0; i + 1 < profiles.size(); ++i) {
    require_same_grid(profiles[i], profiles[i + 1]);
    SpectralField d = axpy(to_frequency(profiles[i + 1]), -1.0, to_frequency(profiles[i]));
    diffs.push_back(sobolev_norm(d, 2.0, 2.0));
  }
  return diffs;
}

struct InitialDataConfig {
  double epsilon = 1e-2;   // target value of the weighted-data quantity
  double sigma = 2.5;      // physical envelope width
  Vec carrier = Vec(1.0, 0.0, 0.0);
  double band = 0.5;       // modulation bandwidth around the carrier
  int modes = 6;           // random band-limited modulation modes
  std::uint64_t seed = 1;
  int sobolev_index = 5;   // N in the data quantity
};

/// Localized complex Gaussian wave packet with random band-limited phase
/// modulation, scaled so that
///   || x u0 ||_{H^2} + || Lambda |x|^2 u0 ||_{H^1} + || u0 ||_{H^N} = epsilon.
inline SpectralField make_initial_data(GridPtr grid, const InitialDataConfig& cfg) {
  const Grid& g = *grid;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Vec> mod_freqs;
  std::vector<Complex> mod_coefs;
  for (int m = 0; m < cfg.modes; ++m) {
    Vec k;
    for (int a = 0; a < g.dim(); ++a) {
      double raw = cfg.carrier[a] + cfg.band * (2.0 * unif(rng) - 1.0);
      k[a] = g.dxi() * std::round(raw / g.dxi());  // snap to the lattice
    }
    mod_freqs.push_back(k);
    mod_coefs.push_back(std::polar(1.0, 2.0 * kPi * unif(rng)));
  }
  SpectralField u0(grid, Representation::physical, Role::solution);
  double s2 = cfg.sigma * cfg.sigma;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec x = g.coordinate(i);
    Complex mod{};
    for (std::size_t m = 0; m < mod_freqs.size(); ++m)
      mod += mod_coefs[m] * std::polar(1.0, dot(mod_freqs[m], x));
    u0[i] = std::exp(-dot(x, x) / (2.0 * s2)) * mod / static_cast<double>(mod_freqs.size());
  }
  SpectralField uhat = to_frequency(u0);
  uhat.set_role(Role::profile);
  // data quantity of eq-type || x u ||_{H^2} + || Lambda |x|^2 u ||_{H^1} + || u ||_{H^N}
  SpectralField fphys = to_physical(uhat);
  double acc = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    double n = sobolev_norm(multiply_by_coordinate(fphys, axis), 2.0, 2.0);
    acc += n * n;
  }
  double quantity = std::sqrt(acc) + weight_moment(uhat, 2, 1, 1) +
                    sobolev_norm(uhat, cfg.sobolev_index, 2.0);
  if (!(quantity > 0.0)) throw std::runtime_error("make_initial_data: degenerate data");
  return scaled(uhat, cfg.epsilon / quantity);
}

}  // namespace reso
