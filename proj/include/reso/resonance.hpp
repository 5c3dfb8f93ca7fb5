#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "reso/grid.hpp"
#include "reso/parallel.hpp"
#include "reso/phase.hpp"
#include "reso/sampling.hpp"
#include "reso/symbol.hpp"

namespace reso {

/// Boolean masks of the time-, space-, and space-time-resonant sets on an
/// eta-lattice slice at fixed output frequency xi_bar. Lattice points on the
/// eta = 0 or eta = xi_bar axes are excluded from all masks and flagged.
struct ResonanceMask {
  Vec xi_bar;
  GridPtr eta_grid;
  double tol;
  std::vector<std::uint8_t> time_mask;
  std::vector<std::uint8_t> space_mask;
  std::vector<std::uint8_t> spacetime_mask;
  std::vector<std::uint8_t> axis_flag;

  std::size_t count(const std::vector<std::uint8_t>& m) const {
    std::size_t c = 0;
    for (auto v : m) c += v;
    return c;
  }
};

/// Numerical resonant-set masks: time |phi| <= tol (|xi| + |eta|), space
/// |grad_eta phi| <= tol.
inline ResonanceMask resonance_masks(const Phase& p, const Vec& xi_bar, GridPtr eta_grid,
                                     double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("resonance_masks: tol must be positive");
  if (norm(xi_bar) == 0.0) throw std::invalid_argument("resonance_masks: xi_bar must be nonzero");
  const Grid& g = *eta_grid;
  ResonanceMask out;
  out.xi_bar = xi_bar;
  out.eta_grid = eta_grid;
  out.tol = tol;
  out.time_mask.assign(g.size(), 0);
  out.space_mask.assign(g.size(), 0);
  out.spacetime_mask.assign(g.size(), 0);
  out.axis_flag.assign(g.size(), 0);
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Vec eta = g.frequency(i);
      if (norm(eta) == 0.0 || norm(xi_bar - eta) == 0.0) {
        out.axis_flag[i] = 1;
        continue;
      }
      double phi = phase_value(p, xi_bar, eta);
      bool in_time = std::abs(phi) <= tol * (norm(xi_bar) + norm(eta));
      bool in_space = norm(phase_grad_eta(p, xi_bar, eta)) <= tol;
      out.time_mask[i] = in_time;
      out.space_mask[i] = in_space;
      out.spacetime_mask[i] = in_time && in_space;
    }
  });
  return out;
}

enum class ResonanceCase { mm, pp, mp };

inline ResonanceCase resonance_case_from_label(const std::string& label) {
  if (label == "--") return ResonanceCase::mm;
  if (label == "++") return ResonanceCase::pp;
  if (label == "-+") return ResonanceCase::mp;
  throw std::invalid_argument("unknown resonance case label: " + label);
}

inline Phase phase_for_case(ResonanceCase c) {
  switch (c) {
    case ResonanceCase::mm: return Phase::minus_minus();
    case ResonanceCase::pp: return Phase::plus_plus();
    default: return Phase::minus_plus();
  }
}

struct OracleMembership {
  bool in_time;
  bool in_space;
  bool in_spacetime;
};

/// Closed-form membership via the collinear parametrization eta = lambda xi:
///   --: T = R = {xi = eta = 0},           S = {0 <= lambda <= 1};
///   ++: T = S = R = {0 <= lambda <= 1};
///   -+: T = R = {lambda <= 0} u {xi = 0}, S = {lambda <= 0 or lambda >= 1} u {xi = 0}.
/// tol is a distance in frequency units.
inline OracleMembership analytic_resonance_oracle(ResonanceCase c, const Vec& xi, const Vec& eta,
                                                  double tol) {
  double nxi = norm(xi);
  if (nxi <= tol) {
    // Degenerate output frequency: every case resonates at the origin only
    // when eta vanishes too, except the -+ family where {xi = 0} is resonant.
    bool origin = norm(eta) <= tol;
    if (c == ResonanceCase::mp) return {true, true, true};
    if (c == ResonanceCase::pp) return {origin, origin, origin};
    return {origin, origin, origin};
  }
  double lambda = dot(xi, eta) / (nxi * nxi);
  double perp = norm(eta - lambda * xi);
  bool collinear = perp <= tol;
  double lam_tol = tol / nxi;
  bool seg01 = collinear && lambda >= -lam_tol && lambda <= 1.0 + lam_tol;
  bool ray_le0 = collinear && lambda <= lam_tol;
  bool ray_ge1 = collinear && lambda >= 1.0 - lam_tol;
  switch (c) {
    case ResonanceCase::mm: {
      bool origin = norm(eta) <= tol;  // xi != 0 here, so effectively false
      return {origin, seg01, origin};
    }
    case ResonanceCase::pp:
      return {seg01, seg01, seg01};
    default:
      return {ray_le0, ray_le0 || ray_ge1, ray_le0};
  }
}

/// Distance from eta to the analytic set of the given kind on the slice at
/// xi (angular distance to the collinear ray/segment plus radial distance to
/// the vertex).
enum class OracleSet { time, space, spacetime };

inline double distance_to_oracle_set(ResonanceCase c, OracleSet which, const Vec& xi,
                                     const Vec& eta) {
  double nxi = norm(xi);
  double lambda = dot(xi, eta) / (nxi * nxi);
  double perp = norm(eta - lambda * xi);
  auto seg_dist = [&](double lo, double hi) {
    double lam_clamped = std::min(hi, std::max(lo, lambda));
    double along = (lambda - lam_clamped) * nxi;
    return std::sqrt(perp * perp + along * along);
  };
  const double inf = std::numeric_limits<double>::infinity();
  double d = inf;
  switch (c) {
    case ResonanceCase::mm:
      if (which == OracleSet::space) d = seg_dist(0.0, 1.0);
      else d = norm(eta);  // set {xi = eta = 0}; xi is fixed nonzero, use eta distance
      break;
    case ResonanceCase::pp:
      d = seg_dist(0.0, 1.0);
      break;
    default:
      d = seg_dist(-inf, 0.0);
      if (which == OracleSet::space) d = std::min(d, seg_dist(1.0, inf));
      break;
  }
  return d;
}

/// Comparison of numerical masks against the collinear parametrization:
/// disagreements are tolerated only within one lattice cell (cell diagonal)
/// of the analytic set. Strict-inclusion witnesses for T strictly inside S
/// are lattice points inside the one-cell sleeve of S, farther than a cell
/// from T, and not time-masked.
struct MaskOracleAgreement {
  std::size_t beyond_cell = 0;
  double worst_distance = 0.0;
  std::size_t time_count = 0, space_count = 0, spacetime_count = 0;
  bool time_space_symdiff_within_cell = true;
  std::size_t strict_inclusion_witnesses = 0;
};

inline MaskOracleAgreement mask_oracle_agreement(ResonanceCase rc, const ResonanceMask& masks) {
  const Grid& g = *masks.eta_grid;
  double cell = std::sqrt(static_cast<double>(g.dim())) * g.dxi();
  MaskOracleAgreement a;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (masks.axis_flag[i]) continue;
    Vec eta = g.frequency(i);
    auto oracle = analytic_resonance_oracle(rc, masks.xi_bar, eta, 0.49 * g.dxi());
    a.time_count += masks.time_mask[i];
    a.space_count += masks.space_mask[i];
    a.spacetime_count += masks.spacetime_mask[i];
    double dist_t = distance_to_oracle_set(rc, OracleSet::time, masks.xi_bar, eta);
    double dist_s = distance_to_oracle_set(rc, OracleSet::space, masks.xi_bar, eta);
    if (masks.time_mask[i] != masks.space_mask[i] && std::min(dist_t, dist_s) > cell)
      a.time_space_symdiff_within_cell = false;
    if (dist_s <= cell && dist_t > cell && !masks.time_mask[i]) ++a.strict_inclusion_witnesses;
    struct P {
      bool got, want;
      OracleSet set;
    } pairs[3] = {{static_cast<bool>(masks.time_mask[i]), oracle.in_time, OracleSet::time},
                  {static_cast<bool>(masks.space_mask[i]), oracle.in_space, OracleSet::space},
                  {static_cast<bool>(masks.spacetime_mask[i]), oracle.in_spacetime,
                   OracleSet::spacetime}};
    for (const auto& p : pairs) {
      if (p.got == p.want) continue;
      double dist = distance_to_oracle_set(rc, p.set, masks.xi_bar, eta);
      if (dist > cell) {
        ++a.beyond_cell;
        a.worst_distance = std::max(a.worst_distance, dist);
      }
    }
  }
  return a;
}

/// Mask tolerance for which the time-mask skirt stays within one lattice
/// cell of the resonant rays on the given slice (the -+ phase vanishes
/// quadratically off its rays, so the tolerance shrinks with the cell size).
inline double recommended_mask_tol(const Grid& g, const Vec& xi_bar) {
  double cell = std::sqrt(static_cast<double>(g.dim())) * g.dxi();
  double lam_max = g.xi_max() / norm(xi_bar);
  double beyond = cell + g.dxi();
  double min_phi = beyond * beyond / (2.0 * lam_max * (1.0 + lam_max) * norm(xi_bar));
  return 0.5 * min_phi / (1.0 + g.xi_max());
}

struct NullCheckConfig {
  int bulk_samples = 10000;
  int shell_samples = 400;
  int shells = 8;
  double axis_clearance = 1e-3;
  std::uint64_t halton_offset = 100;
  int dim = 3;
};

struct ShellStat {
  double distance;
  double sup_ratio;
};

struct NullCheckReport {
  std::string verdict;  // "non-resonant", "resonant", "inconclusive"
  double sup_ratio = 0.0;
  std::vector<ShellStat> shells;
  double witness_residual_rms = 0.0;
  std::vector<double> sample_ratios;
};

namespace detail {

/// ratio rho = |q| / ( |phi| / min(|eta|, |xi-eta|) + |grad_eta phi| ); the
/// phi term is scaled the way restriction (6) permits (1/|eta| or
/// 1/|xi-eta| singularities, never 1/|xi|).
inline double null_ratio(const BilinearSymbol& q, const Phase& p, const Vec& xi, const Vec& eta) {
  double qv = std::abs(q.eval(xi, eta)) * std::pow(norm(xi), -q.homogeneity);
  double phi = std::abs(phase_value(p, xi, eta));
  double grad = norm(phase_grad_eta(p, xi, eta));
  double denom = phi / std::min(norm(eta), norm(xi - eta)) + grad;
  return qv / denom;
}

inline bool off_axes(const Vec& xi, const Vec& eta, double clearance) {
  return norm(xi) > clearance && norm(eta) > clearance && norm(xi - eta) > clearance;
}

/// Minimum-norm ridge witness of q = a phi + b . grad_eta phi at one point;
/// returns the squared residual relative to |q|^2.
inline double witness_residual_sq(const BilinearSymbol& q, const Phase& p, const Vec& xi,
                                  const Vec& eta) {
  double qv = std::abs(q.eval(xi, eta)) * std::pow(norm(xi), -q.homogeneity);
  double phi = phase_value(p, xi, eta);
  Vec grad = phase_grad_eta(p, xi, eta);
  double gram = phi * phi + dot(grad, grad);
  double ridge = 1e-8 * gram;
  if (gram + ridge == 0.0) return qv == 0.0 ? 0.0 : 1.0;
  double shrink = ridge / (gram + ridge);  // residual factor of the min-norm solution
  return shrink * shrink * qv * qv;
}

}  // namespace detail

/// Samples a point of the space-time resonant set of the phase's sign pair
/// (interior of the collinear segment/ray; the origin for --), then offsets
/// it by dist in a direction transverse to the ray.
inline void sample_near_resonant_set(ResonanceCase c, HaltonSampler& sampler, int dim, double dist,
                                     Vec* xi_out, Vec* eta_out) {
  double u[6];
  sampler.next(u, 6);
  Vec xh = HaltonSampler::direction(u[0], u[1], dim);
  double xr = HaltonSampler::radius(u[2], 0.5, 2.0);
  Vec xi = xr * xh;
  double lambda;
  switch (c) {
    case ResonanceCase::pp: lambda = 0.15 + 0.7 * u[3]; break;
    case ResonanceCase::mp: lambda = -(0.15 + 2.0 * u[3]); break;
    default: lambda = 0.15 + 0.7 * u[3]; break;  // -- uses the space-resonant segment
  }
  // transverse unit vector
  Vec t = HaltonSampler::direction(u[4], u[5], dim);
  Vec perp = t - dot(t, xh) * xh;
  double np = norm(perp);
  if (np < 1e-9) perp = Vec(-xh[1], xh[0], 0.0), np = norm(perp);
  perp = perp / np;
  *xi_out = xi;
  *eta_out = lambda * xi + dist * perp;
}

/// Sampled non-resonance check in the sense of the aphi + b.grad phi
/// decomposition: bounded ratios across shells approaching the space-time
/// resonant set give "non-resonant"; a persistent doubling of the sup ratio
/// per halved shell distance gives "resonant".
inline NullCheckReport null_condition_check(const BilinearSymbol& q, const Phase& p,
                                            const NullCheckConfig& cfg = {}) {
  ResonanceCase rc;
  if (p.sign_eta == 1 && p.sign_delta == 1) rc = ResonanceCase::pp;
  else if (p.sign_eta == -1 && p.sign_delta == -1) rc = ResonanceCase::mm;
  else rc = ResonanceCase::mp;

  NullCheckReport report;
  HaltonSampler sampler(cfg.halton_offset);
  double sup = 0.0;
  double witness_sq_sum = 0.0;
  double q_sq_sum = 0.0;
  int accepted = 0;
  report.sample_ratios.reserve(cfg.bulk_samples);
  for (int i = 0; i < cfg.bulk_samples * 4 && accepted < cfg.bulk_samples; ++i) {
    double u[6];
    sampler.next(u, 6);
    Vec xi = HaltonSampler::radius(u[2], 0.5, 2.0) * HaltonSampler::direction(u[0], u[1], cfg.dim);
    Vec eta = HaltonSampler::radius(u[5], 0.25, 4.0) * HaltonSampler::direction(u[3], u[4], cfg.dim);
    if (!detail::off_axes(xi, eta, cfg.axis_clearance)) continue;
    ++accepted;
    double rho = detail::null_ratio(q, p, xi, eta);
    report.sample_ratios.push_back(rho);
    sup = std::max(sup, rho);
    witness_sq_sum += detail::witness_residual_sq(q, p, xi, eta);
    double qv = std::abs(q.eval(xi, eta)) * std::pow(norm(xi), -q.homogeneity);
    q_sq_sum += qv * qv;
  }
  if (accepted == 0)
    throw std::runtime_error("null_condition_check: sampler produced no valid points");
  report.sup_ratio = sup;
  report.witness_residual_rms =
      q_sq_sum > 0.0 ? std::sqrt(witness_sq_sum / static_cast<double>(accepted)) : 0.0;

  // The same Halton stream is replayed for every shell, so shell sups are
  // pointwise-comparable and the doubling trend is not sampling noise.
  for (int k = 1; k <= cfg.shells; ++k) {
    double dist = std::pow(2.0, -k);
    double shell_sup = 0.0;
    HaltonSampler shell_sampler(cfg.halton_offset + 7919);
    int kept = 0;
    for (int i = 0; i < cfg.shell_samples * 4 && kept < cfg.shell_samples; ++i) {
      Vec xi, eta;
      sample_near_resonant_set(rc, shell_sampler, cfg.dim, dist, &xi, &eta);
      if (!detail::off_axes(xi, eta, std::min(cfg.axis_clearance, 0.25 * dist))) continue;
      ++kept;
      shell_sup = std::max(shell_sup, detail::null_ratio(q, p, xi, eta));
    }
    report.shells.push_back({dist, shell_sup});
  }

  // Divergence trend: three consecutive halvings that each at least double
  // the sup ratio.
  bool doubling = false;
  for (std::size_t k = 0; k + 3 < report.shells.size() + 0; ++k) {
    bool run = true;
    for (std::size_t j = k; j < k + 3; ++j) {
      if (!(report.shells[j + 1].sup_ratio >= 2.0 * report.shells[j].sup_ratio)) {
        run = false;
        break;
      }
    }
    if (run) {
      doubling = true;
      break;
    }
  }
  double shell_max = 0.0;
  for (const auto& s : report.shells) shell_max = std::max(shell_max, s.sup_ratio);
  if (doubling)
    report.verdict = "resonant";
  else if (shell_max <= 4.0 * std::max(1.0, report.sup_ratio))
    report.verdict = "non-resonant";
  else
    report.verdict = "inconclusive";
  report.sup_ratio = std::max(report.sup_ratio, shell_max);
  return report;
}

struct RestrictionReport {
  // Fitted growth exponents of min(|eta| |grad a|, |xi-eta| |grad a|) when
  // approaching each axis, and of |a| itself approaching the xi axis.
  double grad_exponent_xi = 0.0;
  double grad_exponent_eta = 0.0;
  double grad_exponent_delta = 0.0;
  double a_exponent_xi = 0.0;
  bool pass = false;
};

namespace detail {

inline double numeric_grad_norm(const BilinearSymbol& a, const Vec& xi, const Vec& eta, int dim) {
  double h = 1e-6 * std::max(1.0, std::max(norm(xi), norm(eta)));
  double total = 0.0;
  for (int axis = 0; axis < dim; ++axis) {
    Vec e;
    e[axis] = h;
    Complex dxi = (a.eval(xi + e, eta) - a.eval(xi - e, eta)) / (2.0 * h);
    Complex deta = (a.eval(xi, eta + e) - a.eval(xi, eta - e)) / (2.0 * h);
    total += std::norm(dxi) + std::norm(deta);
  }
  return std::sqrt(total);
}

inline double fit_exponent(const std::vector<double>& deltas, const std::vector<double>& values) {
  // least squares slope of log(value) vs log(1/delta)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(values[i] > 0.0)) continue;
    double x = std::log(1.0 / deltas[i]);
    double y = std::log(values[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

/// Empirical check of restriction (a in B_{-1} with controlled gradients):
/// near each axis the scaled gradient min(|eta| |grad a|, |xi-eta| |grad a|)
/// may grow at most like the inverse distance (fitted exponent <= 1.1), and
/// a itself must not blow up like 1/|xi|.
inline RestrictionReport restriction_singularity_check(const BilinearSymbol& a, int dim = 3,
                                                       std::uint64_t halton_offset = 100) {
  if (a.homogeneity != -1.0)
    throw std::invalid_argument("restriction_singularity_check: symbol must have homogeneity -1");
  RestrictionReport rep;
  const int kShells = 8, kPerShell = 32;
  std::vector<double> deltas;
  std::vector<double> grad_vals[3], a_vals;
  for (int k = 1; k <= kShells; ++k) deltas.push_back(std::pow(2.0, -k));

  for (int axis = 0; axis < 3; ++axis) {  // 0: xi small, 1: eta small, 2: xi-eta small
    grad_vals[axis].assign(kShells, 0.0);
    HaltonSampler sampler(halton_offset + 131 * static_cast<std::uint64_t>(axis));
    for (int k = 0; k < kShells; ++k) {
      double delta = deltas[static_cast<std::size_t>(k)];
      double worst = 0.0, worst_a = 0.0;
      for (int s = 0; s < kPerShell; ++s) {
        double u[6];
        sampler.next(u, 6);
        Vec small_dir = HaltonSampler::direction(u[0], u[1], dim);
        Vec big = HaltonSampler::radius(u[2], 0.8, 1.25) * HaltonSampler::direction(u[3], u[4], dim);
        Vec xi, eta;
        if (axis == 0) {
          xi = delta * small_dir;
          eta = big;
        } else if (axis == 1) {
          eta = delta * small_dir;
          xi = big;
        } else {
          xi = big;
          eta = big - delta * small_dir;
        }
        if (!detail::off_axes(xi, eta, 1e-9)) continue;
        double g = detail::numeric_grad_norm(a, xi, eta, dim);
        double scaled = std::min(norm(eta) * g, norm(xi - eta) * g);
        worst = std::max(worst, scaled);
        if (axis == 0) worst_a = std::max(worst_a, std::abs(a.eval(xi, eta)));
      }
      grad_vals[axis][static_cast<std::size_t>(k)] = worst;
      if (axis == 0) a_vals.push_back(worst_a);
    }
  }
  rep.grad_exponent_xi = detail::fit_exponent(deltas, grad_vals[0]);
  rep.grad_exponent_eta = detail::fit_exponent(deltas, grad_vals[1]);
  rep.grad_exponent_delta = detail::fit_exponent(deltas, grad_vals[2]);
  rep.a_exponent_xi = detail::fit_exponent(deltas, a_vals);
  rep.pass = rep.grad_exponent_xi <= 1.1 && rep.grad_exponent_eta <= 1.1 &&
             rep.grad_exponent_delta <= 1.1 && rep.a_exponent_xi <= 0.5;
  return rep;
}

}  // namespace reso
