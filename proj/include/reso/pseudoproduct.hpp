#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "reso/lp.hpp"
#include "reso/norms.hpp"
#include "reso/parallel.hpp"
#include "reso/symbol.hpp"

namespace reso {

/// Bilinear pseudo-product T_m(f, g) = F^{-1} sum_eta m(xi, eta) fhat(eta)
/// ghat(xi - eta), the discrete counterpart of the integral definition under
/// our 1/N^d transform normalization (so T_1(f, g) = f g exactly).

inline constexpr std::size_t kDirectBudget = 191102976;  // 24^6 symbol evaluations

/// O(N^{2d}) direct quadrature, torus-wrapped in xi - eta. The result is in
/// frequency representation. Guarded by an evaluation budget (N <= 24 in 3-d)
/// unless force = true.
inline SpectralField apply_direct(const BilinearSymbol& m, const SpectralField& f,
                                  const SpectralField& g, bool force = false) {
  require_same_grid(f, g);
  const Grid& grid = f.grid();
  if (f.representation() != Representation::frequency ||
      g.representation() != Representation::frequency)
    throw std::invalid_argument("apply_direct: fields must be in frequency representation");
  std::size_t cost = grid.size() * grid.size();
  if (!force && cost > kDirectBudget) {
    std::ostringstream msg;
    msg << "apply_direct: " << cost << " symbol evaluations exceed the budget " << kDirectBudget
        << "; pass force to override";
    throw std::runtime_error(msg.str());
  }

  int n = grid.points_per_axis();
  // scanning only the occupied modes of f makes band-limited oracle runs
  // cheap without changing the summation order
  std::vector<std::size_t> support;
  support.reserve(grid.size() / 8);
  for (std::size_t ie = 0; ie < grid.size(); ++ie)
    if (f[ie] != Complex(0.0)) support.push_back(ie);

  SpectralField out(f.grid_ptr(), Representation::frequency, f.role());
  parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
    int xi_idx[3], eta_idx[3], diff_idx[3];
    for (std::size_t ix = lo; ix < hi; ++ix) {
      grid.unflatten(ix, xi_idx);
      Vec xi = grid.frequency(ix);
      Complex acc{};
      for (std::size_t ie : support) {
        grid.unflatten(ie, eta_idx);
        for (int a = 0; a < grid.dim(); ++a)
          diff_idx[a] = (xi_idx[a] - eta_idx[a] + n) % n;
        Complex gv = g[grid.flatten(diff_idx)];
        if (gv == Complex(0.0)) continue;
        Vec eta = grid.frequency(ie);
        acc += m.eval_on_lattice(xi, eta) * f[ie] * gv;
      }
      out[ix] = acc;
    }
  });
  return out;
}

/// Fast separable path: sum_k M_out(M_first f . M_second g) with 2/3-rule
/// dealiasing on every pointwise product, O(K N^d log N). Paraproduct-tagged
/// terms restrict the Littlewood-Paley pairing of the arguments (the
/// "P_{<j-3} f P_j g" offsets of the low-high regime and its mirror).
inline SpectralField apply_separable(const SeparableForm& form, const SpectralField& f,
                                     const SpectralField& g) {
  require_same_grid(f, g);
  if (form.terms.empty()) throw std::invalid_argument("apply_separable: empty form");
  const GridPtr& gp = f.grid_ptr();
  const Grid& grid = *gp;
  SpectralField fhat = to_frequency(f);
  SpectralField ghat = to_frequency(g);

  auto apply_mult = [&](const LinearMultiplier& mu, const SpectralField& x) {
    SpectralField y = x;
    for (std::size_t i = 0; i < grid.size(); ++i) y[i] *= mu(grid.frequency(i));
    return y;
  };

  auto [jmin, jmax] = lp_full_range(grid);
  SpectralField total(gp, Representation::frequency, f.role());
  for (const auto& term : form.terms) {
    SpectralField a = apply_mult(term.first, fhat);
    SpectralField b = apply_mult(term.second, ghat);
    SpectralField contrib(gp, Representation::frequency);
    if (term.regime == Regime::exact) {
      contrib = dealiased_product(a, b);
    } else {
      for (int j = jmin; j <= jmax; ++j) {
        SpectralField pj_a(gp, Representation::frequency), pj_b(gp, Representation::frequency);
        switch (term.regime) {
          case Regime::low_high:
            pj_a = littlewood_paley_below(a, j - 3);
            pj_b = littlewood_paley_projection(b, j);
            break;
          case Regime::high_low:
            pj_a = littlewood_paley_projection(a, j);
            pj_b = littlewood_paley_below(b, j - 3);
            break;
          default: {  // high_high: comparable shells, |l - j| <= 3
            pj_a = littlewood_paley_projection(a, j);
            SpectralField window(gp, Representation::frequency);
            for (int l = std::max(jmin, j - 3); l <= std::min(jmax, j + 3); ++l)
              window = axpy(window, 1.0, littlewood_paley_projection(b, l));
            pj_b = window;
            break;
          }
        }
        contrib = axpy(contrib, 1.0, dealiased_product(pj_a, pj_b));
      }
    }
    total = axpy(total, 1.0, apply_mult(term.out, contrib));
  }
  return total;
}

/// Chooses the separable fast path when the symbol carries a form, otherwise
/// direct quadrature.
inline SpectralField apply_symbol(const BilinearSymbol& m, const SpectralField& f,
                                  const SpectralField& g, bool force_direct_budget = false) {
  if (m.separable) return apply_separable(*m.separable, f, g);
  return apply_direct(m, to_frequency(f), to_frequency(g), force_direct_budget);
}

/// Random band-limited field: independent complex Gaussian coefficients on
/// modes with every |k_a| <= band, zero elsewhere. The mean mode is left
/// empty: on it the direct singular-axis convention and the Riesz-product
/// factorizations of the null forms differ by construction, and it carries
/// no dynamics.
inline SpectralField random_band_limited(GridPtr grid, int band, std::mt19937_64& rng,
                                         Role role = Role::solution) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField f(grid, Representation::frequency, role);
  const Grid& g = *grid;
  for (std::size_t i = 0; i < g.size(); ++i) {
    int idx[3] = {0, 0, 0};
    g.unflatten(i, idx);
    bool keep = true;
    for (int a = 0; a < g.dim(); ++a)
      if (std::abs(g.index_to_mode(idx[a])) > band) keep = false;
    if (keep) f[i] = Complex(gauss(rng), gauss(rng));
  }
  f[0] = Complex(0.0);
  return f;
}

struct ProbeSample {
  int n;
  int trial;
  double ratio;
};

struct ProbeStatistics {
  std::vector<ProbeSample> samples;
  std::vector<int> n_list;
  std::vector<double> max_ratio_per_n;
  double trend_slope = 0.0;  // slope of log(max ratio) vs log N
};

/// Empirical Hoelder-triple boundedness probe: records
/// ||T_m(f,g)||_r / (||f||_p ||g||_q) over random band-limited fields at a
/// list of grid sizes; a flat trend of the max ratio in log N is the desk
/// proxy for the uniform constant of the bilinear boundedness theorem.
inline ProbeStatistics bilinear_bound_probe(const BilinearSymbol& m, double p, double q, double r,
                                            int trials, const std::vector<int>& n_list, int dim = 3,
                                            double box_length = 2.0 * kPi, std::uint64_t seed = 1234,
                                            bool force_direct_budget = false) {
  if (!(p >= 1.0 && q >= 1.0 && r >= 1.0))
    throw std::invalid_argument("bilinear_bound_probe: exponents must be >= 1");
  // Hoelder triple for degree-0 symbols; for negative homogeneity the output
  // exponent gains the fractional-integration shift s/d.
  if (std::abs(1.0 / r - 1.0 / p - 1.0 / q - m.homogeneity / dim) > 1e-12)
    throw std::invalid_argument(
        "bilinear_bound_probe: need 1/r = 1/p + 1/q + s/d for symbol homogeneity s");
  ProbeStatistics stats;
  stats.n_list = n_list;
  for (int n : n_list) {
    GridPtr grid = make_grid(dim, n, box_length);
    int band = std::max(1, n / 6);
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n));
    double max_ratio = 0.0;
    for (int t = 0; t < trials; ++t) {
      SpectralField f = random_band_limited(grid, band, rng);
      SpectralField g = random_band_limited(grid, band, rng);
      SpectralField tfg = apply_symbol(m, f, g, force_direct_budget);
      double num = lebesgue_norm(tfg, r);
      double den = lebesgue_norm(f, p) * lebesgue_norm(g, q);
      double ratio = den == 0.0 ? 0.0 : num / den;
      stats.samples.push_back({n, t, ratio});
      max_ratio = std::max(max_ratio, ratio);
    }
    stats.max_ratio_per_n.push_back(max_ratio);
  }
  // slope of log(max ratio) vs log N
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < stats.n_list.size(); ++i) {
    if (!(stats.max_ratio_per_n[i] > 0.0)) continue;
    double x = std::log(static_cast<double>(stats.n_list[i]));
    double y = std::log(stats.max_ratio_per_n[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) stats.trend_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return stats;
}

}  // namespace reso
