#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "reso/field.hpp"
#include "reso/multiplier.hpp"
#include "reso/phase.hpp"

namespace reso {

/// Littlewood-Paley machinery: smooth dyadic shell projections built from a
/// telescoping quintic ramp, and the 2/3-rule dealiasing mask.

/// theta(r) = 1 for r <= 1, 0 for r >= 2, C^2 monotone in between.
inline double lp_theta(double r) {
  return 1.0 - cutoff_ramp((r - 1.5) * 0.5);  // ramp input in [-1/4, 1/4] over r in [1, 2]
}

/// Dyadic bump psi_j(r) = theta(r/2^j) - theta(r/2^{j-1}); supported in
/// [2^{j-1}, 2^{j+1}] and telescoping to an exact partition of unity.
inline double lp_bump(int j, double r) {
  double s = std::ldexp(1.0, -j);  // 2^{-j}
  return lp_theta(r * s) - lp_theta(r * s * 2.0);
}

/// Inclusive dyadic range [j_min, j_max] covering all nonzero lattice radii:
/// sum_{j in range} psi_j = 1 on them.
inline std::pair<int, int> lp_full_range(const Grid& g) {
  int jmin = static_cast<int>(std::floor(std::log2(g.dxi())));
  int jmax = static_cast<int>(std::ceil(std::log2(g.xi_max())));
  return {jmin, jmax};
}

/// P_j f: smooth projection onto the dyadic shell |xi| in [2^{j-1}, 2^{j+1}].
inline SpectralField littlewood_paley_projection(const SpectralField& f, int j) {
  const Grid& g = f.grid();
  double lo = std::ldexp(1.0, j - 1), hi = std::ldexp(1.0, j + 1);
  if (hi < g.dxi() || lo > g.xi_max())
    throw std::invalid_argument("littlewood_paley_projection: shell 2^" + std::to_string(j) +
                                " lies outside the lattice");
  return apply_radial_multiplier(to_frequency(f), [j](double r) { return Complex(lp_bump(j, r)); },
                                 Complex(0.0));
}

/// P_{<j} f = f minus the shells at and above j (the mean mode is kept);
/// the complementary multiplier of sum_{l >= j} psi_l, so
/// P_{<j} + sum_{l >= j} P_l = Id exactly.
inline SpectralField littlewood_paley_below(const SpectralField& f, int j) {
  return apply_radial_multiplier(
      to_frequency(f), [j](double r) { return Complex(lp_theta(r * std::ldexp(1.0, -(j - 1)))); },
      Complex(1.0));
}

/// True iff the integer mode survives the 2/3 rule on every axis
/// (3 |k_a| < N); the unpaired Nyquist mode never survives.
inline bool dealias_keep(const Grid& g, std::size_t flat) {
  int idx[3] = {0, 0, 0};
  g.unflatten(flat, idx);
  for (int a = 0; a < g.dim(); ++a) {
    int k = g.index_to_mode(idx[a]);
    if (3 * std::abs(k) >= g.points_per_axis()) return false;
  }
  return true;
}

/// Zeroes every mode the 2/3 rule removes.
inline SpectralField dealias(const SpectralField& f) {
  if (f.representation() != Representation::frequency)
    throw std::invalid_argument("dealias: field must be in frequency representation");
  SpectralField out = f;
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!dealias_keep(g, i)) out[i] = Complex(0.0);
  return out;
}

/// Pointwise product computed pseudo-spectrally with 2/3-rule dealiasing on
/// the inputs and the result. Bands below N/3 come out alias-free.
inline SpectralField dealiased_product(const SpectralField& fhat, const SpectralField& ghat) {
  require_same_grid(fhat, ghat);
  SpectralField fp = to_physical(dealias(fhat));
  SpectralField gp = to_physical(dealias(ghat));
  SpectralField prod(fhat.grid_ptr(), Representation::physical);
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = fp[i] * gp[i];
  return dealias(to_frequency(prod));
}

}  // namespace reso
