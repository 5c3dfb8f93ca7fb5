#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "reso/multiplier.hpp"

namespace reso {

/// Grid-quadrature L^p norm in physical space, (dx^d sum |f|^p)^{1/p};
/// p = infinity gives the sup over lattice points.
inline double lebesgue_norm(const SpectralField& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lebesgue_norm: p must be >= 1");
  const SpectralField phys = to_physical(f);
  const Grid& g = phys.grid();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : phys.values()) m = std::max(m, std::abs(v));
    return m;
  }
  double cell = std::pow(g.dx(), g.dim());
  double s = pairwise_sum<double>(g.size(),
                                  [&](std::size_t i) { return std::pow(std::abs(phys[i]), p); });
  return std::pow(cell * s, 1.0 / p);
}

/// l^2 norm of the frequency coefficients with the quadrature weight L^{d/2},
/// which equals the physical L^2 norm (Plancherel) for our transform
/// normalization.
inline double frequency_l2_norm(const SpectralField& f) {
  if (f.representation() != Representation::frequency)
    throw std::invalid_argument("frequency_l2_norm: field must be in frequency representation");
  const Grid& g = f.grid();
  double s = pairwise_sum<double>(g.size(), [&](std::size_t i) { return std::norm(f[i]); });
  return std::sqrt(std::pow(g.box_length(), g.dim()) * s);
}

inline double l2_norm(const SpectralField& f) {
  return f.representation() == Representation::frequency ? frequency_l2_norm(f)
                                                         : lebesgue_norm(f, 2.0);
}

/// Inhomogeneous Sobolev norm || <nabla>^s f ||_{L^p}.
inline double sobolev_norm(const SpectralField& f, double s, double p) {
  return lebesgue_norm(bessel_power(to_frequency(f), s), p);
}

/// Homogeneous Sobolev norm || Lambda^s f ||_{L^p}.
inline double homogeneous_sobolev_norm(const SpectralField& f, double s, double p) {
  return lebesgue_norm(lambda_power(to_frequency(f), s), p);
}

/// || |x|^k Lambda^m f ||_{H^s} of a profile, with box-centered coordinates.
/// This is the building block of the weighted entries of the a-priori norm.
inline double weight_moment(const SpectralField& f, int k, int m, int s) {
  if (f.role() != Role::profile)
    throw std::invalid_argument("weight_moment: field must have profile role");
  if (f.representation() != Representation::frequency)
    throw std::invalid_argument("weight_moment: field must be in frequency representation");
  if (k < 0 || k > 2) throw std::invalid_argument("weight_moment: weight order k must be 0, 1 or 2");
  if (m < 0 || s < 0) throw std::invalid_argument("weight_moment: orders must be nonnegative");
  SpectralField g = lambda_power(f, static_cast<double>(m));
  SpectralField phys = to_physical(g);
  SpectralField weighted = multiply_by_radius_power(phys, k);
  return sobolev_norm(weighted, static_cast<double>(s), 2.0);
}

/// Cross-check route for || x f ||_{L^2}: centered finite differences of
/// fhat in xi (x f <-> i grad_xi fhat), accurate to O(dxi^2). Kept as an
/// independent oracle for the physical-space route.
inline double weight_moment_fd(const SpectralField& f) {
  if (f.representation() != Representation::frequency)
    throw std::invalid_argument("weight_moment_fd: field must be in frequency representation");
  const Grid& g = f.grid();
  int n = g.points_per_axis();
  double total = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    double s = pairwise_sum<double>(g.size(), [&](std::size_t i) {
      int idx[3] = {0, 0, 0};
      g.unflatten(i, idx);
      int up[3] = {idx[0], idx[1], idx[2]};
      int dn[3] = {idx[0], idx[1], idx[2]};
      up[axis] = (idx[axis] + 1) % n;
      dn[axis] = (idx[axis] + n - 1) % n;
      Complex d = (f[g.flatten(up)] - f[g.flatten(dn)]) / (2.0 * g.dxi());
      return std::norm(d);
    });
    total += s;
  }
  return std::sqrt(std::pow(g.box_length(), g.dim()) * total);
}

}  // namespace reso
