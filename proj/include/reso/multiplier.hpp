#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "reso/field.hpp"
#include "reso/parallel.hpp"

namespace reso {

using RadialSymbol = std::function<Complex(double)>;

/// Multiplies each frequency coefficient by sigma(|xi|); the xi = 0
/// coefficient is multiplied by zero_mode instead. Rejects symbols that are
/// not finite at a lattice radius.
inline SpectralField apply_radial_multiplier(const SpectralField& f, const RadialSymbol& sigma,
                                             Complex zero_mode) {
  if (f.representation() != Representation::frequency)
    throw std::invalid_argument("apply_radial_multiplier: field must be in frequency representation");
  const Grid& g = f.grid();
  const auto& radii = g.radii();
  SpectralField out = f;
  std::atomic<bool> bad{false};
  double bad_radius = 0.0;
  std::mutex bad_mutex;
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double r = radii[i];
      Complex m = r == 0.0 ? zero_mode : sigma(r);
      if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
        std::lock_guard<std::mutex> lock(bad_mutex);
        bad = true;
        bad_radius = r;
        return;
      }
      out[i] *= m;
    }
  });
  if (bad) {
    std::ostringstream msg;
    msg << "apply_radial_multiplier: symbol not finite at lattice radius " << bad_radius;
    throw std::domain_error(msg.str());
  }
  return out;
}

/// Lambda^s = |nabla|^s. For s > 0 the zero mode is annihilated; for s < 0
/// (fractional integration) it takes the supplied zero_mode, default 0.
inline SpectralField lambda_power(const SpectralField& f, double s, Complex zero_mode = 0.0) {
  if (s == 0.0) return f;
  return apply_radial_multiplier(f, [s](double r) { return Complex(std::pow(r, s), 0.0); },
                                 s > 0.0 ? Complex(0.0) : zero_mode);
}

/// <nabla>^s = (1 + |xi|^2)^{s/2}.
inline SpectralField bessel_power(const SpectralField& f, double s) {
  if (s == 0.0) return f;
  return apply_radial_multiplier(
      f, [s](double r) { return Complex(std::pow(1.0 + r * r, 0.5 * s), 0.0); }, Complex(1.0));
}

/// Half-wave propagator e^{i t c Lambda}.
inline SpectralField propagate_linear(const SpectralField& f, double t, double speed = 1.0) {
  double tc = t * speed;
  return apply_radial_multiplier(
      f, [tc](double r) { return std::polar(1.0, tc * r); }, Complex(1.0));
}

/// Riesz transform R_j = partial_j / Lambda, multiplier i xi_j / |xi|; the
/// mean mode is set to zero.
inline SpectralField riesz_transform(const SpectralField& f, int axis) {
  if (f.representation() != Representation::frequency)
    throw std::invalid_argument("riesz_transform: field must be in frequency representation");
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("riesz_transform: axis out of range");
  SpectralField out = f;
  const auto& radii = g.radii();
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double r = radii[i];
      if (r == 0.0) {
        out[i] = Complex(0.0);
      } else {
        Vec xi = g.frequency(i);
        out[i] *= Complex(0.0, xi[axis] / r);
      }
    }
  });
  return out;
}

/// Pointwise multiplication by the box-centered coordinate x_axis.
inline SpectralField multiply_by_coordinate(const SpectralField& f, int axis) {
  if (f.representation() != Representation::physical)
    throw std::invalid_argument("multiply_by_coordinate: field must be physical");
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim())
    throw std::invalid_argument("multiply_by_coordinate: axis out of range");
  SpectralField out = f;
  for (std::size_t i = 0; i < g.size(); ++i) out[i] *= g.coordinate(i)[axis];
  return out;
}

/// Pointwise multiplication by |x|^k, box-centered.
inline SpectralField multiply_by_radius_power(const SpectralField& f, int k) {
  if (f.representation() != Representation::physical)
    throw std::invalid_argument("multiply_by_radius_power: field must be physical");
  const Grid& g = f.grid();
  SpectralField out = f;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double r = norm(g.coordinate(i));
    out[i] *= std::pow(r, k);
  }
  return out;
}

}  // namespace reso
