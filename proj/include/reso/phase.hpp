#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "reso/vec.hpp"

namespace reso {

/// Three-wave interaction phase
///
///   phi(xi, eta) = -c0 |xi| + s_eta c_eta |eta| + s_delta c_delta |xi - eta|
///
/// for the output frequency xi and the two input legs at eta and xi - eta.
/// Sign-pair labels order the signs by input leg: "-+" is the conjugate-first
/// interaction (ubar, u), with s_eta = -1 and s_delta = +1, so
/// phi_{-+} = -|xi| - |eta| + |xi - eta|.
struct Phase {
  double c_out = 1.0;
  int sign_eta = 1;
  double c_eta = 1.0;
  int sign_delta = 1;
  double c_delta = 1.0;

  static Phase from_signs(int s_eta, int s_delta, double c0 = 1.0, double ce = 1.0,
                          double cd = 1.0) {
    if ((s_eta != 1 && s_eta != -1) || (s_delta != 1 && s_delta != -1))
      throw std::invalid_argument("Phase: signs must be +1 or -1");
    if (!(c0 > 0.0 && ce > 0.0 && cd > 0.0))
      throw std::invalid_argument("Phase: speeds must be positive");
    return Phase{c0, s_eta, ce, s_delta, cd};
  }
  static Phase minus_minus() { return from_signs(-1, -1); }
  static Phase plus_plus() { return from_signs(1, 1); }
  static Phase minus_plus() { return from_signs(-1, 1); }
  static Phase plus_minus() { return from_signs(1, -1); }

  bool equal_speeds() const { return c_out == c_eta && c_eta == c_delta; }
  /// Phase with the two input legs exchanged (eta <-> xi - eta relabeling).
  Phase mirrored() const { return Phase{c_out, sign_delta, c_delta, sign_eta, c_eta}; }

  std::string label() const {
    auto ch = [](int s) { return s > 0 ? '+' : '-'; };
    return std::string{ch(sign_eta), ch(sign_delta)};
  }
};

inline double phase_value(const Phase& p, const Vec& xi, const Vec& eta) {
  return -p.c_out * norm(xi) + p.sign_eta * p.c_eta * norm(eta) +
         p.sign_delta * p.c_delta * norm(xi - eta);
}

namespace detail {
inline void require_off_axis(const Vec& v, const char* axis_name, const char* where) {
  if (norm(v) == 0.0)
    throw std::domain_error(std::string(where) + ": singular on the axis " + axis_name);
}
}  // namespace detail

/// grad_eta phi = s_eta c_eta eta/|eta| + s_delta c_delta (eta - xi)/|eta - xi|.
inline Vec phase_grad_eta(const Phase& p, const Vec& xi, const Vec& eta) {
  detail::require_off_axis(eta, "eta = 0", "phase_grad_eta");
  detail::require_off_axis(xi - eta, "xi - eta = 0", "phase_grad_eta");
  return p.sign_eta * p.c_eta * unit(eta) + p.sign_delta * p.c_delta * unit(eta - xi);
}

/// grad_xi phi = -c0 xi/|xi| + s_delta c_delta (xi - eta)/|xi - eta|.
inline Vec phase_grad_xi(const Phase& p, const Vec& xi, const Vec& eta) {
  detail::require_off_axis(xi, "xi = 0", "phase_grad_xi");
  detail::require_off_axis(xi - eta, "xi - eta = 0", "phase_grad_xi");
  return -p.c_out * unit(xi) + p.sign_delta * p.c_delta * unit(xi - eta);
}

/// Residual of the equal-speed scaling identity
///
///   |xi| grad_xi phi = (eta - xi)/|eta - xi| phi + sigma |eta| grad_eta phi,
///
/// sigma = +1 for the -+ phase and sigma = -1 for the ++ phase. Exact for
/// those phases; other sign pairs are rejected.
inline double scaling_identity_residual(const Phase& p, const Vec& xi, const Vec& eta) {
  if (!p.equal_speeds())
    throw std::invalid_argument("scaling_identity_residual: identity requires equal speeds");
  double sigma;
  if (p.sign_eta == 1 && p.sign_delta == 1)
    sigma = -1.0;
  else if (p.sign_eta == -1 && p.sign_delta == 1)
    sigma = 1.0;
  else
    throw std::invalid_argument("scaling_identity_residual: unsupported sign pair " + p.label());
  detail::require_off_axis(xi, "xi = 0", "scaling_identity_residual");
  detail::require_off_axis(eta, "eta = 0", "scaling_identity_residual");
  detail::require_off_axis(xi - eta, "xi - eta = 0", "scaling_identity_residual");
  Vec lhs = norm(xi) * phase_grad_xi(p, xi, eta);
  Vec rhs = unit(eta - xi) * phase_value(p, xi, eta) + sigma * norm(eta) * phase_grad_eta(p, xi, eta);
  return norm(lhs - rhs);
}

/// Residual of the rationalized reciprocal of the -+ phase,
///
///   1/phi = -(1/2) (|xi| + |eta| + |xi-eta|) / (xi.eta + |xi||eta|),
///
/// valid where xi.eta + |xi||eta| >= (3/4)|xi||eta| (the chi_+ support).
/// Unit speeds only.
inline double reciprocal_phase_residual(const Vec& xi, const Vec& eta) {
  detail::require_off_axis(xi, "xi = 0", "reciprocal_phase_residual");
  detail::require_off_axis(eta, "eta = 0", "reciprocal_phase_residual");
  detail::require_off_axis(xi - eta, "xi - eta = 0", "reciprocal_phase_residual");
  double denom = dot(xi, eta) + norm(xi) * norm(eta);
  if (denom < 0.75 * norm(xi) * norm(eta))
    throw std::domain_error("reciprocal_phase_residual: point outside the chi_+ support");
  double phi = phase_value(Phase::minus_plus(), xi, eta);
  double rhs = -0.5 * (norm(xi) + norm(eta) + norm(xi - eta)) / denom;
  return std::abs(1.0 / phi - rhs);
}

/// Residual of the space-resonance identity for the -+ phase,
///
///   phi = -(1/2) [ (|xi|+|eta|+|xi-eta|) |eta||xi-eta|
///                  / (xi.(xi-eta) + |xi||xi-eta|) ] |grad_eta phi|^2,
///
/// on the chi_- support cos(xi, xi-eta) >= -1/4. The -1/2 prefactor is
/// forced by the factorization (|xi-eta|-|eta|)^2 - |xi|^2
/// = phi (|xi| + |xi-eta| - |eta|). Unit speeds only.
inline double space_resonance_identity_residual(const Vec& xi, const Vec& eta) {
  detail::require_off_axis(xi, "xi = 0", "space_resonance_identity_residual");
  detail::require_off_axis(eta, "eta = 0", "space_resonance_identity_residual");
  detail::require_off_axis(xi - eta, "xi - eta = 0", "space_resonance_identity_residual");
  Vec delta = xi - eta;
  double denom = dot(xi, delta) + norm(xi) * norm(delta);
  if (denom < 0.75 * norm(xi) * norm(delta))
    throw std::domain_error("space_resonance_identity_residual: point outside the chi_- support");
  Phase p = Phase::minus_plus();
  double phi = phase_value(p, xi, eta);
  Vec grad = phase_grad_eta(p, xi, eta);
  double bracket = (norm(xi) + norm(eta) + norm(delta)) * (norm(eta) * norm(delta)) / denom;
  return std::abs(phi + 0.5 * bracket * dot(grad, grad));
}

/// Quintic smoothstep ramp, 0 for x <= -1/4, 1 for x >= 1/4, C^2 monotone
/// in between with ramp(0) = 1/2.
inline double cutoff_ramp(double x) {
  if (x <= -0.25) return 0.0;
  if (x >= 0.25) return 1.0;
  double t = (x + 0.25) * 2.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

/// Angular cutoff chi_+(xi, eta) = ramp( xi/|xi| . (eta - xi)/|eta - xi| ).
/// chi_- = 1 - chi_+ localizes around the -+ space-time resonant set.
inline double angular_cutoff(const Vec& xi, const Vec& eta) {
  detail::require_off_axis(xi, "xi = 0", "angular_cutoff");
  detail::require_off_axis(eta - xi, "eta - xi = 0", "angular_cutoff");
  return cutoff_ramp(dot(unit(xi), unit(eta - xi)));
}

/// Exponent bundle for the a-priori norm: Sobolev index N and the small
/// exponents (eps, gamma, a, b) with 0 < gamma < b < a/3 and a < 1/8.
struct XNormParams {
  int sobolev_index;
  double eps;
  double gamma;
  double a;
  double b;

  XNormParams(int N, double eps_, double gamma_, double a_, double b_)
      : sobolev_index(N), eps(eps_), gamma(gamma_), a(a_), b(b_) {
    if (N < 2) throw std::invalid_argument("XNormParams: Sobolev index must be >= 2");
    if (!(eps > 0.0)) throw std::invalid_argument("XNormParams: eps must be positive");
    if (!(0.0 < gamma && gamma < b && b < a / 3.0 && a < 0.125))
      throw std::invalid_argument(
          "XNormParams: exponents must satisfy 0 < gamma < b < a/3 and a < 1/8");
  }

  static XNormParams desk_scale() { return XNormParams(5, 0.01, 0.01, 0.12, 0.03); }
};

}  // namespace reso
