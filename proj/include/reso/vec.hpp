#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>

namespace reso {

using Complex = std::complex<double>;

/// Small fixed-size vector for frequency/space points. 2-d problems embed
/// with a zero third component; all norms and dot products are then
/// identical to the intrinsic 2-d ones.
struct Vec {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  Vec() = default;
  Vec(double x, double y, double z = 0.0) : v{x, y, z} {}

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }

  Vec operator+(const Vec& o) const { return {v[0] + o[0], v[1] + o[1], v[2] + o[2]}; }
  Vec operator-(const Vec& o) const { return {v[0] - o[0], v[1] - o[1], v[2] - o[2]}; }
  Vec operator-() const { return {-v[0], -v[1], -v[2]}; }
  Vec operator*(double s) const { return {v[0] * s, v[1] * s, v[2] * s}; }
  Vec operator/(double s) const { return {v[0] / s, v[1] / s, v[2] / s}; }
  Vec& operator+=(const Vec& o) {
    v[0] += o[0]; v[1] += o[1]; v[2] += o[2];
    return *this;
  }

  friend Vec operator*(double s, const Vec& a) { return a * s; }

  friend double dot(const Vec& a, const Vec& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  }
  friend double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
  friend Vec unit(const Vec& a) { return a / norm(a); }

  friend std::ostream& operator<<(std::ostream& os, const Vec& a) {
    return os << "(" << a[0] << ", " << a[1] << ", " << a[2] << ")";
  }
};

}  // namespace reso
