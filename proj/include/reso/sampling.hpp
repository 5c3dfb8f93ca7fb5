#pragma once

#include <cmath>
#include <cstdint>

#include "reso/vec.hpp"

namespace reso {

/// Van der Corput radical inverse in the given base.
inline double radical_inverse(std::uint64_t n, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double scale = inv, x = 0.0;
  while (n) {
    x += static_cast<double>(n % base) * scale;
    n /= base;
    scale *= inv;
  }
  return x;
}

/// Low-discrepancy (Halton) point stream used for quasi-random frequency
/// sampling; deterministic for a given index offset.
class HaltonSampler {
 public:
  explicit HaltonSampler(std::uint64_t offset = 100) : index_(offset) {}

  /// Next point in [0,1)^k, k <= 6.
  void next(double* u, int k) {
    static const std::uint64_t primes[6] = {2, 3, 5, 7, 11, 13};
    ++index_;
    for (int i = 0; i < k; ++i) u[i] = radical_inverse(index_, primes[i]);
  }

  /// Direction on S^2 (or S^1 when dim == 2) from two uniforms.
  static Vec direction(double u0, double u1, int dim) {
    if (dim == 2) {
      double a = 2.0 * kConstPi * u0;
      return Vec(std::cos(a), std::sin(a), 0.0);
    }
    double z = 1.0 - 2.0 * u0;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double a = 2.0 * kConstPi * u1;
    return Vec(r * std::cos(a), r * std::sin(a), z);
  }

  /// Log-uniform radius in [lo, hi].
  static double radius(double u, double lo, double hi) {
    return lo * std::pow(hi / lo, u);
  }

 private:
  static constexpr double kConstPi = 3.14159265358979323846;
  std::uint64_t index_;
};

}  // namespace reso
