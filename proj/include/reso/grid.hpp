#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "reso/vec.hpp"

namespace reso {

inline constexpr double kPi = 3.14159265358979323846;

/// Periodic grid on a d-dimensional torus of period L with N points per
/// axis. Physical coordinates are box-centered, x_j = (j - N/2) L/N, and the
/// frequency lattice is xi = (2pi/L) k with integer k in [-N/2, N/2).
/// Arrays are row-major over axes with the last axis fastest, and frequency
/// arrays use FFT index order (k = 0..N/2-1, -N/2..-1 per axis).
class Grid {
 public:
  Grid(int dim, int points_per_axis, double box_length)
      : dim_(dim), n_(points_per_axis), length_(box_length) {
    if (dim != 2 && dim != 3)
      throw std::invalid_argument("Grid: dimension must be 2 or 3, got " + std::to_string(dim));
    if (n_ < 8 || (n_ & (n_ - 1)) != 0)
      throw std::invalid_argument("Grid: points per axis must be a power of two >= 8, got " +
                                  std::to_string(n_));
    if (!(length_ > 0.0))
      throw std::invalid_argument("Grid: box length must be positive");
    size_ = 1;
    for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);
  }

  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  double box_length() const { return length_; }
  std::size_t size() const { return size_; }

  double dx() const { return length_ / n_; }
  double dxi() const { return 2.0 * kPi / length_; }
  /// Largest frequency magnitude on the lattice (corner mode).
  double xi_max() const { return dxi() * (n_ / 2) * std::sqrt(static_cast<double>(dim_)); }

  /// Signed integer mode for a raw FFT index on one axis.
  int index_to_mode(int r) const { return r < n_ / 2 ? r : r - n_; }
  int mode_to_index(int k) const { return k >= 0 ? k : k + n_; }

  void unflatten(std::size_t flat, int* idx) const {
    for (int a = dim_ - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(flat % n_);
      flat /= n_;
    }
  }
  std::size_t flatten(const int* idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) flat = flat * n_ + static_cast<std::size_t>(idx[a]);
    return flat;
  }

  /// Frequency vector at a flat index (FFT order).
  Vec frequency(std::size_t flat) const {
    int idx[3] = {0, 0, 0};
    unflatten(flat, idx);
    Vec xi;
    for (int a = 0; a < dim_; ++a) xi[a] = dxi() * index_to_mode(idx[a]);
    return xi;
  }

  /// Box-centered physical coordinate at a flat index.
  Vec coordinate(std::size_t flat) const {
    int idx[3] = {0, 0, 0};
    unflatten(flat, idx);
    Vec x;
    for (int a = 0; a < dim_; ++a) x[a] = dx() * (idx[a] - n_ / 2);
    return x;
  }

  /// Parity (-1)^(k_1+...+k_d) of a flat index; the twiddle that recenters
  /// the transform on box-centered coordinates.
  double center_sign(std::size_t flat) const {
    int idx[3] = {0, 0, 0};
    unflatten(flat, idx);
    int s = 0;
    for (int a = 0; a < dim_; ++a) s += idx[a];
    return (s & 1) ? -1.0 : 1.0;
  }

  /// Cached |xi| per lattice point.
  const std::vector<double>& radii() const {
    std::call_once(radii_once_, [this] {
      radii_.resize(size_);
      for (std::size_t i = 0; i < size_; ++i) radii_[i] = norm(frequency(i));
    });
    return radii_;
  }

  bool same_as(const Grid& o) const {
    return dim_ == o.dim_ && n_ == o.n_ && length_ == o.length_;
  }

 private:
  int dim_;
  int n_;
  double length_;
  std::size_t size_;
  mutable std::vector<double> radii_;
  mutable std::once_flag radii_once_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(int dim, int points_per_axis, double box_length) {
  return std::make_shared<const Grid>(dim, points_per_axis, box_length);
}

}  // namespace reso
