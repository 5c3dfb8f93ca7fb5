#pragma once

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "reso/grid.hpp"

namespace reso {

enum class Representation { physical, frequency };
enum class Role { solution, profile };

namespace detail {

/// One cached FFTW plan pair per (dim, N). Transforms run through a private
/// FFTW-aligned buffer under a lock; callers copy in and out.
class FftPlans {
 public:
  FftPlans(int dim, int n) {
    std::size_t sz = 1;
    int dims[3] = {n, n, n};
    for (int a = 0; a < dim; ++a) sz *= static_cast<std::size_t>(n);
    size_ = sz;
    buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * sz));
    if (!buf_) throw std::bad_alloc();
    forward_ = fftw_plan_dft(dim, dims, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft(dim, dims, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftPlans() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buf_);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  void execute(const Complex* in, Complex* out, bool forward) {
    std::lock_guard<std::mutex> lock(mutex_);
    // std::complex<double> and fftw_complex share the (re, im) double layout
    std::memcpy(static_cast<void*>(buf_), static_cast<const void*>(in), sizeof(Complex) * size_);
    fftw_execute(forward ? forward_ : backward_);
    std::memcpy(static_cast<void*>(out), static_cast<const void*>(buf_), sizeof(Complex) * size_);
  }

 private:
  std::size_t size_;
  fftw_complex* buf_;
  fftw_plan forward_;
  fftw_plan backward_;
  std::mutex mutex_;
};

inline FftPlans& fft_plans_for(const Grid& g) {
  static std::mutex registry_mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<FftPlans>> registry;
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto key = std::make_pair(g.dim(), g.points_per_axis());
  auto it = registry.find(key);
  if (it == registry.end())
    it = registry.emplace(key, std::make_unique<FftPlans>(g.dim(), g.points_per_axis())).first;
  return *it->second;
}

}  // namespace detail

/// Complex scalar field on a Grid, tagged with its representation and with
/// its role in the wave system (solution u vs. profile f = e^{-it c Lambda} u).
///
/// Transform convention: the forward transform carries 1/N^d,
///   fhat(xi_k) = N^{-d} sum_j f(x_j) e^{-i xi_k . x_j},   x_j box-centered,
/// so f(x_j) = sum_k fhat(xi_k) e^{i xi_k . x_j} exactly.
class SpectralField {
 public:
  SpectralField(GridPtr grid, Representation rep, Role role = Role::solution)
      : grid_(std::move(grid)), rep_(rep), role_(role), values_(grid_->size(), Complex{}) {}

  SpectralField(GridPtr grid, std::vector<Complex> values, Representation rep,
                Role role = Role::solution)
      : grid_(std::move(grid)), rep_(rep), role_(role), values_(std::move(values)) {
    if (values_.size() != grid_->size())
      throw std::invalid_argument("SpectralField: value count does not match grid");
  }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Representation representation() const { return rep_; }
  Role role() const { return role_; }
  void set_role(Role r) { role_ = r; }

  std::size_t size() const { return values_.size(); }
  Complex& operator[](std::size_t i) { return values_[i]; }
  Complex operator[](std::size_t i) const { return values_[i]; }
  std::vector<Complex>& values() { return values_; }
  const std::vector<Complex>& values() const { return values_; }

 private:
  GridPtr grid_;
  Representation rep_;
  Role role_;
  std::vector<Complex> values_;
};

inline SpectralField to_frequency(const SpectralField& f) {
  if (f.representation() == Representation::frequency) return f;
  const Grid& g = f.grid();
  SpectralField out(f.grid_ptr(), Representation::frequency, f.role());
  detail::fft_plans_for(g).execute(f.values().data(), out.values().data(), true);
  double scale = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] *= g.center_sign(i) * scale;
  return out;
}

inline SpectralField to_physical(const SpectralField& f) {
  if (f.representation() == Representation::physical) return f;
  const Grid& g = f.grid();
  SpectralField tmp(f.grid_ptr(), Representation::physical, f.role());
  std::vector<Complex> twiddled(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) twiddled[i] = f[i] * g.center_sign(i);
  detail::fft_plans_for(g).execute(twiddled.data(), tmp.values().data(), false);
  return tmp;
}

inline SpectralField in_representation(const SpectralField& f, Representation rep) {
  return rep == Representation::frequency ? to_frequency(f) : to_physical(f);
}

inline void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!a.grid().same_as(b.grid()))
    throw std::invalid_argument("fields live on different grids");
}

/// a + s*b, matching representations required.
inline SpectralField axpy(const SpectralField& a, Complex s, const SpectralField& b) {
  require_same_grid(a, b);
  if (a.representation() != b.representation())
    throw std::invalid_argument("axpy: representation mismatch");
  SpectralField out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * b[i];
  return out;
}

inline SpectralField scaled(const SpectralField& a, Complex s) {
  SpectralField out = a;
  for (auto& v : out.values()) v *= s;
  return out;
}

/// Complex conjugate of the field. In frequency representation this is
/// conj(fhat(-xi)) with the torus-wrapped index reversal.
inline SpectralField conjugate(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(f.grid_ptr(), f.representation(), f.role());
  if (f.representation() == Representation::physical) {
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::conj(f[i]);
    return out;
  }
  int n = g.points_per_axis();
  for (std::size_t i = 0; i < f.size(); ++i) {
    int idx[3] = {0, 0, 0};
    g.unflatten(i, idx);
    int ridx[3] = {0, 0, 0};
    for (int a = 0; a < g.dim(); ++a) ridx[a] = (n - idx[a]) % n;
    out[i] = std::conj(f[g.flatten(ridx)]);
  }
  return out;
}

inline bool all_finite(const SpectralField& f) {
  for (const auto& v : f.values())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace reso
