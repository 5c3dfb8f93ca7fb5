#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "reso/grid.hpp"
#include "reso/symbol.hpp"

namespace reso {

/// Sampled low-rank compression of a bounded bilinear symbol into a
/// SeparableForm: an adaptive cross (skeleton) approximation over radius x
/// direction sample boxes, recompressed by an SVD of the skeleton core. The
/// factors stay evaluable because they are linear combinations of the symbol
/// frozen at pivot frequencies, so every compressed term is an ordinary
/// multiplier triple.
///
/// Coordinate pairings per regime follow the paraproduct reduction: the
/// low-high and high-low regimes separate (eta) x (xi - eta), where the
/// remaining output direction stays comparable to the large input; the
/// high-high regime, whose output frequency can reach the Mihlin axis
/// xi = 0, separates (xi) x (eta) instead and carries the xi-side factor in
/// the output multiplier slot.

struct CompressionConfig {
  double radius_lo = 1.0 / 32.0;
  double radius_hi = 32.0;
  int radii_per_side = 14;
  int directions = 32;  // per side; 3-d uses a Fibonacci sphere, 2-d a uniform circle
  int validation_samples = 2000;
  std::uint64_t seed = 20240915;
  int dim = 3;
};

namespace detail {

inline std::vector<Vec> sphere_directions(int count, int dim) {
  std::vector<Vec> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      double a = 2.0 * kPi * (i + 0.5) / count;
      dirs.emplace_back(std::cos(a), std::sin(a), 0.0);
    }
    return dirs;
  }
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int i = 0; i < count; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / count;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double a = 2.0 * kPi * i / golden;
    dirs.emplace_back(r * std::cos(a), r * std::sin(a), z);
  }
  return dirs;
}

inline std::vector<Vec> sample_side(double r_lo, double r_hi, int radii, int directions, int dim) {
  std::vector<Vec> pts;
  auto dirs = sphere_directions(directions, dim);
  for (int ir = 0; ir < radii; ++ir) {
    double t = radii == 1 ? 0.5 : static_cast<double>(ir) / (radii - 1);
    double rad = r_lo * std::pow(r_hi / r_lo, t);
    // stagger directions across radius shells so rows are not collinear
    for (int id = 0; id < directions; ++id) pts.push_back(rad * dirs[(id + ir) % directions]);
  }
  return pts;
}

/// Which two frequency variables the factors live on.
enum class PairKind {
  eta_zeta,  // factors (first-argument, second-argument), identity output
  xi_eta     // factors (output, first-argument), identity second argument
};

inline Complex pair_eval(const BilinearSymbol& m, PairKind kind, const Vec& row, const Vec& col) {
  // row/col are the left/right sample variables of the pairing
  if (kind == PairKind::eta_zeta) return m.eval_on_lattice(row + col, row);  // (eta, zeta)
  return m.eval_on_lattice(row, col);                                        // (xi, eta)
}

struct Skeleton {
  PairKind kind;
  std::vector<Vec> row_pivots;
  std::vector<Vec> col_pivots;
  // left_k(row)  = sum_s a[k][s] pair_eval(row, col_pivot[s])
  // right_k(col) = sum_s b[k][s] pair_eval(row_pivot[s], col)
  std::vector<std::vector<Complex>> a;
  std::vector<std::vector<Complex>> b;
};

/// Full-pivot adaptive cross approximation; stops at the requested rank or
/// at numerical breakdown, whichever comes first. U and V are the numeric
/// factor columns on the samples.
inline Skeleton adaptive_cross(const BilinearSymbol& m, PairKind kind, const std::vector<Vec>& rows,
                               const std::vector<Vec>& cols, int max_rank,
                               std::vector<std::vector<Complex>>* U,
                               std::vector<std::vector<Complex>>* V) {
  const std::size_t nr = rows.size(), nc = cols.size();
  std::vector<Complex> R(nr * nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) R[i * nc + j] = pair_eval(m, kind, rows[i], cols[j]);
  double scale0 = 0.0;
  for (const auto& v : R) scale0 = std::max(scale0, std::abs(v));

  Skeleton out;
  out.kind = kind;
  for (int k = 0; k < max_rank; ++k) {
    std::size_t pi = 0, pj = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        if (std::abs(R[i * nc + j]) > best) {
          best = std::abs(R[i * nc + j]);
          pi = i;
          pj = j;
        }
    if (!(best > 1e-13 * std::max(scale0, 1e-300))) break;
    Complex delta = R[pi * nc + pj];

    std::vector<Complex> u(nr), v(nc);
    for (std::size_t i = 0; i < nr; ++i) u[i] = R[i * nc + pj];
    for (std::size_t j = 0; j < nc; ++j) v[j] = R[pi * nc + j] / delta;
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) R[i * nc + j] -= u[i] * v[j];

    std::size_t kk = static_cast<std::size_t>(k);
    std::vector<Complex> ak(kk + 1, Complex(0.0));
    ak[kk] = Complex(1.0);
    for (std::size_t l = 0; l < kk; ++l) {
      Complex w = (*V)[l][pj];
      for (std::size_t s = 0; s <= l; ++s) ak[s] -= w * out.a[l][s];
    }
    std::vector<Complex> bk(kk + 1, Complex(0.0));
    bk[kk] = Complex(1.0) / delta;
    for (std::size_t l = 0; l < kk; ++l) {
      Complex w = (*U)[l][pi] / delta;
      for (std::size_t s = 0; s <= l; ++s) bk[s] -= w * out.b[l][s];
    }

    out.row_pivots.push_back(rows[pi]);
    out.col_pivots.push_back(cols[pj]);
    out.a.push_back(std::move(ak));
    out.b.push_back(std::move(bk));
    U->push_back(std::move(u));
    V->push_back(std::move(v));
  }
  return out;
}

/// Modified Gram-Schmidt with re-orthogonalization; returns the achieved
/// rank and fills Q (columns) and the upper-triangular R.
inline std::size_t thin_qr(std::vector<std::vector<Complex>>& cols,
                           std::vector<std::vector<Complex>>* r_upper) {
  std::size_t k = cols.size();
  if (k == 0) return 0;
  std::size_t n = cols[0].size();
  r_upper->assign(k, std::vector<Complex>(k, Complex(0.0)));
  double scale = 0.0;
  for (const auto& c : cols)
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
  std::size_t rank = 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Complex> w = cols[j];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < rank; ++i) {
        Complex proj{};
        for (std::size_t t = 0; t < n; ++t) proj += std::conj(cols[i][t]) * w[t];
        if (pass == 0) (*r_upper)[i][j] += proj;
        else (*r_upper)[i][j] += proj;
        for (std::size_t t = 0; t < n; ++t) w[t] -= proj * cols[i][t];
      }
    }
    double nrm = 0.0;
    for (const auto& v : w) nrm += std::norm(v);
    nrm = std::sqrt(nrm);
    if (nrm <= 1e-13 * std::max(scale, 1e-300) * std::sqrt(static_cast<double>(n))) {
      // dependent column: drop it and everything after (triangular shape kept)
      cols.resize(rank);
      for (auto& row : *r_upper) row.resize(k);
      return rank;
    }
    (*r_upper)[j][j] = nrm;
    for (auto& v : w) v /= nrm;
    if (j != rank) cols[rank] = w;
    else cols[j] = w;
    ++rank;
  }
  return rank;
}

/// One-sided Jacobi SVD of a small square complex matrix C = A Sigma B^H.
inline void jacobi_svd(std::vector<std::vector<Complex>> C,  // columns
                       std::vector<std::vector<Complex>>* A, std::vector<double>* sigma,
                       std::vector<std::vector<Complex>>* B) {
  std::size_t k = C.size();
  B->assign(k, std::vector<Complex>(k, Complex(0.0)));
  for (std::size_t i = 0; i < k; ++i) (*B)[i][i] = Complex(1.0);
  std::size_t n = k == 0 ? 0 : C[0].size();
  for (int sweep = 0; sweep < 40; ++sweep) {
    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        Complex g{};
        double aa = 0.0, bb = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
          g += std::conj(C[i][t]) * C[j][t];
          aa += std::norm(C[i][t]);
          bb += std::norm(C[j][t]);
        }
        double offd = std::abs(g) / std::max(std::sqrt(aa * bb), 1e-300);
        worst = std::max(worst, offd);
        if (offd < 1e-14) continue;
        Complex phase = g / std::abs(g);
        // fold the phase into column j, then rotate in the real plane
        for (std::size_t t = 0; t < n; ++t) C[j][t] *= std::conj(phase);
        for (std::size_t t = 0; t < k; ++t) (*B)[j][t] *= std::conj(phase);
        double tau = (bb - aa) / (2.0 * std::abs(g));
        double tt = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + tt * tt), s = tt * c;
        for (std::size_t t = 0; t < n; ++t) {
          Complex ci = C[i][t], cj = C[j][t];
          C[i][t] = c * ci - s * cj;
          C[j][t] = s * ci + c * cj;
        }
        for (std::size_t t = 0; t < k; ++t) {
          Complex bi = (*B)[i][t], bj = (*B)[j][t];
          (*B)[i][t] = c * bi - s * bj;
          (*B)[j][t] = s * bi + c * bj;
        }
      }
    if (worst < 1e-14) break;
  }
  sigma->assign(k, 0.0);
  A->assign(k, std::vector<Complex>(n, Complex(0.0)));
  for (std::size_t i = 0; i < k; ++i) {
    double nrm = 0.0;
    for (std::size_t t = 0; t < n; ++t) nrm += std::norm(C[i][t]);
    nrm = std::sqrt(nrm);
    (*sigma)[i] = nrm;
    if (nrm > 0.0)
      for (std::size_t t = 0; t < n; ++t) (*A)[i][t] = C[i][t] / nrm;
  }
}

inline std::vector<std::vector<Complex>> upper_tri_inverse(
    const std::vector<std::vector<Complex>>& R, std::size_t k) {
  std::vector<std::vector<Complex>> inv(k, std::vector<Complex>(k, Complex(0.0)));
  for (std::size_t j = 0; j < k; ++j) {
    inv[j][j] = Complex(1.0) / R[j][j];
    for (std::size_t i = j; i-- > 0;) {
      Complex s{};
      for (std::size_t t = i + 1; t <= j; ++t) s += R[i][t] * inv[t][j];
      inv[i][j] = -s / R[i][i];
    }
  }
  return inv;
}

/// SVD recompression of a skeleton: replaces the coefficient triangles with
/// the dominant rank-K combination, keeping the same pivot functions. Near-
/// dependent trailing skeleton vectors (smallest pivots) are dropped first
/// so both QR factors stay square and invertible.
inline void recompress(Skeleton* sk, std::vector<std::vector<Complex>> U,
                       std::vector<std::vector<Complex>> V, int rank) {
  std::vector<std::vector<Complex>> Ru, Rv;
  std::size_t kp = U.size();
  while (kp > 0) {
    std::vector<std::vector<Complex>> Ucopy(U.begin(), U.begin() + static_cast<std::ptrdiff_t>(kp));
    std::vector<std::vector<Complex>> Vcopy(V.begin(), V.begin() + static_cast<std::ptrdiff_t>(kp));
    std::size_t ru = thin_qr(Ucopy, &Ru);
    std::size_t rv = thin_qr(Vcopy, &Rv);
    if (ru == kp && rv == kp) {
      U = std::move(Ucopy);
      V = std::move(Vcopy);
      break;
    }
    kp = std::min(ru, rv);
  }
  if (kp == 0) return;
  sk->row_pivots.resize(kp);
  sk->col_pivots.resize(kp);
  sk->a.resize(kp);
  sk->b.resize(kp);

  // core C = Ru * Rv^T (kp x kp), stored column-major for the Jacobi sweep
  std::vector<std::vector<Complex>> C(kp, std::vector<Complex>(kp, Complex(0.0)));
  for (std::size_t j = 0; j < kp; ++j)
    for (std::size_t i = 0; i < kp; ++i) {
      Complex s{};
      for (std::size_t t = 0; t < kp; ++t) s += Ru[i][t] * Rv[j][t];
      C[j][i] = s;
    }
  std::vector<std::vector<Complex>> A, B;
  std::vector<double> sigma;
  jacobi_svd(std::move(C), &A, &sigma, &B);
  std::vector<std::size_t> order(sigma.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
  std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(rank), kp);

  auto Ru_inv = upper_tri_inverse(Ru, kp);
  auto Rv_inv = upper_tri_inverse(Rv, kp);
  // left factor k: sum_l (Ru^{-1} A diag(sigma))[l][k] u_l, expressed through
  // the original coefficient triangles; right factors likewise with conj(B).
  std::vector<std::vector<Complex>> a_new(keep, std::vector<Complex>(kp, Complex(0.0)));
  std::vector<std::vector<Complex>> b_new(keep, std::vector<Complex>(kp, Complex(0.0)));
  for (std::size_t k = 0; k < keep; ++k) {
    std::size_t kk = order[k];
    for (std::size_t l = 0; l < kp; ++l) {
      Complex cl{};
      for (std::size_t i = 0; i < kp; ++i) cl += Ru_inv[l][i] * A[kk][i];
      cl *= sigma[kk];
      for (std::size_t s = 0; s < sk->a[l].size(); ++s) a_new[k][s] += cl * sk->a[l][s];
      Complex cr{};
      for (std::size_t i = 0; i < kp; ++i) cr += Rv_inv[l][i] * std::conj(B[kk][i]);
      for (std::size_t s = 0; s < sk->b[l].size(); ++s) b_new[k][s] += cr * sk->b[l][s];
    }
  }
  sk->a = std::move(a_new);
  sk->b = std::move(b_new);
}

inline void append_terms(const BilinearSymbol& m, const Skeleton& sk, Regime regime,
                         SeparableForm* form) {
  auto sym = std::make_shared<BilinearSymbol>(m);
  PairKind kind = sk.kind;
  for (std::size_t k = 0; k < sk.a.size(); ++k) {
    std::vector<Vec> cols(sk.col_pivots.begin(),
                          sk.col_pivots.begin() + static_cast<std::ptrdiff_t>(sk.a[k].size()));
    std::vector<Vec> rows(sk.row_pivots.begin(),
                          sk.row_pivots.begin() + static_cast<std::ptrdiff_t>(sk.b[k].size()));
    std::vector<Complex> ak = sk.a[k], bk = sk.b[k];
    LinearMultiplier left{[sym, kind, cols, ak](const Vec& x) {
                            Complex s{};
                            for (std::size_t i = 0; i < cols.size(); ++i)
                              s += ak[i] * pair_eval(*sym, kind, x, cols[i]);
                            return s;
                          },
                          "aca-left(" + std::to_string(k) + ")"};
    LinearMultiplier right{[sym, kind, rows, bk](const Vec& x) {
                             Complex s{};
                             for (std::size_t i = 0; i < rows.size(); ++i)
                               s += bk[i] * pair_eval(*sym, kind, rows[i], x);
                             return s;
                           },
                           "aca-right(" + std::to_string(k) + ")"};
    if (kind == PairKind::eta_zeta)
      form->terms.push_back({LinearMultiplier::identity(), left, right, regime});
    else  // xi_eta: left factor rides the output, right factor the first argument
      form->terms.push_back({left, right, LinearMultiplier::identity(), regime});
  }
}

}  // namespace detail

/// Rank-K separable compression of a bounded symbol. With paraproduct_split
/// the low-high / high-low / high-high regimes are compressed separately
/// (rank K each) over the radius boxes their Littlewood-Paley pairings can
/// reach, and the terms carry the regime tag that restricts application;
/// without it one global cross approximation is built and applied
/// unrestricted. Throws if the requested rank exceeds the sampled rank.
inline SeparableForm separable_approximation(const BilinearSymbol& m, int rank,
                                             bool paraproduct_split,
                                             const CompressionConfig& cfg = {}) {
  if (m.homogeneity != 0.0)
    throw std::invalid_argument("separable_approximation: symbol must have homogeneity 0");
  if (rank < 1) throw std::invalid_argument("separable_approximation: rank must be >= 1");

  struct Box {
    double rlo, rhi, clo, chi;
    detail::PairKind kind;
    Regime regime;
  };
  std::vector<Box> boxes;
  if (paraproduct_split) {
    boxes.push_back({cfg.radius_lo, cfg.radius_hi / 4.0, 4.0 * cfg.radius_lo, cfg.radius_hi,
                     detail::PairKind::eta_zeta, Regime::low_high});
    boxes.push_back({4.0 * cfg.radius_lo, cfg.radius_hi, cfg.radius_lo, cfg.radius_hi / 4.0,
                     detail::PairKind::eta_zeta, Regime::high_low});
    // high-high: output frequency from near zero up to 2 max; first argument
    // in its full range
    boxes.push_back({cfg.radius_lo / 4.0, 2.0 * cfg.radius_hi, cfg.radius_lo, cfg.radius_hi,
                     detail::PairKind::xi_eta, Regime::high_high});
  } else {
    boxes.push_back({cfg.radius_lo, cfg.radius_hi, cfg.radius_lo, cfg.radius_hi,
                     detail::PairKind::eta_zeta, Regime::exact});
  }

  SeparableForm form;
  double err = 0.0;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto rand_dir = [&]() {
    if (cfg.dim == 2) {
      double a = 2.0 * kPi * unif(rng);
      return Vec(std::cos(a), std::sin(a), 0.0);
    }
    double z = 1.0 - 2.0 * unif(rng), a = 2.0 * kPi * unif(rng);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Vec(r * std::cos(a), r * std::sin(a), z);
  };

  for (const auto& box : boxes) {
    auto rows = detail::sample_side(box.rlo, box.rhi, cfg.radii_per_side, cfg.directions, cfg.dim);
    auto cols = detail::sample_side(box.clo, box.chi, cfg.radii_per_side, cfg.directions, cfg.dim);
    std::vector<std::vector<Complex>> U, V;
    int oversample = std::min(72, std::max(3 * rank, rank + 24));
    auto sk = detail::adaptive_cross(m, box.kind, rows, cols, oversample, &U, &V);
    if (static_cast<int>(sk.a.size()) < rank)
      throw std::invalid_argument(
          "separable_approximation: requested rank exceeds the sample rank of the symbol");
    detail::recompress(&sk, U, V, rank);
    std::size_t first_term = form.terms.size();
    detail::append_terms(m, sk, box.regime, &form);

    // error: sup over the sample matrix and fresh in-box validation pairs
    auto term_value = [&](const Vec& r, const Vec& c) {
      Complex s{};
      for (std::size_t t = first_term; t < form.terms.size(); ++t) {
        const auto& term = form.terms[t];
        if (box.kind == detail::PairKind::eta_zeta)
          s += term.first(r) * term.second(c);
        else
          s += term.out(r) * term.first(c);
      }
      return s;
    };
    for (std::size_t i = 0; i < rows.size(); i += 3)
      for (std::size_t j = 0; j < cols.size(); j += 3)
        err = std::max(err, std::abs(detail::pair_eval(m, box.kind, rows[i], cols[j]) -
                                     term_value(rows[i], cols[j])));
    for (int s = 0; s < cfg.validation_samples; ++s) {
      Vec r = rand_dir() * (box.rlo * std::pow(box.rhi / box.rlo, unif(rng)));
      Vec c = rand_dir() * (box.clo * std::pow(box.chi / box.clo, unif(rng)));
      err = std::max(err, std::abs(detail::pair_eval(m, box.kind, r, c) - term_value(r, c)));
    }
  }
  form.sampled_error = err;
  return form;
}

}  // namespace reso
