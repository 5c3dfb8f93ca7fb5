#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "reso/phase.hpp"
#include "reso/vec.hpp"

namespace reso {

/// A linear Fourier multiplier sigma(k), the building block of separable
/// bilinear forms. Singular multipliers take the value 0 at k = 0 (the
/// Mihlin convention used throughout).
struct LinearMultiplier {
  std::function<Complex(const Vec&)> eval;
  std::string descriptor;

  Complex operator()(const Vec& k) const { return eval(k); }

  static LinearMultiplier constant(Complex c) {
    std::ostringstream d;
    d << "const(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    return {[c](const Vec&) { return c; }, d.str()};
  }
  static LinearMultiplier identity() { return constant(Complex(1.0)); }
  /// coeff * k_axis / |k| (direction cosine), 0 at k = 0. Axis is 0-based.
  static LinearMultiplier direction(int axis, double coeff = 1.0) {
    std::ostringstream d;
    d << "dir(" << axis << ", " << coeff << ")";
    return {[axis, coeff](const Vec& k) {
              double r = norm(k);
              return r == 0.0 ? Complex(0.0) : Complex(coeff * k[axis] / r, 0.0);
            },
            d.str()};
  }
  /// coeff * |k|^s, 0 at k = 0 for s < 0.
  static LinearMultiplier power(double s, double coeff = 1.0) {
    std::ostringstream d;
    d << "pow(" << s << ", " << coeff << ")";
    return {[s, coeff](const Vec& k) {
              double r = norm(k);
              if (r == 0.0) return s > 0.0 ? Complex(0.0) : (s == 0.0 ? Complex(coeff) : Complex(0.0));
              return Complex(coeff * std::pow(r, s), 0.0);
            },
            d.str()};
  }
};

enum class Regime { exact, low_high, high_low, high_high };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::exact: return "exact";
    case Regime::low_high: return "low-high";
    case Regime::high_low: return "high-low";
    default: return "high-high";
  }
}

/// One separated term: T(f, g) += M_out( M_first f . M_second g ), with an
/// optional paraproduct regime restriction on the Littlewood-Paley pairing
/// of the two arguments.
struct SeparableTerm {
  LinearMultiplier out = LinearMultiplier::identity();
  LinearMultiplier first = LinearMultiplier::identity();
  LinearMultiplier second = LinearMultiplier::identity();
  Regime regime = Regime::exact;
};

/// Finite sum of separated terms. For exact terms the pointwise symbol is
/// sum_k out(xi) first(eta) second(xi - eta).
struct SeparableForm {
  std::vector<SeparableTerm> terms;
  /// Sampled sup-norm error of the separated symbol against the original
  /// evaluator (zero for exact factorizations).
  double sampled_error = 0.0;

  Complex eval_symbol(const Vec& xi, const Vec& eta) const {
    Complex s{};
    for (const auto& t : terms) s += t.out(xi) * t.first(eta) * t.second(xi - eta);
    return s;
  }
};

enum class SymbolAxis { xi = 0, eta = 1, delta = 2 };  // delta means xi - eta

/// A bilinear symbol m(xi, eta) with its homogeneity degree, declared
/// singular axes, and an optional separable (Riesz-product) form. On a
/// declared singular axis the lattice value is 0; elsewhere the evaluator
/// must be finite.
struct BilinearSymbol {
  std::function<Complex(const Vec&, const Vec&)> eval;
  double homogeneity = 0.0;
  bool singular_xi = false;
  bool singular_eta = false;
  bool singular_delta = false;
  std::optional<SeparableForm> separable;
  std::string name = "symbol";

  bool on_declared_axis(const Vec& xi, const Vec& eta) const {
    if (singular_xi && norm(xi) == 0.0) return true;
    if (singular_eta && norm(eta) == 0.0) return true;
    if (singular_delta && norm(xi - eta) == 0.0) return true;
    return false;
  }

  /// Evaluation rule used by lattice quadratures: declared singular axes
  /// contribute 0; everywhere else the evaluator must be total (symbols that
  /// are smooth on the axes but undefined at the origin guard it themselves).
  Complex eval_on_lattice(const Vec& xi, const Vec& eta) const {
    if (on_declared_axis(xi, eta)) return Complex(0.0);
    return eval(xi, eta);
  }
};

/// q == 1, the resonant reference symbol; T_1(f, g) = f g.
inline BilinearSymbol symbol_one() {
  BilinearSymbol s;
  s.eval = [](const Vec&, const Vec&) { return Complex(1.0); };
  s.homogeneity = 0.0;
  s.name = "one";
  SeparableForm form;
  form.terms.push_back({});
  s.separable = form;
  return s;
}

/// Null-form symbol m_0 = |grad_eta phi|^2
///                      = 2 (1 - s_eta s_delta (eta/|eta|).((xi-eta)/|xi-eta|)),
/// with the exact Riesz-product form
///   T_{m_0}(f, g) = 2 f g - 2 s_eta s_delta sum_a (N_a f)(N_a g),
/// where N_a is the direction multiplier k_a/|k|.
inline BilinearSymbol null_form_q0(int s_eta, int s_delta, int dim = 3) {
  if ((s_eta != 1 && s_eta != -1) || (s_delta != 1 && s_delta != -1))
    throw std::invalid_argument("null_form_q0: signs must be +1 or -1");
  double prod = static_cast<double>(s_eta * s_delta);
  BilinearSymbol s;
  s.eval = [prod](const Vec& xi, const Vec& eta) {
    return Complex(2.0 * (1.0 - prod * dot(unit(eta), unit(xi - eta))), 0.0);
  };
  s.homogeneity = 0.0;
  s.singular_eta = s.singular_delta = true;
  s.name = std::string("Q0^") + (s_eta > 0 ? "+" : "-") + (s_delta > 0 ? "+" : "-");
  SeparableForm form;
  form.terms.push_back({LinearMultiplier::identity(), LinearMultiplier::constant(2.0),
                        LinearMultiplier::identity()});
  for (int a = 0; a < dim; ++a)
    form.terms.push_back({LinearMultiplier::identity(), LinearMultiplier::direction(a, -2.0 * prod),
                          LinearMultiplier::direction(a)});
  s.separable = form;
  return s;
}

/// Null-form symbol m_{0i} = partial_{eta_i} phi, i in 1..d.
inline BilinearSymbol null_form_q0i(int i, int s_eta, int s_delta, int dim = 3) {
  if (i < 1 || i > dim) throw std::invalid_argument("null_form_q0i: index must be in 1..d");
  if ((s_eta != 1 && s_eta != -1) || (s_delta != 1 && s_delta != -1))
    throw std::invalid_argument("null_form_q0i: signs must be +1 or -1");
  int a = i - 1;
  double se = s_eta, sd = s_delta;
  BilinearSymbol s;
  s.eval = [a, se, sd](const Vec& xi, const Vec& eta) {
    return Complex(se * eta[a] / norm(eta) + sd * (eta[a] - xi[a]) / norm(xi - eta), 0.0);
  };
  s.homogeneity = 0.0;
  s.singular_eta = s.singular_delta = true;
  s.name = "Q0" + std::to_string(i);
  SeparableForm form;
  form.terms.push_back(
      {LinearMultiplier::identity(), LinearMultiplier::direction(a, se), LinearMultiplier::identity()});
  form.terms.push_back(
      {LinearMultiplier::identity(), LinearMultiplier::identity(), LinearMultiplier::direction(a, -sd)});
  s.separable = form;
  return s;
}

/// Null-form symbol m_{ij} = 2 (eta_i xi_j - eta_j xi_i) / (|eta||xi-eta|),
/// 1 <= i < j <= d; the same for every sign pair. Expanding
/// eta_i xi_j - eta_j xi_i = eta_i (xi-eta)_j - eta_j (xi-eta)_i gives the
/// exact two-term Riesz form.
inline BilinearSymbol null_form_qij(int i, int j, int dim = 3) {
  if (i < 1 || j <= i || j > dim)
    throw std::invalid_argument("null_form_qij: indices must satisfy 1 <= i < j <= d");
  int a = i - 1, b = j - 1;
  BilinearSymbol s;
  s.eval = [a, b](const Vec& xi, const Vec& eta) {
    return Complex(2.0 * (eta[a] * xi[b] - eta[b] * xi[a]) / (norm(eta) * norm(xi - eta)), 0.0);
  };
  s.homogeneity = 0.0;
  s.singular_eta = s.singular_delta = true;
  s.name = "Q" + std::to_string(i) + std::to_string(j);
  SeparableForm form;
  form.terms.push_back(
      {LinearMultiplier::identity(), LinearMultiplier::direction(a, 2.0), LinearMultiplier::direction(b)});
  form.terms.push_back(
      {LinearMultiplier::identity(), LinearMultiplier::direction(b, -2.0), LinearMultiplier::direction(a)});
  s.separable = form;
  return s;
}

/// q = phi(xi, eta)/|eta|, the canonical exactly non-resonant time-resonance
/// witness (a = 1/|eta|, b = 0).
inline BilinearSymbol symbol_phi_over_eta(const Phase& p) {
  BilinearSymbol s;
  s.eval = [p](const Vec& xi, const Vec& eta) {
    return Complex(phase_value(p, xi, eta) / norm(eta), 0.0);
  };
  s.homogeneity = 0.0;
  s.singular_eta = true;
  s.name = "phi_" + p.label() + "/|eta|";
  return s;
}

/// m = 1/|eta|, homogeneity -1; exactly separable as T(f, g) = (Lambda^{-1} f) g.
inline BilinearSymbol symbol_eta_inverse() {
  BilinearSymbol s;
  s.eval = [](const Vec&, const Vec& eta) { return Complex(1.0 / norm(eta), 0.0); };
  s.homogeneity = -1.0;
  s.singular_eta = true;
  s.name = "1/|eta|";
  SeparableForm form;
  form.terms.push_back(
      {LinearMultiplier::identity(), LinearMultiplier::power(-1.0), LinearMultiplier::identity()});
  s.separable = form;
  return s;
}

/// Smooth Coifman-Meyer-type test symbol exp(-|xi-eta|^2 / (|xi|^2+|eta|^2)),
/// homogeneous of degree 0 and smooth away from the origin. Used as the
/// compression and boundedness benchmark.
inline BilinearSymbol symbol_cm_test() {
  BilinearSymbol s;
  s.eval = [](const Vec& xi, const Vec& eta) {
    double denom = dot(xi, xi) + dot(eta, eta);
    if (denom == 0.0) return Complex(0.0);
    Vec d = xi - eta;
    return Complex(std::exp(-dot(d, d) / denom), 0.0);
  };
  s.homogeneity = 0.0;
  s.name = "cm_test";
  return s;
}

/// |xi|^{-s} m(xi, eta): normalizes a degree-s symbol to degree 0 for the
/// null-condition checker.
inline BilinearSymbol normalized_to_degree_zero(const BilinearSymbol& m) {
  if (m.homogeneity == 0.0) return m;
  BilinearSymbol s = m;
  double deg = m.homogeneity;
  auto base = m.eval;
  s.eval = [base, deg](const Vec& xi, const Vec& eta) {
    return base(xi, eta) * std::pow(norm(xi), -deg);
  };
  s.homogeneity = 0.0;
  s.singular_xi = true;
  s.separable.reset();
  s.name = m.name + "/|xi|^" + std::to_string(deg);
  return s;
}

}  // namespace reso
