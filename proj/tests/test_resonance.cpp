#include <catch2/catch_amalgamated.hpp>

#include "reso/resonance.hpp"

using namespace reso;

namespace {

}  // namespace

TEST_CASE("analytic oracle at pinned points") {
  auto at = [](ResonanceCase c, Vec xi, Vec eta) {
    return analytic_resonance_oracle(c, xi, eta, 1e-9);
  };
  auto mp = at(ResonanceCase::mp, Vec(1, 0, 0), Vec(-2, 0, 0));
  CHECK(mp.in_time);
  CHECK(mp.in_space);
  CHECK(mp.in_spacetime);
  auto pp = at(ResonanceCase::pp, Vec(1, 0, 0), Vec(0.5, 0, 0));
  CHECK(pp.in_time);
  CHECK(pp.in_space);
  CHECK(pp.in_spacetime);
  auto mp2 = at(ResonanceCase::mp, Vec(1, 0, 0), Vec(3, 0, 0));
  CHECK_FALSE(mp2.in_time);
  CHECK(mp2.in_space);
  CHECK_FALSE(mp2.in_spacetime);
  auto mm = at(ResonanceCase::mm, Vec(1, 0, 0), Vec(0.5, 0, 0));
  CHECK_FALSE(mm.in_time);
  CHECK(mm.in_space);
  CHECK_FALSE(mm.in_spacetime);
}

TEST_CASE("masks agree with the oracle on a 32^3 slice") {
  auto grid = make_grid(3, 32, 16.0 * kPi);  // dxi = 1/8
  Vec xi(1, 0, 0);
  double tol = recommended_mask_tol(*grid, xi);

  SECTION("minus-minus: no time resonances away from the origin") {
    auto masks = resonance_masks(Phase::minus_minus(), xi, grid, tol);
    CHECK(masks.count(masks.time_mask) == 0);
    CHECK(masks.count(masks.spacetime_mask) == 0);
    CHECK(masks.count(masks.space_mask) > 0);  // the collinear segment
    auto agree = mask_oracle_agreement(ResonanceCase::mm, masks);
    CHECK(agree.beyond_cell == 0);
  }
  SECTION("plus-plus: all three sets coincide") {
    auto masks = resonance_masks(Phase::plus_plus(), xi, grid, tol);
    auto agree = mask_oracle_agreement(ResonanceCase::pp, masks);
    CHECK(agree.beyond_cell == 0);
    CHECK(agree.time_space_symdiff_within_cell);
    CHECK(agree.time_count > 0);
  }
  SECTION("minus-plus: time set strictly inside the space set") {
    auto masks = resonance_masks(Phase::minus_plus(), xi, grid, tol);
    auto agree = mask_oracle_agreement(ResonanceCase::mp, masks);
    CHECK(agree.beyond_cell == 0);
    CHECK(agree.strict_inclusion_witnesses >= 20);  // lambda >= 1 sleeve on this lattice
    // spacetime mask = time AND space pointwise
    for (std::size_t i = 0; i < grid->size(); ++i)
      CHECK(masks.spacetime_mask[i] == (masks.time_mask[i] && masks.space_mask[i]));
  }
  SECTION("guards") {
    CHECK_THROWS_AS(resonance_masks(Phase::plus_plus(), Vec(0, 0, 0), grid, tol),
                    std::invalid_argument);
    CHECK_THROWS_AS(resonance_masks(Phase::plus_plus(), xi, grid, 0.0), std::invalid_argument);
  }
}

TEST_CASE("multi-speed mixed-sign phase has no time resonances") {
  // speeds (2, 1, 1) with the (vbar, v) interaction: |phi| >= (c-1)|xi|
  // (the equal-sign pair instead resonates on an ellipsoid and is not
  // covered by the bound)
  auto grid = make_grid(3, 32, 16.0 * kPi);
  Vec xi(1, 0, 0);
  for (auto p : {Phase::from_signs(-1, 1, 2.0, 1.0, 1.0), Phase::from_signs(1, -1, 2.0, 1.0, 1.0)}) {
    auto masks = resonance_masks(p, xi, grid, recommended_mask_tol(*grid, xi));
    CHECK(masks.count(masks.time_mask) == 0);
    CHECK(masks.count(masks.spacetime_mask) == 0);
  }
}

TEST_CASE("null-condition checker verdicts") {
  NullCheckConfig cfg;
  cfg.bulk_samples = 3000;
  cfg.shell_samples = 200;

  SECTION("null forms are non-resonant") {
    auto rep = null_condition_check(null_form_q0(-1, 1), Phase::minus_plus(), cfg);
    CHECK(rep.verdict == "non-resonant");
    CHECK(rep.sup_ratio <= 2.5);
    auto rep2 = null_condition_check(null_form_qij(1, 2), Phase::plus_plus(), cfg);
    CHECK(rep2.verdict == "non-resonant");
    auto rep3 = null_condition_check(null_form_q0i(2, 1, 1), Phase::plus_plus(), cfg);
    CHECK(rep3.verdict == "non-resonant");
  }
  SECTION("q = 1 is resonant for ++ and -+") {
    auto pp = null_condition_check(symbol_one(), Phase::plus_plus(), cfg);
    CHECK(pp.verdict == "resonant");
    auto mp = null_condition_check(symbol_one(), Phase::minus_plus(), cfg);
    CHECK(mp.verdict == "resonant");
  }
  SECTION("q = phi/|eta| is exactly decomposable") {
    auto rep = null_condition_check(symbol_phi_over_eta(Phase::minus_plus()), Phase::minus_plus(), cfg);
    CHECK(rep.verdict == "non-resonant");
    CHECK(rep.witness_residual_rms < 1e-6);
  }
  SECTION("verdicts are invariant under positive rescaling of q") {
    BilinearSymbol q = symbol_one();
    BilinearSymbol q5 = q;
    q5.eval = [](const Vec&, const Vec&) { return Complex(5.0); };
    auto a = null_condition_check(q, Phase::plus_plus(), cfg);
    auto b = null_condition_check(q5, Phase::plus_plus(), cfg);
    CHECK(a.verdict == b.verdict);
    BilinearSymbol m0 = null_form_q0(1, 1);
    BilinearSymbol m0s = m0;
    auto base_eval = m0.eval;
    m0s.eval = [base_eval](const Vec& xi, const Vec& eta) { return 7.0 * base_eval(xi, eta); };
    auto c = null_condition_check(m0, Phase::plus_plus(), cfg);
    auto d = null_condition_check(m0s, Phase::plus_plus(), cfg);
    CHECK(c.verdict == d.verdict);
  }
  SECTION("verdict is invariant under the eta -> xi - eta relabeling") {
    // relabeled symbol against the mirrored phase
    BilinearSymbol q = null_form_q0i(1, -1, 1);
    BilinearSymbol qm = q;
    auto base_eval = q.eval;
    qm.eval = [base_eval](const Vec& xi, const Vec& eta) { return base_eval(xi, xi - eta); };
    auto a = null_condition_check(q, Phase::minus_plus(), cfg);
    auto b = null_condition_check(qm, Phase::minus_plus().mirrored(), cfg);
    CHECK(a.verdict == b.verdict);
    BilinearSymbol one = symbol_one();
    auto c = null_condition_check(one, Phase::plus_plus(), cfg);
    auto d = null_condition_check(one, Phase::plus_plus().mirrored(), cfg);
    CHECK(c.verdict == d.verdict);
  }
  SECTION("degenerate sampler config is rejected") {
    NullCheckConfig bad = cfg;
    bad.bulk_samples = 0;
    CHECK_THROWS_AS(null_condition_check(symbol_one(), Phase::plus_plus(), bad),
                    std::runtime_error);
  }
}

TEST_CASE("restriction singularity check") {
  SECTION("1/|eta| passes") {
    auto rep = restriction_singularity_check(symbol_eta_inverse());
    CHECK(rep.pass);
    CHECK(rep.grad_exponent_eta <= 1.1);
    CHECK(rep.a_exponent_xi <= 0.5);
  }
  SECTION("1/|xi| fails") {
    BilinearSymbol xi_inv;
    xi_inv.eval = [](const Vec& xi, const Vec&) { return Complex(1.0 / norm(xi)); };
    xi_inv.homogeneity = -1.0;
    xi_inv.singular_xi = true;
    auto rep = restriction_singularity_check(xi_inv);
    CHECK_FALSE(rep.pass);
    CHECK(rep.a_exponent_xi > 0.5);
  }
  SECTION("1/|xi-eta| passes") {
    BilinearSymbol delta_inv;
    delta_inv.eval = [](const Vec& xi, const Vec& eta) { return Complex(1.0 / norm(xi - eta)); };
    delta_inv.homogeneity = -1.0;
    delta_inv.singular_delta = true;
    auto rep = restriction_singularity_check(delta_inv);
    CHECK(rep.pass);
  }
  SECTION("homogeneity guard") {
    CHECK_THROWS_AS(restriction_singularity_check(symbol_one()), std::invalid_argument);
  }
}
