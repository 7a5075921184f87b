#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "twdirac/bw.hpp"
#include "twdirac/harness.hpp"

using namespace twdirac;

namespace {
const SamplePlan kPlan{};
}

TEST_CASE("index application") {
  SplitMix64 rng(5);
  VecC v(16);
  for (int i = 0; i < 16; ++i) v[i] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  Mat4 m = Mat4::Random();
  // applying on index 0 then 1 equals the kronecker action
  const VecC a = apply_on_index(m, apply_on_index(m, v, 2, 0), 2, 1);
  VecC want = VecC::Zero(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) want[i * 4 + j] += m(i, k) * m(j, l) * v[k * 4 + l];
  CHECK((a - want).cwiseAbs().maxCoeff() <= 1e-12);
  // swap is an involution
  CHECK((swap_indices(swap_indices(v)) - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rank 1 coincides with the Dirac pipeline") {
  const double m = 1.0;
  const AnalyticField pw = dirac_plane_wave(Vec3(0.1, -0.05, 0.2), m, 0);
  const auto bw = bw_residual(from_analytic(pw), m, 0, kPlan);
  const auto dirac = residual_dirac(pw, m, kPlan);
  CHECK(std::abs(bw.l2_residual - dirac.l2_residual) <= 1e-14);
  CHECK(bw.relative <= 1e-12);
  SUBCASE("traveling, rank 1, equals the traveling Dirac report") {
    const BoostSpec b = BoostSpec::from_beta(Vec3(0.05, 0.1, -0.08));
    const AnalyticField f = boost_field(pw, b);
    const auto tbw =
        traveling_bw_residual(from_analytic(f), m, b, BoostMode::Exact, 0, kPlan);
    const auto td = residual_traveling_dirac(f, m, b, BoostMode::Exact, kPlan);
    CHECK(std::abs(tbw.l2_residual - td.l2_residual) <= 1e-13);
    CHECK(tbw.relative <= 1e-10);
  }
}

TEST_CASE("rank 2 product solutions satisfy the equation in each index") {
  const double m = 1.0;
  const MultiSpinorField f = dirac_product_wave(Vec3(0.08, 0.02, -0.06), m, 0, 1);
  for (int k = 0; k < 2; ++k) {
    const auto rep = bw_residual(f, m, k, kPlan);
    CHECK(rep.relative <= 1e-12);
    CHECK(rep.pass);
  }
}

TEST_CASE("antisymmetric input flagged symmetric is rejected") {
  MultiSpinorField f = unsymmetrized_product_wave(Vec3(0.1, 0, 0.05), 1.0, 0, 1);
  // antisymmetrize and mislabel
  auto fv = f.value;
  auto fd = f.d;
  f.value = [fv](const FourVector& x) -> VecC {
    const VecC v = fv(x);
    return 0.5 * (v - swap_indices(v));
  };
  f.d = [fd](int mu, const FourVector& x) -> VecC {
    const VecC v = fd(mu, x);
    return 0.5 * (v - swap_indices(v));
  };
  f.symmetric = true;
  CHECK_THROWS_AS(bw_residual(f, 1.0, 0, kPlan), std::invalid_argument);
  CHECK_THROWS_AS(bw_residual(unsymmetrized_product_wave(Vec3(0.1, 0, 0.05), 1.0, 0, 1), 1.0, 5,
                              kPlan),
                  std::out_of_range);
}

TEST_CASE("traveling multi-spinor residuals") {
  const double m = 1.0;
  const BoostSpec b = BoostSpec::from_beta(0.12 * Vec3(0.3, -0.5, 0.8).normalized());
  const MultiSpinorField f0 = dirac_product_wave(Vec3(0.05, -0.03, 0.07), m, 0, 1);
  SUBCASE("zero boost equals the static residual") {
    const BoostSpec b0 = BoostSpec::from_beta(Vec3::Zero());
    for (int k = 0; k < 2; ++k) {
      const auto a = traveling_bw_residual(f0, m, b0, BoostMode::Exact, k, kPlan);
      const auto c = bw_residual(f0, m, k, kPlan);
      CHECK(a.l2_residual == c.l2_residual);
    }
  }
  SUBCASE("boosted product solutions pass in exact mode, per index") {
    const MultiSpinorField f = boost_multispinor(f0, b);
    for (int k = 0; k < 2; ++k) {
      const auto rep = traveling_bw_residual(f, m, b, BoostMode::Exact, k, kPlan);
      CHECK(rep.relative <= 1e-10);
      CHECK(rep.pass);
    }
  }
  SUBCASE("first-order truncation decays at second order") {
    const auto res = order_sweep("bw_first_order", Vec3(0.2, -0.4, 0.89));
    CHECK(res.slope >= 1.7);
    CHECK(res.slope <= 2.3);
    CHECK(res.r2 >= 0.98);
  }
}

TEST_CASE("symmetrization commutes with boosting") {
  const BoostSpec b = BoostSpec::from_beta(Vec3(0.1, 0.05, -0.08));
  const Mat4 s = spinor_boost(b, BoostMode::Exact).matrix;
  const MultiSpinorField f = unsymmetrized_product_wave(Vec3(0.06, -0.02, 0.04), 1.0, 0, 1);
  const MultiSpinorField sym_then_apply = apply_matrix_all_indices(symmetrize(f), s);
  const MultiSpinorField apply_then_sym = symmetrize(apply_matrix_all_indices(f, s));
  for (const auto& x : SamplePlan::randomized(25, 19).events()) {
    CHECK((sym_then_apply.value(x) - apply_then_sym.value(x)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  // symmetrized product is symmetric, unsymmetrized is not
  CHECK(symmetry_deviation(symmetrize(f), kPlan) <= 1e-12);
  CHECK(symmetry_deviation(f, kPlan) > 1e-3);
}
