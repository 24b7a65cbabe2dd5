#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fundsol/errors.hpp"
#include "fundsol/oracle.hpp"

using namespace fundsol;

namespace {

HomogeneousSymbol prod2() { return HomogeneousSymbol(2, 2, {{{1, 1}, 1.0}}); }

HomogeneousSymbol cubic3() {
  return HomogeneousSymbol(3, 3,
                           {{{2, 0, 1}, 1.0}, {{0, 2, 1}, 1.0}, {{0, 0, 3}, 1.0}});
}

}  // namespace

TEST_CASE("laurent fit recovers a planted second-order pole model") {
  std::vector<std::pair<double, Complex>> samples;
  for (int i = 0; i < 20; ++i) {
    double z = 0.02 + 0.13 * i / 19.0;
    samples.emplace_back(z, 1.0 / (z * z) + 3.0 / z + 7.0 + 2.0 * z);
  }
  LaurentFit lf = laurent_fit(samples);
  CHECK(lf.pole_order == 2);
  CHECK(std::abs(lf.a0 - 7.0) < 1e-8);
  CHECK(std::abs(lf.coeffs[0] - 1.0) < 1e-8);
  CHECK(std::abs(lf.coeffs[1] - 3.0) < 1e-8);
  CHECK(lf.residual < 1e-10);
}

TEST_CASE("laurent fit recognizes a regular model") {
  std::vector<std::pair<double, Complex>> samples;
  for (int i = 0; i < 16; ++i) {
    double z = 0.05 + 0.1 * i / 15.0;
    samples.emplace_back(z, 7.0 + 2.0 * z - z * z * z);
  }
  LaurentFit lf = laurent_fit(samples);
  CHECK(lf.pole_order == 0);
  CHECK(std::abs(lf.a0 - 7.0) < 1e-9);
}

TEST_CASE("laurent fit guards") {
  std::vector<std::pair<double, Complex>> samples;
  for (int i = 0; i < 8; ++i) samples.emplace_back(0.05 + 0.01 * i, 1.0);
  CHECK_THROWS_AS(laurent_fit(samples), Error);                // too few
  for (int i = 0; i < 8; ++i) samples.emplace_back(0.13 + 0.01 * i, 1.0);
  CHECK_THROWS_AS(laurent_fit(samples, 3), PoleOrderExceeded);  // cap
}

TEST_CASE("proof constants: closed forms vs contour differentiation") {
  for (int k = 1; k <= 8; ++k) {
    ProofConstants pc = proof_constants(k);
    auto rel = [](double a, double b) {
      return std::abs(a - b) / std::max(std::abs(a), 1e-300);
    };
    CHECK(rel(pc.h0, pc.h0_num) < 1e-10);
    CHECK(rel(pc.hp0, pc.hp0_num) < 1e-10);
    CHECK(rel(pc.m0, pc.m0_num) < 1e-10);
    CHECK(rel(pc.mp0, pc.mp0_num) < 1e-10);
    CHECK(rel(pc.mpp0, pc.mpp0_num) < 1e-10);
  }
  ProofConstants p1 = proof_constants(1);
  CHECK(p1.h0 == doctest::Approx(-0.5).epsilon(1e-14));   // 2k h(0) = -1/Gamma(2)
  CHECK(p1.hp0 == doctest::Approx(-1.0).epsilon(1e-12));  // -(gamma + Psi(2)) = -1
  CHECK(p1.m0 == doctest::Approx(0.25).epsilon(1e-14));   // 1/(2 Gamma(3))
}

TEST_CASE("integer digamma and trigamma") {
  double g = 0.57721566490153286;
  CHECK(digamma_int(1) == doctest::Approx(-g).epsilon(1e-12));
  CHECK(digamma_int(2) == doctest::Approx(1.0 - g).epsilon(1e-12));
  CHECK(trigamma_int(1) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-12));
  CHECK(trigamma_int(3) == doctest::Approx(M_PI * M_PI / 6.0 - 1.25).epsilon(1e-12));
}

TEST_CASE("continuation sample at zeta = 1 matches the direct gaussian integral") {
  auto sym = prod2();
  auto val = validate_H(sym);
  auto quad = build_quadrature(2, 1024);
  SphereBracketContext ctx(sym, quad, val);
  Vec a = {0.3, 0.1};
  auto f = SpectralTestFunction::gaussian(2, a, 1.0);
  // (2 pi)^{-2} int xi1 xi2 fhat = -a1 a2 exp(-|a|^2/2)
  double want = -a[0] * a[1] * std::exp(-0.5 * (a[0] * a[0] + a[1] * a[1]));
  Complex got = sample_M(ctx, f, 1.0);
  CHECK(std::abs(got - want) / std::abs(want) < 1e-4);
}

TEST_CASE("continuation samples vanish by parity for an odd symbol") {
  auto sym = cubic3();
  auto val = validate_H(sym);
  auto quad = build_quadrature(3, 64);
  SphereBracketContext ctx(sym, quad, val);
  auto f = SpectralTestFunction::gaussian(3, {0.0, 0.0, 0.0}, 1.0);
  for (double z : {0.1, 0.5, 1.0}) {
    Complex v = sample_M(ctx, f, z);
    CHECK(std::abs(v) < 1e-10);
  }
  CHECK_THROWS_AS(sample_M(ctx, f, -0.1), OutsideConvergenceRegion);
}

TEST_CASE("adjudication: continuation constant vs assembled value, plane product") {
  SolutionBudgets b;
  b.sphere_level = 1024;
  SolutionFunctional sf(prod2(), Variant::theorem, b);
  auto f = SpectralTestFunction::gaussian(2, {0.4, -0.2}, 1.0);
  Adjudication adj = adjudicate(sf, f);
  CHECK(adj.fit.pole_order <= 2);
  double best = std::min(adj.err_theorem, adj.err_proof);
  CHECK(best < 2e-2);
}

TEST_CASE("regularized cross-check: parity zero and convergence trend") {
  // odd symbol in n = 3 with k = 2 < n and an even test function
  HomogeneousSymbol podd(3, 2, {{{1, 1, 0}, 1.0}});
  auto f = SpectralTestFunction::gaussian(3, {0.0, 0.0, 0.0}, 1.0);
  PvResult pv = pv_crosscheck(podd, f, 48);
  CHECK(std::abs(pv.value) < 1e-9);

  HomogeneousSymbol wave(3, 2, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, -1.0}});
  auto g = SpectralTestFunction::gaussian(3, {0.2, 0.0, 0.1}, 1.0);
  auto qg = g.apply_symbol(wave);
  PvResult pw = pv_crosscheck(wave, qg, 48);
  size_t ne = pw.extrapolants.size();
  CHECK(std::abs(pw.extrapolants[ne - 1] - pw.extrapolants[ne - 2]) <=
        std::abs(pw.extrapolants[ne - 2] - pw.extrapolants[ne - 3]));
}
