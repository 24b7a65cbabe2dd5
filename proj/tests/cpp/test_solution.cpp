#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fundsol/errors.hpp"
#include "fundsol/solution.hpp"

using namespace fundsol;

namespace {

HomogeneousSymbol wave3() {
  return HomogeneousSymbol(3, 2,
                           {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, -1.0}});
}

HomogeneousSymbol prod2() { return HomogeneousSymbol(2, 2, {{{1, 1}, 1.0}}); }

// xi1 * (xi2 + 0.3 xi1): the level-set density is not even in u, so the
// null solution and the log-lambda anomaly are genuinely nonzero.
HomogeneousSymbol shear2() {
  return HomogeneousSymbol(2, 2, {{{1, 1}, 1.0}, {{2, 0}, 0.3}});
}

SolutionBudgets light_budget(int level) {
  SolutionBudgets b;
  b.sphere_level = level;
  return b;
}

}  // namespace

TEST_CASE("constants bundle identities") {
  for (int k = 1; k <= 6; ++k) {
    ConstantsBundle c = make_constants(k);
    CHECK(c.gamma_2k * 2.0 * k == doctest::Approx(c.gamma_1p2k).epsilon(1e-12));
  }
  // digamma at 2: 1 - gamma
  ConstantsBundle c1 = make_constants(1);
  CHECK(c1.psi_2k == doctest::Approx(1.0 - c1.euler_gamma).epsilon(1e-12));
}

TEST_CASE("case tags and guards") {
  SolutionFunctional sa(wave3(), Variant::theorem, light_budget(32));
  CHECK(sa.case_tag() == 'A');
  auto f3 = SpectralTestFunction::gaussian(3, {0.0, 0.0, 0.0}, 1.0);
  CHECK_THROWS_AS(sa.eval_B(f3), CaseMismatch);
  CHECK_THROWS_AS(sa.eval_null(f3), CaseMismatch);

  SolutionFunctional sb(prod2(), Variant::theorem, light_budget(256));
  CHECK(sb.case_tag() == 'B');
  auto f2 = SpectralTestFunction::gaussian(2, {0.0, 0.0}, 1.0);
  CHECK_THROWS_AS(sb.eval_A(f2), CaseMismatch);
}

TEST_CASE("delta property, locally integrable case (wave symbol)") {
  SolutionFunctional sf(wave3(), Variant::theorem, light_budget(128));
  auto f = SpectralTestFunction::gaussian(3, {0.0, 0.0, 0.0}, 1.0);
  auto qf = apply_Q(sf.symbol(), f);
  Complex got = sf.eval_A(qf);
  Complex want = f.point_value();
  CHECK(std::abs(got - want) / std::abs(want) < 3e-2);
  CHECK(std::abs(got.imag()) < 1e-8);
}

TEST_CASE("delta property and null solution, plane product symbol") {
  SolutionFunctional sf(prod2(), Variant::theorem, light_budget(1024));
  auto f = SpectralTestFunction::gaussian(2, {0.0, 0.0}, 1.0);
  auto qf = apply_Q(sf.symbol(), f);
  Complex b = sf.eval_B(qf);
  Complex nv = sf.eval_null(qf);
  Complex want = f.point_value();
  CHECK(std::abs(b - want) / std::abs(want) < 2e-2);
  CHECK(std::abs(nv) < 2e-2 * std::abs(want));
  // the one-parameter family keeps the delta property
  for (Complex lam : {Complex(1, 0), Complex(0, 1), Complex(-3, 0)}) {
    Complex v = b + lam * nv;
    CHECK(std::abs(v - want) / std::abs(want) < 3e-2);
  }
}

TEST_CASE("homogeneity, locally integrable case") {
  SolutionFunctional sf(wave3(), Variant::theorem, light_budget(128));
  auto f = SpectralTestFunction::gaussian(3, {0.3, 0.0, -0.2}, 1.0);
  const int k = 2;
  Complex base = sf.eval_A(f);
  for (double lam : {0.5, 2.0}) {
    Complex v = std::pow(lam, k) * sf.eval_A(f.dilate(lam));
    CHECK(std::abs(v - base) / std::abs(base) < 1e-3);
  }
}

TEST_CASE("quasi-homogeneity: affine in log lambda") {
  SolutionFunctional sf(shear2(), Variant::proof, light_budget(1024));
  auto f = SpectralTestFunction::gaussian(2, {0.4, -0.1}, 1.0);
  const int k = 2;
  std::vector<double> lams = {0.5, 1.0, 2.0, 4.0};
  std::vector<Complex> vals;
  for (double lam : lams) vals.push_back(std::pow(lam, k) * sf.eval_B(f.dilate(lam)));
  Complex slope = (vals[2] - vals[0]) / std::log(4.0);
  double scale = 0.0;
  for (const auto& v : vals) scale = std::max(scale, std::abs(v));
  // midpoint collinearity and extrapolation to lambda = 4
  CHECK(std::abs(0.5 * (vals[0] + vals[2]) - vals[1]) / scale < 1e-6);
  CHECK(std::abs(vals[1] + slope * std::log(4.0) - vals[3]) / scale < 1e-6);
  // the slope is carried by the null solution: slope/null = (2 pi)^{-n}/(2k-1)!
  Complex nv = sf.eval_null(f);
  double want = std::pow(2.0 * M_PI, -2.0) / 6.0;
  CHECK(std::abs(nv) > 1e-4 * scale);
  CHECK((slope / nv).real() == doctest::Approx(want).epsilon(1e-4));
  CHECK(std::abs((slope / nv).imag()) < 1e-8);
}

TEST_CASE("exact homogeneity when the density is even in u") {
  // For the plane product symbol the density of L^{(1)}(f^) at r = 0 is even,
  // so the residue behind the log-lambda anomaly cancels: the null solution
  // vanishes and lambda^k <s, f_lambda> is constant.
  SolutionFunctional sf(prod2(), Variant::theorem, light_budget(1024));
  auto f = SpectralTestFunction::gaussian(2, {0.4, -0.1}, 1.0);
  const int k = 2;
  Complex base = sf.eval_B(f);
  double scale = std::abs(base);
  CHECK(std::abs(sf.eval_null(f)) < 1e-8 * scale);
  for (double lam : {0.5, 2.0}) {
    Complex v = std::pow(lam, k) * sf.eval_B(f.dilate(lam));
    CHECK(std::abs(v - base) < 1e-8 * scale);
  }
}

TEST_CASE("slope-to-null ratio is test-function independent") {
  SolutionFunctional sf(shear2(), Variant::proof, light_budget(1024));
  const int k = 2;
  std::vector<Complex> ratios;
  std::vector<Vec> centers = {{0.0, 0.0}, {0.5, -0.5}, {0.8, 0.3}};
  for (const auto& c : centers) {
    auto f = SpectralTestFunction::gaussian(2, c, 1.0);
    Complex v_half = std::pow(0.5, k) * sf.eval_B(f.dilate(0.5));
    Complex v_two = std::pow(2.0, k) * sf.eval_B(f.dilate(2.0));
    Complex slope = (v_two - v_half) / std::log(4.0);
    ratios.push_back(slope / sf.eval_null(f));
  }
  CHECK(std::abs(ratios[1] - ratios[0]) / std::abs(ratios[0]) < 1e-2);
  CHECK(std::abs(ratios[2] - ratios[0]) / std::abs(ratios[0]) < 1e-2);
}

TEST_CASE("symmetry under a coordinate swap") {
  SolutionFunctional sf(prod2(), Variant::theorem, light_budget(1024));
  auto fa = SpectralTestFunction::gaussian(2, {0.5, -0.3}, 1.0);
  auto fb = SpectralTestFunction::gaussian(2, {-0.3, 0.5}, 1.0);
  Complex va = sf.eval_B(fa), vb = sf.eval_B(fb);
  CHECK(std::abs(va - vb) < 1e-8 * std::abs(va));
}

TEST_CASE("variant flag changes the first boundary term only") {
  SolutionFunctional st(shear2(), Variant::theorem, light_budget(512));
  SolutionFunctional sp(shear2(), Variant::proof, light_budget(512));
  auto f = SpectralTestFunction::gaussian(2, {0.6, 0.1}, 1.0);
  auto tt = st.eval_B_terms(f);
  auto tp = sp.eval_B_terms(f);
  CHECK(std::abs(tt.term2 - tp.term2) < 1e-12 * std::abs(tt.term2));
  CHECK(std::abs(tt.term3 - tp.term3) < 1e-12 * std::abs(tt.term3));
  const auto& c = st.constants();
  double ratio = (c.euler_gamma + c.psi_2k) / (c.euler_gamma + c.psi_k);
  CHECK(std::abs(tp.term1 - tt.term1 * ratio) < 1e-10 * std::abs(tt.term1));
}

TEST_CASE("linearity through spectral multipliers") {
  SolutionFunctional sf(prod2(), Variant::theorem, light_budget(512));
  auto f = SpectralTestFunction::gaussian(2, {0.2, 0.3}, 1.0);
  Poly p1(2), p2(2);
  p1.add_term({2, 0}, 1.0);
  p2.add_term({0, 2}, 0.5);
  Poly sum = p1;
  sum += p2;
  Complex v = sf.eval_B(f.apply_multiplier(sum));
  Complex v1 = sf.eval_B(f.apply_multiplier(p1));
  Complex v2 = sf.eval_B(f.apply_multiplier(p2));
  CHECK(std::abs(v - (v1 + v2)) < 1e-10 * std::abs(v));
}

TEST_CASE("family evaluation is affine in lambda") {
  SolutionFunctional sf(prod2(), Variant::theorem, light_budget(512));
  auto f = SpectralTestFunction::gaussian(2, {0.3, 0.3}, 1.0);
  Complex b = sf.eval_B(f), nv = sf.eval_null(f);
  Complex lam(0.7, -1.2);
  CHECK(std::abs(sf.eval_family(lam, f) - (b + lam * nv)) < 1e-12 * std::abs(b));
  CHECK(std::abs(sf.eval_family(Complex(0, 0), f) - b) < 1e-14 * std::abs(b));
}
