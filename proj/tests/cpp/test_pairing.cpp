#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fundsol/errors.hpp"
#include "fundsol/pairing.hpp"

using namespace fundsol;

namespace {

HomogeneousSymbol cubic3() {
  return HomogeneousSymbol(3, 3,
                           {{{2, 0, 1}, 1.0}, {{0, 2, 1}, 1.0}, {{0, 0, 3}, 1.0}});
}

HomogeneousSymbol prod2() { return HomogeneousSymbol(2, 2, {{{1, 1}, 1.0}}); }

double quad_integral(double upper, const std::function<double(double)>& f) {
  Rule1D r = graded_mesh(upper, 10, 12, 32, 8);
  double s = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}

}  // namespace

TEST_CASE("cutoff bump properties") {
  double rho = 0.4;
  CHECK(bump_chi(0.0, rho) == 1.0);
  CHECK(bump_chi(0.19, rho) == 1.0);
  CHECK(bump_chi(0.41, rho) == 0.0);
  CHECK(bump_chi(-0.3, rho) == bump_chi(0.3, rho));
  // derivative consistent with finite differences in the transition band
  double u = 0.3, h = 1e-6;
  double fd = (bump_chi(u + h, rho) - bump_chi(u - h, rho)) / (2.0 * h);
  CHECK(bump_chi_prime(u, rho) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("log bracket against a synthetic polynomial density") {
  // density 2 + u + u^2 on [-1, 1]:
  //   <log|u|   ; d/du> = int log|u| (1 + 2u) du = -2
  //   <log|u|^2 ; d/du> = int log^2|u| (1 + 2u) du = 4
  auto dens = [](double u) { return Complex(2.0 + u + u * u, 0.0); };
  LerayProfile prof = synthetic_profile(dens, -1.0, 1.0, 0.5);
  LogBracketSpec s1{1, 0.4};
  LogBracketSpec s2{2, 0.4};
  CHECK(log_bracket(prof, s1).real() == doctest::Approx(-2.0).epsilon(1e-8));
  CHECK(log_bracket(prof, s2).real() == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("log bracket is invariant under cutoff halving") {
  auto dens = [](double u) { return Complex(1.5 + 0.5 * u + u * u * u, 0.0); };
  LerayProfile prof = synthetic_profile(dens, -1.0, 1.0, 0.5);
  for (int j : {1, 2}) {
    LogBracketSpec a{j, 0.4};
    LogBracketSpec b{j, 0.2};
    Complex va = log_bracket(prof, a), vb = log_bracket(prof, b);
    CHECK(std::abs(va - vb) / std::abs(va) < 1e-8);
  }
}

TEST_CASE("plane product symbol: bracket node weights vs closed forms") {
  auto sym = prod2();
  auto val = validate_H(sym);
  auto quad = build_quadrature(2, 1024);
  SphereBracketContext ctx(sym, quad, val);

  // h = (1 - 4 p^2)^2 (1 + p) gives the level-set density
  // L(h)(u) = 4 (1 - 4u^2)^{3/2} (1 + u), vanishing at the fold points.
  ThetaFunction h = [&](std::span<const double> th) {
    double p = th[0] * th[1];
    double q = 1.0 - 4.0 * p * p;
    return Complex(q * q * (1.0 + p), 0.0);
  };

  // <log|u| ; d L(h)> = -4 int (1-4u^2)^{3/2} du = -3 pi / 4
  Complex b1 = ctx.log_pair_weights(1).eval(h);
  CHECK(b1.real() == doctest::Approx(-3.0 * M_PI / 4.0).epsilon(1e-6));
  CHECK(b1.imag() == doctest::Approx(0.0).epsilon(1e-10));

  // <log^2|u| ; d L(h)> = -16 int_0^{1/2} log(u) (1-4u^2)^{3/2} du
  double want2 = -16.0 * quad_integral(0.5, [](double u) {
    return std::log(u) * std::pow(1.0 - 4.0 * u * u, 1.5);
  });
  Complex b2 = ctx.log_pair_weights(2).eval(h);
  CHECK(b2.real() == doctest::Approx(want2).epsilon(1e-6));

  // power kernel: <|u|^{2z-2} u ; L(h)> = 4 int |u|^{2z} (1-4u^2)^{3/2} du
  double z = 0.4;
  double wantp = 8.0 * quad_integral(0.5, [&](double u) {
    return std::pow(u, 2.0 * z) * std::pow(1.0 - 4.0 * u * u, 1.5);
  });
  Complex bp = ctx.power_pair_weights(z).eval(h);
  CHECK(bp.real() == doctest::Approx(wantp).epsilon(1e-6));
}

TEST_CASE("plane product symbol: cutoff halving invariance through the split") {
  auto sym = prod2();
  auto val = validate_H(sym);
  auto quad = build_quadrature(2, 1024);
  BracketContextOptions oa, ob;
  oa.rho = 0.75 * val.epsilon;
  ob.rho = 0.375 * val.epsilon;
  SphereBracketContext ca(sym, quad, val, oa), cb(sym, quad, val, ob);
  ThetaFunction h = [&](std::span<const double> th) {
    double p = th[0] * th[1];
    double q = 1.0 - 4.0 * p * p;
    return Complex(q * q * (1.0 + p), 0.0);
  };
  for (int j : {1, 2}) {
    Complex va = ca.log_pair_weights(j).eval(h);
    Complex vb = cb.log_pair_weights(j).eval(h);
    CHECK(std::abs(va - vb) / std::abs(va) < 1e-6);
  }
}

TEST_CASE("cubic symbol: mollified bracket machinery vs closed forms") {
  auto sym = cubic3();
  auto val = validate_H(sym);
  auto quad = build_quadrature(3, 128);
  SphereBracketContext ctx(sym, quad, val);
  // p restricted to the sphere is theta_3, L(1 + p)(u) = 2 pi (1 + u):
  ThetaFunction h = [&](std::span<const double> th) {
    return Complex(1.0 + sym.eval(th), 0.0);
  };
  // <log|u| ; d L(h)> = 2 pi int_{-1}^1 log|u| du = -4 pi
  Complex b1 = ctx.log_pair_weights(1).eval(h);
  CHECK(b1.real() == doctest::Approx(-4.0 * M_PI).epsilon(2e-2));
  // <|u|^{2z-2} u ; L(h)> = 4 pi / (2z + 1)
  double z = 0.4;
  Complex bp = ctx.power_pair_weights(z).eval(h);
  CHECK(bp.real() == doctest::Approx(4.0 * M_PI / (2.0 * z + 1.0)).epsilon(2e-3));
}

TEST_CASE("cubic symbol: cutoff halving invariance with the mollified estimator") {
  auto sym = cubic3();
  auto val = validate_H(sym);
  auto quad = build_quadrature(3, 128);
  BracketContextOptions oa, ob;
  oa.rho = 0.75 * val.epsilon;
  ob.rho = 0.375 * val.epsilon;
  SphereBracketContext ca(sym, quad, val, oa), cb(sym, quad, val, ob);
  ThetaFunction h = [&](std::span<const double> th) {
    return Complex(1.0 + sym.eval(th), 0.0);
  };
  Complex va = ca.log_pair_weights(1).eval(h);
  Complex vb = cb.log_pair_weights(1).eval(h);
  CHECK(std::abs(va - vb) / std::abs(va) < 1e-5);
}

TEST_CASE("bracket weights path matches the profile + bracket path") {
  auto sym = prod2();
  auto val = validate_H(sym);
  auto quad = build_quadrature(2, 1024);
  SphereBracketContext ctx(sym, quad, val);
  ThetaFunction h = [&](std::span<const double> th) {
    double p = th[0] * th[1];
    double q = 1.0 - 4.0 * p * p;
    return Complex(q * q * (1.0 + p), 0.0);
  };
  LerayProfile prof = ctx.profile(h);
  LogBracketSpec spec{1, ctx.rho()};
  Complex direct = log_bracket(prof, spec);
  Complex collapsed = ctx.log_pair_weights(1).eval(h);
  CHECK(std::abs(direct - collapsed) / std::abs(direct) < 1e-5);
}
