#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fundsol/errors.hpp"
#include "fundsol/testfn.hpp"

using namespace fundsol;

namespace {
bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("gaussian hat matches the closed form") {
  auto f = SpectralTestFunction::gaussian(2, {1.0, -2.0}, 0.7);
  double xi[2] = {0.3, 0.5};
  double amp = std::pow(2.0 * M_PI * 0.49, 1.0);
  Complex want = amp * std::exp(Complex(-0.5 * 0.49 * (0.09 + 0.25),
                                        -(1.0 * 0.3 + (-2.0) * 0.5)));
  CHECK(close(f.hat_eval(xi), want));
  CHECK(close(f.point_value(), std::exp(-(1.0 + 4.0) / (2.0 * 0.49))));
}

TEST_CASE("hat derivative agrees with finite differences") {
  auto f = SpectralTestFunction::gaussian(2, {0.5, 0.0}, 1.1);
  double xi[2] = {0.4, -0.6};
  const double h = 1e-5;
  MultiIndex e1 = {1, 0};
  double lo[2] = {xi[0] - h, xi[1]}, hi[2] = {xi[0] + h, xi[1]};
  Complex fd = (f.hat_eval(hi) - f.hat_eval(lo)) / (2.0 * h);
  CHECK(close(f.hat_deriv(e1, xi), fd, 1e-7));

  MultiIndex e12 = {1, 1};
  double pp[2] = {xi[0] + h, xi[1] + h}, pm[2] = {xi[0] + h, xi[1] - h};
  double mp[2] = {xi[0] - h, xi[1] + h}, mm[2] = {xi[0] - h, xi[1] - h};
  Complex fd2 =
      (f.hat_eval(pp) - f.hat_eval(pm) - f.hat_eval(mp) + f.hat_eval(mm)) / (4.0 * h * h);
  CHECK(close(f.hat_deriv(e12, xi), fd2, 1e-6));
}

TEST_CASE("spectral multiplier multiplies the hat") {
  auto f = SpectralTestFunction::gaussian(2, {0.0, 0.0}, 1.0);
  HomogeneousSymbol p(2, 2, {{{1, 1}, 1.0}});
  auto qf = f.apply_symbol(p);
  double xi[2] = {1.2, -0.4};
  CHECK(close(qf.hat_eval(xi), (1.2 * -0.4) * f.hat_eval(xi)));
  CHECK_THROWS_AS(qf.point_value(), Error);
}

TEST_CASE("prefactor monomial implements the derivative rule") {
  // (x_1 f)^ = i d/dxi_1 fhat
  auto f = SpectralTestFunction::gaussian(2, {0.3, -0.1}, 0.9);
  auto xf = f.with_prefactor_monomial({1, 0}, 1.0);
  double xi[2] = {0.7, 0.2};
  const double h = 1e-5;
  double lo[2] = {xi[0] - h, xi[1]}, hi[2] = {xi[0] + h, xi[1]};
  Complex want = Complex(0, 1) * (f.hat_eval(hi) - f.hat_eval(lo)) / (2.0 * h);
  CHECK(close(xf.hat_eval(xi), want, 1e-7));
  CHECK(close(xf.point_value(), 0.0));
}

TEST_CASE("dilation law on the hat") {
  // f_lambda(x) = f(lambda x)  =>  hat f_lambda(xi) = lambda^{-n} hat f(xi/lambda)
  auto f = SpectralTestFunction::gaussian(2, {1.0, 1.0}, 0.8);
  double lam = 2.0;
  auto fl = f.dilate(lam);
  double xi[2] = {0.6, -0.9};
  double xs[2] = {0.3, -0.45};
  CHECK(close(fl.hat_eval(xi), std::pow(lam, -2.0) * f.hat_eval(xs)));
  CHECK(close(fl.point_value(), f.point_value()));
}

TEST_CASE("ray restriction and its derivative recurrence") {
  auto f = SpectralTestFunction::gaussian(3, {0.2, -0.5, 1.0}, 1.3);
  HomogeneousSymbol p(3, 2, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, -1.0}});
  auto qf = f.apply_symbol(p);
  double th[3] = {0.6, 0.64, std::sqrt(1.0 - 0.36 - 0.4096)};
  RayFunction rf = qf.restrict_to_ray(th);
  double r = 1.7;
  double xi[3] = {r * th[0], r * th[1], r * th[2]};
  CHECK(close(rf.at(r), qf.hat_eval(xi), 1e-11));

  // derivative along the ray vs finite differences
  RayFunction d1 = rf.derivative();
  const double h = 1e-5;
  Complex fd = (rf.at(r + h) - rf.at(r - h)) / (2.0 * h);
  CHECK(close(d1.at(r), fd, 1e-6));
  RayFunction d2 = d1.derivative();
  Complex fd2 = (rf.at(r + h) - 2.0 * rf.at(r) + rf.at(r - h)) / (h * h);
  CHECK(close(d2.at(r), fd2, 1e-4));
}

TEST_CASE("derivative cap guards hat_deriv") {
  auto f = SpectralTestFunction::gaussian(2, {0.0, 0.0}, 1.0);
  f.set_derivative_cap(3);
  double xi[2] = {0.0, 0.0};
  CHECK_THROWS_AS(f.hat_deriv({4, 0}, xi), OrderCapExceeded);
}
