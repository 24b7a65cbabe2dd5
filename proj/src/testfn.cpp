#include "fundsol/testfn.hpp"

#include <cmath>

#include "fundsol/errors.hpp"

namespace fundsol {

SpectralTestFunction SpectralTestFunction::gaussian(int n, Vec center, double sigma) {
  if (sigma <= 0.0) throw NonPositiveWidth("gaussian width must be positive");
  if (int(center.size()) != n) throw DimensionMismatch("center size != n");
  double amp = std::pow(2.0 * M_PI * sigma * sigma, 0.5 * n);
  SpectralTestFunction f(n, std::move(center), sigma, Poly::constant(n, amp));
  double a2 = 0.0;
  for (double x : f.a_) a2 += x * x;
  f.f0_ = std::exp(-a2 / (2.0 * sigma * sigma));
  f.f0_valid_ = true;
  return f;
}

Poly SpectralTestFunction::hat_derivative_poly(const Poly& p, int j) const {
  Poly out = p.derivative(j);
  Poly lin(n_);
  MultiIndex zero(n_, 0);
  if (a_[j] != 0.0) lin.add_term(zero, Complex(0.0, -a_[j]));
  MultiIndex ej(n_, 0);
  ej[j] = 1;
  lin.add_term(ej, -sigma_ * sigma_);
  out += lin * p;
  return out;
}

SpectralTestFunction SpectralTestFunction::with_prefactor_monomial(const MultiIndex& beta,
                                                                   double coeff) const {
  if (int(beta.size()) != n_) throw DimensionMismatch("prefactor multi-index size != n");
  // x_j f corresponds to i d/dxi_j on the hat
  SpectralTestFunction out = *this;
  Poly p = poly_;
  for (int j = 0; j < n_; ++j)
    for (int e = 0; e < beta[j]; ++e) p = hat_derivative_poly(p, j) * Complex(0.0, 1.0);
  out.poly_ = p * Complex(coeff, 0.0);
  // f(0) picks up q(0); nonzero only for beta = 0
  if (order(beta) > 0) {
    out.f0_ = 0.0;
    out.f0_valid_ = f0_valid_;
  } else {
    out.f0_ = f0_ * coeff;
  }
  return out;
}

SpectralTestFunction SpectralTestFunction::apply_symbol(const HomogeneousSymbol& sym) const {
  if (sym.dim() != n_) throw DimensionMismatch("symbol dimension != test function dimension");
  if (sym.degree() < 1) throw DegreeError("symbol degree must be >= 1");
  return apply_multiplier(sym.as_poly());
}

SpectralTestFunction SpectralTestFunction::apply_multiplier(const Poly& m) const {
  if (m.dim() != n_) throw DimensionMismatch("multiplier dimension mismatch");
  SpectralTestFunction out = *this;
  out.poly_ = poly_ * m;
  out.f0_valid_ = false;  // point value would need an integral; not cached
  return out;
}

SpectralTestFunction SpectralTestFunction::dilate(double lambda) const {
  if (lambda <= 0.0) throw NonPositiveScale("dilation scale must be positive");
  SpectralTestFunction out = *this;
  out.sigma_ = sigma_ / lambda;
  for (double& x : out.a_) x /= lambda;
  double jac = std::pow(lambda, -n_);
  out.poly_ = poly_.scale_argument(lambda) * Complex(jac, 0.0);
  // f_lambda(0) = f(0)
  return out;
}

Complex SpectralTestFunction::hat_eval(std::span<const double> xi) const {
  double phase = 0.0, q2 = 0.0;
  for (int i = 0; i < n_; ++i) {
    phase += a_[i] * xi[i];
    q2 += xi[i] * xi[i];
  }
  return poly_.eval(xi) * std::exp(Complex(-0.5 * sigma_ * sigma_ * q2, -phase));
}

Complex SpectralTestFunction::hat_deriv(const MultiIndex& beta, std::span<const double> xi) const {
  if (int(beta.size()) != n_) throw DimensionMismatch("derivative multi-index size != n");
  if (order(beta) > deriv_cap_) throw OrderCapExceeded("hat_deriv order above cap");
  Poly p = poly_;
  for (int j = 0; j < n_; ++j)
    for (int e = 0; e < beta[j]; ++e) p = hat_derivative_poly(p, j);
  double phase = 0.0, q2 = 0.0;
  for (int i = 0; i < n_; ++i) {
    phase += a_[i] * xi[i];
    q2 += xi[i] * xi[i];
  }
  return p.eval(xi) * std::exp(Complex(-0.5 * sigma_ * sigma_ * q2, -phase));
}

RayFunction SpectralTestFunction::restrict_to_ray(std::span<const double> theta) const {
  RayFunction rf;
  rf.coeffs = poly_.restrict_to_ray(theta);
  rf.b = 0.0;
  for (int i = 0; i < n_; ++i) rf.b += a_[i] * theta[i];
  rf.c = sigma_ * sigma_;
  return rf;
}

Complex SpectralTestFunction::point_value() const {
  if (!f0_valid_) throw Error("point value not available for this spectral object");
  return f0_;
}

}  // namespace fundsol
