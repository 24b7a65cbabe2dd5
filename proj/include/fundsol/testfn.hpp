#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "fundsol/poly.hpp"
#include "fundsol/symbol.hpp"

namespace fundsol {

// Univariate restriction of a spectral object to a ray xi = r * theta:
//   hat(r theta) = U(r) * exp(-i b r) * exp(-c r^2 / 2).
// Differentiation in r stays inside this class:
//   U <- U' + (-i b - c r) U.
struct RayFunction {
  std::vector<Complex> coeffs;  // U
  double b = 0.0;               // <a, theta>
  double c = 0.0;               // sigma^2

  RayFunction derivative() const {
    std::vector<Complex> out(coeffs.size() + 1, 0.0);
    const Complex ib(0.0, b);
    for (size_t m = 0; m + 1 < coeffs.size() + 1; ++m) {
      if (m + 1 < coeffs.size()) out[m] += double(m + 1) * coeffs[m + 1];
      out[m] -= ib * coeffs[m];
      out[m + 1] -= c * coeffs[m];
    }
    return {std::move(out), b, c};
  }

  // polynomial part only
  Complex poly_at(double r) const {
    Complex s = 0.0;
    for (size_t m = coeffs.size(); m-- > 0;) s = s * r + coeffs[m];
    return s;
  }

  Complex envelope(double r) const {
    return std::exp(Complex(-0.5 * c * r * r, -b * r));
  }

  Complex at(double r) const { return poly_at(r) * envelope(r); }
};

// Schwartz test function of the family (polynomial x Gaussian with optional
// center phase), represented by closed-form Fourier data:
//   hat f(xi) = P(xi) * exp(-i <a, xi>) * exp(-sigma^2 |xi|^2 / 2).
// The class is closed under polynomial x-prefactors (derivative rule),
// spectral multipliers, and dilation.
class SpectralTestFunction {
 public:
  static SpectralTestFunction gaussian(int n, Vec center, double sigma);

  // multiply f by the coordinate monomial x^beta (spectral derivative rule)
  SpectralTestFunction with_prefactor_monomial(const MultiIndex& beta, double coeff) const;

  // (Qf)^ = p * hat f
  SpectralTestFunction apply_symbol(const HomogeneousSymbol& sym) const;

  // multiply the hat by an arbitrary polynomial
  SpectralTestFunction apply_multiplier(const Poly& m) const;

  // x -> f(lambda x)
  SpectralTestFunction dilate(double lambda) const;

  Complex hat_eval(std::span<const double> xi) const;
  Complex hat_deriv(const MultiIndex& beta, std::span<const double> xi) const;

  RayFunction restrict_to_ray(std::span<const double> theta) const;

  int dim() const { return n_; }
  double sigma() const { return sigma_; }
  const Vec& center() const { return a_; }
  const Poly& hat_poly() const { return poly_; }
  bool has_point_value() const { return f0_valid_; }
  Complex point_value() const;  // f(0)

  int derivative_cap() const { return deriv_cap_; }
  void set_derivative_cap(int cap) { deriv_cap_ = cap; }

 private:
  SpectralTestFunction(int n, Vec a, double sigma, Poly poly)
      : n_(n), a_(std::move(a)), sigma_(sigma), poly_(std::move(poly)) {}

  // P <- dP/dxi_j + (-i a_j - sigma^2 xi_j) P
  Poly hat_derivative_poly(const Poly& p, int j) const;

  int n_;
  Vec a_;
  double sigma_;
  Poly poly_;
  Complex f0_ = 0.0;
  bool f0_valid_ = false;
  int deriv_cap_ = 24;
};

}  // namespace fundsol
