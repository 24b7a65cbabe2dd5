#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fundsol/poly.hpp"

namespace fundsol {

using Vec = std::vector<double>;

struct Monomial {
  MultiIndex alpha;
  double coeff;
};

// Degree-k homogeneous polynomial on R^n.  Homogeneity is structural:
// every monomial has |alpha| = k.
class HomogeneousSymbol {
 public:
  HomogeneousSymbol(int n, int k, std::vector<Monomial> monomials);

  int dim() const { return n_; }
  int degree() const { return k_; }
  const std::vector<Monomial>& monomials() const { return mono_; }

  double eval(std::span<const double> xi) const;
  Vec gradient(std::span<const double> xi) const;

  // Tangential part of the gradient on the sphere:
  // grad p(theta) - <grad p, theta> theta.
  Vec tangential_gradient(std::span<const double> theta) const;
  double tangential_gradient_norm(std::span<const double> theta) const;

  // 2-norm of the coefficient vector, used for relative tolerances.
  double coeff_norm() const { return coeff_norm_; }

  // As a Poly with real coefficients (for the spectral multiplier side).
  Poly as_poly() const;

  static HomogeneousSymbol load(const std::string& path);
  static HomogeneousSymbol from_json_text(const std::string& text);

 private:
  int n_;
  int k_;
  std::vector<Monomial> mono_;
  double coeff_norm_;
};

struct ValidationOptions {
  int sample_budget = 20000;      // quasi-uniform sphere samples
  std::uint64_t seed = 12345;     // for n >= 4 direction sampling
  double zero_tol_rel = 1e-9;     // |p(theta)| <= tol * sup|p| counts as root
  double grad_tol_rel = 1e-6;     // relative to k * coeff_norm
  double epsilon_override = 0.0;  // > 0 forces the K_eps window
};

struct SymbolValidation {
  bool passes_H = false;
  bool empty_characteristic_set = false;
  double min_tangential_gradient_norm = 0.0;
  double epsilon = 0.0;       // K_eps = {|p(theta)| <= eps} window
  double sup_p = 0.0;         // sup |p| on the sphere (sampled)
  double min_p = 0.0;         // min p on the sphere
  double max_p = 0.0;         // max p on the sphere
  std::vector<Vec> characteristic_samples;
};

// Samples the characteristic set on S^{n-1}, polishes roots along geodesics,
// measures the tangential gradient there and derives the smooth window eps.
// Throws DegenerateSymbol if the tangential gradient can be driven below
// tolerance on the zero set.
SymbolValidation validate_H(const HomogeneousSymbol& sym,
                            const ValidationOptions& opt = {});

}  // namespace fundsol
