#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fundsol/quadrature.hpp"
#include "fundsol/symbol.hpp"

namespace fundsol {

using ThetaFunction = std::function<Complex(std::span<const double>)>;

struct LerayOptions {
  double eta = 0.0;     // mollifier width; default eps/4
  int win_pts = 129;    // window grid on [-eps, eps]
  int fit_degree = 14;  // near-zero polynomial fit degree
  int grid_pts = 512;   // global u-grid for the cumulative
  std::string estimator = "auto";  // auto | mollified-delta | exact-n2
};

// Numerical representation of u -> L(h)(u): a certified-smooth window fit
// around u = 0 plus the cumulative A(u) = int_{p(theta)<=u} h dtheta
// globally.  Pointwise values outside the window are never stored; outer
// pairings go through the atoms (Stieltjes) or, for synthetic profiles,
// the closed-form density.
struct LerayProfile {
  int n = 0;
  double u_min = 0.0, u_max = 0.0;
  double eps = 0.0;  // smooth window radius
  double eta = 0.0;  // mollifier width used (0 for exact estimators)
  std::string estimator;

  std::vector<double> grid_u;
  std::vector<Complex> A;  // cumulative on grid_u

  std::vector<double> win_u;
  std::vector<Complex> win_vals;       // estimated L on the window grid
  std::vector<Complex> fit;            // coefficients in s = u/eps
  double fit_residual = 0.0;

  // quadrature atoms (u_j = p(theta_j), mass_j = w_j h(theta_j)), sorted by u
  std::vector<double> atom_u;
  std::vector<Complex> atom_mass;

  // optional closed-form density (synthetic profiles)
  std::function<Complex(double)> density;

  Complex total_mass = 0.0;  // integral of L = int_S h dtheta

  Complex fit_eval(double u) const;
  // l-th derivative of the window fit; l in {1,2}, |u| <= eps
  Complex deriv(int l, double u) const;
};

LerayProfile leray_transform(const HomogeneousSymbol& sym, const ThetaFunction& h,
                             const SphereQuadrature& quad, const SymbolValidation& val,
                             const LerayOptions& opt = {});

// Profile injected from a closed-form density (test/diagnostic path).
LerayProfile synthetic_profile(const std::function<Complex(double)>& density,
                               double u_min, double u_max, double eps,
                               const LerayOptions& opt = {});

// Roots of p restricted to the unit circle minus the level u (n = 2 only),
// as angles in [0, 2*pi).
std::vector<double> circle_roots(const HomogeneousSymbol& sym, double u, int scan_pts = 4096);

// Independent n = 3 estimator: traces the level curves {p = u} on S^2 by
// azimuthal slicing and integrates h / |tangential grad p| along them.
Complex curve_trace_leray(const HomogeneousSymbol& sym, const ThetaFunction& h, double u,
                          int n_azimuth = 2048);

}  // namespace fundsol
