#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "fundsol/leray.hpp"

namespace fundsol {

// Fixed C^4 polynomial cutoff: 1 on [-rho/2, rho/2], 0 outside [-rho, rho],
// degree-9 smoothstep transition.
double bump_chi(double u, double rho);
double bump_chi_prime(double u, double rho);

struct LogBracketSpec {
  int j = 1;    // log power, 1 or 2
  double rho;   // cutoff radius, 0 < rho <= eps
  int graded_levels = 40;
  int gl_pts = 8;
  int outer_panels = 96;  // density-backed outer integration
};

// <log|u|^j ; L^{(1)}(.)(u)> evaluated through the cutoff split:
// inner part against the window fit, outer part by parts against the
// cumulative (Stieltjes over the atoms) or the closed-form density.
Complex log_bracket(const LerayProfile& prof, const LogBracketSpec& spec);

// A bracket collapsed to a linear functional on h: value = sum w_i h(theta_i).
// Scans over a radius family f^(r theta) reuse the same points and weights.
struct BracketWeights {
  std::vector<Vec> points;
  std::vector<double> w;

  Complex eval(const ThetaFunction& h) const {
    Complex s = 0.0;
    for (size_t i = 0; i < points.size(); ++i) s += w[i] * h(points[i]);
    return s;
  }
};

struct BracketContextOptions {
  double eta = 0.0;  // default eps/4
  double rho = 0.0;  // default 0.75*eps
  int win_pts = 129;
  int fit_degree = 14;
  int graded_levels = 40;
  int gl_pts = 8;
};

// Node-level machinery shared by all brackets over one (symbol, quadrature)
// pair: p at the nodes, the window-fit projector, and the mollifier kernel
// (or exact circle roots for n = 2).
class SphereBracketContext {
 public:
  SphereBracketContext(const HomogeneousSymbol& sym, const SphereQuadrature& quad,
                       const SymbolValidation& val, BracketContextOptions opt = {});

  // <log|u|^j ; L^{(1)}(h)(u)> as node weights
  BracketWeights log_pair_weights(int j) const;

  // <|u|^{2 zeta - 2} u ; L(h)(u)> as node weights (continuation kernel)
  BracketWeights power_pair_weights(double zeta) const;

  // Profile of h built with the exact same estimator configuration.
  LerayProfile profile(const ThetaFunction& h) const;

  const HomogeneousSymbol& symbol() const { return sym_; }
  const SphereQuadrature& quadrature() const { return quad_; }
  const SymbolValidation& validation() const { return val_; }
  double eps() const { return val_.epsilon; }
  double eta() const { return eta_; }
  double rho() const { return opt_.rho; }
  LerayOptions leray_options() const;

 private:
  // g = Mfit^T a maps window-grid values to the inner-part contribution
  std::vector<double> inner_projection(const Eigen::VectorXd& a) const;
  void append_inner_weights(const std::vector<double>& g, BracketWeights& bw) const;

  const HomogeneousSymbol& sym_;
  const SphereQuadrature& quad_;
  SymbolValidation val_;
  BracketContextOptions opt_;
  double eta_;

  std::vector<double> p_;      // p at quadrature nodes
  std::vector<double> win_u_;  // window grid
  Eigen::MatrixXd pinv_;       // (degree+1) x win_pts least-squares projector

  // n = 2 exact estimator data: roots and gradients per window point
  struct RootPoint {
    Vec theta;
    double inv_tg;
  };
  std::vector<std::vector<RootPoint>> roots_;  // per window point
};

}  // namespace fundsol
