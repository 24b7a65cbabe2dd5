#pragma once

#include <vector>

#include "fundsol/pairing.hpp"
#include "fundsol/testfn.hpp"

namespace fundsol {

struct RadialOptions {
  double R = 0.0;  // truncation radius; 0 derives it from the hat decay
  int decades = 9;
  int panels_per_decade = 12;
  int uniform_panels = 48;
  int gl_pts = 8;
  double tail_tol = 1e-10;  // relative tail certification threshold
  int threads = 0;          // 0: hardware; reduction order is fixed either way
};

// Radial scan of a bracket family F(r) = <kernel ; L(f^(r theta))> together
// with its r-derivatives, all computed analytically along rays.
struct RadialScan {
  std::vector<double> r;  // quadrature nodes of the log-adapted radial mesh
  std::vector<double> w;
  // values[m][i] = F^{(m)}(r_i), m = 0..max_order
  std::vector<std::vector<Complex>> values;
  std::vector<Complex> at_zero;  // F^{(m)}(0)
  double R = 0.0;
  double scale = 0.0;  // max |F| over the grid, for tail certification
  int max_order = 0;
};

double default_truncation_radius(const SpectralTestFunction& f, int max_order = 0);

// One pass over the bracket points evaluates every requested scan.
std::vector<RadialScan> build_scans(const std::vector<const BracketWeights*>& brackets,
                                    const SpectralTestFunction& f, int max_order,
                                    const RadialOptions& opt = {});

RadialScan build_scan(const BracketWeights& bw, const SpectralTestFunction& f, int max_order,
                      const RadialOptions& opt = {});

// F^{(m)}(0) through the directional-derivative expansion of the hat.
Complex taylor_at_zero(const BracketWeights& bw, const SpectralTestFunction& f, int m);

// d^{2k-1}/dr^{2k-1} ( r^{k+n-1} F(r) ) |_{r=0}; zero when k < n.
Complex boundary_derivative(const RadialScan& scan, int k, int n);

// int_0^R log(r) d^{2k}/dr^{2k} ( r^{k+n-1} F(r) ) dr  (k >= n)
Complex log_weighted_integral(const RadialScan& scan, int k, int n);

// int_0^R F(r) r^{n-k-1} dr  (case A radial integral, k < n)
Complex power_weighted_integral(const RadialScan& scan, double exponent);

}  // namespace fundsol
