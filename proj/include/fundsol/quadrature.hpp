#pragma once

#include <functional>
#include <vector>

#include "fundsol/symbol.hpp"

namespace fundsol {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss rules via Golub-Welsch on the Jacobi matrix.
Rule1D gauss_legendre(int npts);                              // weight 1 on [-1,1]
Rule1D gauss_jacobi(int npts, double alpha, double beta);     // (1-x)^a (1+x)^b on [-1,1]
Rule1D gauss_hermite(int npts);                               // exp(-x^2) on R

// Affine image of gauss_legendre on [a,b].
Rule1D gauss_legendre_panel(double a, double b, int npts);

// Panels of [0, upper], geometrically graded toward 0 over `decades`
// decades with `panels_per_decade` panels each, then `uniform_panels`
// on the remaining outer part; `gl` Gauss points per panel.  Handles
// integrable endpoint singularities (log, |x|^gamma with gamma > -1).
Rule1D graded_mesh(double upper, int decades, int panels_per_decade,
                   int uniform_panels, int gl);

struct SphereQuadrature {
  int n = 0;
  std::vector<Vec> nodes;       // unit vectors
  std::vector<double> weights;  // positive, sum to |S^{n-1}|

  size_t size() const { return nodes.size(); }

  Complex integrate(const std::function<Complex(std::span<const double>)>& h) const;
};

// n = 2: equispaced trapezoid on the circle (2*level nodes).
// n >= 3: tensor product of Gauss-Jacobi rules in hyperspherical angles
// (level nodes per polar angle, 2*level in azimuth).
SphereQuadrature build_quadrature(int n, int level);

double sphere_area(int n);

}  // namespace fundsol
