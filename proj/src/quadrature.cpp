#include "fundsol/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>

#include "fundsol/errors.hpp"

namespace fundsol {

namespace {

// Nodes/weights from the symmetric tridiagonal Jacobi matrix.
Rule1D golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag,
                    double mu0) {
  const int m = int(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    J(i, i) = diag[i];
    if (i + 1 < m) J(i, i + 1) = J(i + 1, i) = offdiag[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule1D r;
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    r.weights[i] = mu0 * v * v;
  }
  return r;
}

}  // namespace

Rule1D gauss_jacobi(int npts, double a, double b) {
  std::vector<double> diag(npts), off(npts > 1 ? npts - 1 : 0);
  double ab = a + b;
  diag[0] = (b - a) / (ab + 2.0);
  for (int k = 1; k < npts; ++k) {
    double d = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    diag[k] = (b * b - a * a) / d;
  }
  if (npts > 1) {
    off[0] = std::sqrt(4.0 * (a + 1.0) * (b + 1.0) /
                       ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    for (int k = 2; k < npts; ++k) {
      double t = 2.0 * k + ab;
      off[k - 1] = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + ab) /
                             (t * t * (t + 1.0) * (t - 1.0)));
    }
  }
  double mu0 = std::pow(2.0, ab + 1.0) *
               std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  return golub_welsch(diag, off, mu0);
}

Rule1D gauss_legendre(int npts) { return gauss_jacobi(npts, 0.0, 0.0); }

Rule1D gauss_hermite(int npts) {
  std::vector<double> diag(npts, 0.0), off(npts > 1 ? npts - 1 : 0);
  for (int k = 1; k < npts; ++k) off[k - 1] = std::sqrt(0.5 * k);
  return golub_welsch(diag, off, std::sqrt(M_PI));
}

Rule1D gauss_legendre_panel(double a, double b, int npts) {
  static thread_local std::map<int, Rule1D> cache;
  auto it = cache.find(npts);
  if (it == cache.end()) it = cache.emplace(npts, gauss_legendre(npts)).first;
  const Rule1D& gl = it->second;
  Rule1D r;
  r.nodes.reserve(npts);
  r.weights.reserve(npts);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < npts; ++i) {
    r.nodes.push_back(mid + half * gl.nodes[i]);
    r.weights.push_back(half * gl.weights[i]);
  }
  return r;
}

Rule1D graded_mesh(double upper, int decades, int panels_per_decade, int uniform_panels,
                   int gl) {
  Rule1D out;
  double inner_edge = upper * std::pow(10.0, -decades);
  // geometric region [inner_edge, upper_graded]
  double upper_graded = uniform_panels > 0 ? 0.1 * upper : upper;
  int n_geo = panels_per_decade * (uniform_panels > 0 ? decades - 1 : decades);
  double ratio = std::pow(upper_graded / inner_edge, 1.0 / n_geo);
  double a = inner_edge;
  for (int i = 0; i < n_geo; ++i) {
    double b = (i + 1 == n_geo) ? upper_graded : a * ratio;
    Rule1D p = gauss_legendre_panel(a, b, gl);
    out.nodes.insert(out.nodes.end(), p.nodes.begin(), p.nodes.end());
    out.weights.insert(out.weights.end(), p.weights.begin(), p.weights.end());
    a = b;
  }
  for (int i = 0; i < uniform_panels; ++i) {
    double pa = upper_graded + (upper - upper_graded) * i / uniform_panels;
    double pb = upper_graded + (upper - upper_graded) * (i + 1) / uniform_panels;
    Rule1D p = gauss_legendre_panel(pa, pb, gl);
    out.nodes.insert(out.nodes.end(), p.nodes.begin(), p.nodes.end());
    out.weights.insert(out.weights.end(), p.weights.begin(), p.weights.end());
  }
  return out;
}

double sphere_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

SphereQuadrature build_quadrature(int n, int level) {
  if (n < 2) throw UnsupportedDimension("sphere dimension must be >= 2");
  if (n > 6) throw UnsupportedDimension("tensor sphere rules capped at n = 6");
  SphereQuadrature q;
  q.n = n;
  if (n == 2) {
    const int m = 2 * level;
    q.nodes.reserve(m);
    q.weights.assign(m, M_PI / level);
    for (int i = 0; i < m; ++i) {
      double t = 2.0 * M_PI * i / m;
      q.nodes.push_back({std::cos(t), std::sin(t)});
    }
    return q;
  }
  // polar angles phi_1..phi_{n-2} with sin powers n-2, ..., 1; azimuth last
  std::vector<Rule1D> polar;
  for (int i = 1; i <= n - 2; ++i) {
    int m = n - 1 - i;  // sin^m weight
    polar.push_back(gauss_jacobi(level, 0.5 * (m - 1), 0.5 * (m - 1)));
  }
  const int naz = 2 * level;
  std::vector<int> idx(n - 2, 0);
  while (true) {
    // cos(phi_i) = t_i
    double w = 1.0;
    std::vector<double> t(n - 2), s(n - 2);
    for (int i = 0; i < n - 2; ++i) {
      t[i] = polar[i].nodes[idx[i]];
      s[i] = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
      w *= polar[i].weights[idx[i]];
    }
    for (int j = 0; j < naz; ++j) {
      double psi = 2.0 * M_PI * j / naz;
      Vec x(n);
      double prod = 1.0;
      for (int i = 0; i < n - 2; ++i) {
        x[i] = prod * t[i];
        prod *= s[i];
      }
      x[n - 2] = prod * std::cos(psi);
      x[n - 1] = prod * std::sin(psi);
      q.nodes.push_back(std::move(x));
      q.weights.push_back(w * M_PI / level);
    }
    int d = n - 3;
    for (; d >= 0; --d) {
      if (++idx[d] < level) break;
      idx[d] = 0;
    }
    if (d < 0) break;
  }
  return q;
}

Complex SphereQuadrature::integrate(
    const std::function<Complex(std::span<const double>)>& h) const {
  Complex s = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * h(nodes[i]);
  return s;
}

}  // namespace fundsol
