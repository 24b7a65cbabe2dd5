#include "fundsol/leray.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "fundsol/errors.hpp"

namespace fundsol {

namespace {

double gauss_pdf(double t, double w) {
  return std::exp(-0.5 * t * t / (w * w)) / (w * std::sqrt(2.0 * M_PI));
}

// One Richardson step over the mollifier width kills the O(eta^2) bias.
double mollifier_R(double t, double eta) {
  return (4.0 * gauss_pdf(t, 0.5 * eta) - gauss_pdf(t, eta)) / 3.0;
}

void fit_window(LerayProfile& prof, int degree) {
  const int m = int(prof.win_u.size());
  Eigen::MatrixXd V(m, degree + 1);
  for (int i = 0; i < m; ++i) {
    double s = prof.win_u[i] / prof.eps;
    double pw = 1.0;
    for (int d = 0; d <= degree; ++d) {
      V(i, d) = pw;
      pw *= s;
    }
  }
  Eigen::VectorXd re(m), im(m);
  for (int i = 0; i < m; ++i) {
    re(i) = prof.win_vals[i].real();
    im(i) = prof.win_vals[i].imag();
  }
  Eigen::VectorXd cr = V.householderQr().solve(re);
  Eigen::VectorXd ci = V.householderQr().solve(im);
  prof.fit.resize(degree + 1);
  for (int d = 0; d <= degree; ++d) prof.fit[d] = Complex(cr(d), ci(d));
  double res = 0.0, scale = 0.0;
  for (int i = 0; i < m; ++i) {
    Complex fv = prof.fit_eval(prof.win_u[i]);
    res += std::norm(fv - prof.win_vals[i]);
    scale += std::norm(prof.win_vals[i]);
  }
  prof.fit_residual = scale > 0 ? std::sqrt(res / scale) : std::sqrt(res);
}

}  // namespace

Complex LerayProfile::fit_eval(double u) const {
  double s = u / eps;
  Complex v = 0.0;
  for (size_t d = fit.size(); d-- > 0;) v = v * s + fit[d];
  return v;
}

Complex LerayProfile::deriv(int l, double u) const {
  if (l < 1 || l > 2) throw Error("leray derivative order must be 1 or 2");
  if (std::abs(u) > eps)
    throw OutsideSmoothWindow("derivatives are certified only on [-eps, eps]");
  double s = u / eps;
  Complex v = 0.0;
  for (size_t d = fit.size(); d-- > size_t(l);) {
    double fall = 1.0;
    for (int q = 0; q < l; ++q) fall *= double(d - q);
    // Horner over the shifted series
    v = v * s + fit[d] * fall;
  }
  return v / std::pow(eps, l);
}

std::vector<double> circle_roots(const HomogeneousSymbol& sym, double u, int scan_pts) {
  std::vector<double> roots;
  auto g = [&](double t) {
    double x[2] = {std::cos(t), std::sin(t)};
    return sym.eval(std::span<const double>(x, 2)) - u;
  };
  double prev_t = 0.0, prev_g = g(0.0);
  for (int i = 1; i <= scan_pts; ++i) {
    double t = 2.0 * M_PI * i / scan_pts;
    double gv = g(t);
    if ((prev_g <= 0) != (gv <= 0)) {
      double a = prev_t, b = t, ga = prev_g;
      for (int it = 0; it < 60; ++it) {
        double mmid = 0.5 * (a + b), gm = g(mmid);
        if ((ga <= 0) == (gm <= 0)) {
          a = mmid;
          ga = gm;
        } else {
          b = mmid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_t = t;
    prev_g = gv;
  }
  return roots;
}

LerayProfile leray_transform(const HomogeneousSymbol& sym, const ThetaFunction& h,
                             const SphereQuadrature& quad, const SymbolValidation& val,
                             const LerayOptions& opt) {
  if (!val.passes_H || val.epsilon <= 0.0)
    throw HypothesisViolated("leray_transform requires a validated symbol with a smooth window");
  LerayProfile prof;
  prof.n = sym.dim();
  prof.eps = val.epsilon;
  prof.eta = opt.eta > 0.0 ? opt.eta : val.epsilon / 4.0;
  if (prof.eta > val.epsilon / 4.0)
    throw MollifierTooWide("mollifier width must be <= eps/4");

  const size_t m = quad.size();
  std::vector<double> p(m);
  std::vector<Complex> mass(m);
  double umin = 1e300, umax = -1e300;
  for (size_t j = 0; j < m; ++j) {
    p[j] = sym.eval(quad.nodes[j]);
    mass[j] = quad.weights[j] * h(quad.nodes[j]);
    umin = std::min(umin, p[j]);
    umax = std::max(umax, p[j]);
  }
  prof.u_min = umin;
  prof.u_max = umax;

  std::vector<size_t> order(m);
  for (size_t j = 0; j < m; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return p[a] < p[b]; });
  prof.atom_u.resize(m);
  prof.atom_mass.resize(m);
  Complex total = 0.0;
  for (size_t j = 0; j < m; ++j) {
    prof.atom_u[j] = p[order[j]];
    prof.atom_mass[j] = mass[order[j]];
    total += mass[order[j]];
  }
  prof.total_mass = total;

  // cumulative on the global grid
  prof.grid_u.resize(opt.grid_pts);
  prof.A.resize(opt.grid_pts);
  Complex acc = 0.0;
  size_t pos = 0;
  for (int i = 0; i < opt.grid_pts; ++i) {
    double u = umin + (umax - umin) * i / (opt.grid_pts - 1);
    while (pos < m && prof.atom_u[pos] <= u) acc += prof.atom_mass[pos++];
    prof.grid_u[i] = u;
    prof.A[i] = acc;
  }

  // window estimate
  prof.win_u.resize(opt.win_pts);
  prof.win_vals.assign(opt.win_pts, 0.0);
  for (int i = 0; i < opt.win_pts; ++i)
    prof.win_u[i] = -prof.eps + 2.0 * prof.eps * i / (opt.win_pts - 1);

  bool exact2 = (sym.dim() == 2 && opt.estimator != "mollified-delta");
  if (exact2) {
    prof.estimator = "exact-n2";
    prof.eta = 0.0;
    for (int i = 0; i < opt.win_pts; ++i) {
      Complex s = 0.0;
      for (double t : circle_roots(sym, prof.win_u[i])) {
        double x[2] = {std::cos(t), std::sin(t)};
        std::span<const double> th(x, 2);
        double tg = sym.tangential_gradient_norm(th);
        s += h(th) / tg;
      }
      prof.win_vals[i] = s;
    }
  } else {
    prof.estimator = "mollified-delta";
    const double cutoff = 10.0 * prof.eta;
    // atoms are sorted: only the band |p_j - u| <= cutoff contributes
    for (int i = 0; i < opt.win_pts; ++i) {
      double u = prof.win_u[i];
      auto lo = std::lower_bound(prof.atom_u.begin(), prof.atom_u.end(), u - cutoff) -
                prof.atom_u.begin();
      auto hi = std::upper_bound(prof.atom_u.begin(), prof.atom_u.end(), u + cutoff) -
                prof.atom_u.begin();
      Complex s = 0.0;
      for (auto j = lo; j < hi; ++j)
        s += prof.atom_mass[j] * mollifier_R(prof.atom_u[j] - u, prof.eta);
      prof.win_vals[i] = s;
    }
  }
  fit_window(prof, opt.fit_degree);
  return prof;
}

LerayProfile synthetic_profile(const std::function<Complex(double)>& density, double u_min,
                               double u_max, double eps, const LerayOptions& opt) {
  LerayProfile prof;
  prof.n = 0;
  prof.u_min = u_min;
  prof.u_max = u_max;
  prof.eps = eps;
  prof.estimator = "synthetic";
  prof.density = density;
  prof.win_u.resize(opt.win_pts);
  prof.win_vals.resize(opt.win_pts);
  for (int i = 0; i < opt.win_pts; ++i) {
    prof.win_u[i] = -eps + 2.0 * eps * i / (opt.win_pts - 1);
    prof.win_vals[i] = density(prof.win_u[i]);
  }
  fit_window(prof, opt.fit_degree);
  // cumulative by trapezoid on a fine grid
  const int gp = std::max(opt.grid_pts, 4096);
  prof.grid_u.resize(gp);
  prof.A.resize(gp);
  Complex acc = 0.0;
  Complex prev = density(u_min);
  prof.grid_u[0] = u_min;
  prof.A[0] = 0.0;
  for (int i = 1; i < gp; ++i) {
    double u = u_min + (u_max - u_min) * i / (gp - 1);
    Complex cur = density(u);
    acc += 0.5 * (prev + cur) * ((u_max - u_min) / (gp - 1));
    prof.grid_u[i] = u;
    prof.A[i] = acc;
    prev = cur;
  }
  prof.total_mass = acc;
  return prof;
}

Complex curve_trace_leray(const HomogeneousSymbol& sym, const ThetaFunction& h, double u,
                          int n_azimuth) {
  if (sym.dim() != 3) throw UnsupportedDimension("curve tracing implemented for n = 3 only");
  // roots in t = cos(phi) for a fixed azimuth
  auto slice_roots = [&](double psi) {
    std::vector<Vec> pts;
    const int nt = 512;
    auto at = [&](double t) {
      double s = std::sqrt(std::max(0.0, 1.0 - t * t));
      return Vec{s * std::cos(psi), s * std::sin(psi), t};
    };
    double prev_t = -1.0, prev_f = sym.eval(at(-1.0)) - u;
    for (int i = 1; i <= nt; ++i) {
      double t = -1.0 + 2.0 * i / nt;
      double f = sym.eval(at(t)) - u;
      if ((prev_f <= 0) != (f <= 0)) {
        double a = prev_t, b = t, fa = prev_f;
        for (int it = 0; it < 60; ++it) {
          double mm = 0.5 * (a + b);
          double fm = sym.eval(at(mm)) - u;
          if ((fa <= 0) == (fm <= 0)) {
            a = mm;
            fa = fm;
          } else {
            b = mm;
          }
        }
        pts.push_back(at(0.5 * (a + b)));
      }
      prev_t = t;
      prev_f = f;
    }
    return pts;
  };

  std::vector<std::vector<Vec>> slices(n_azimuth);
  size_t count = 0;
  for (int i = 0; i < n_azimuth; ++i) {
    slices[i] = slice_roots(2.0 * M_PI * i / n_azimuth);
    if (i == 0)
      count = slices[i].size();
    else if (slices[i].size() != count)
      throw Error("curve tracing: level-set branch count changes with azimuth");
  }
  if (count == 0) return 0.0;

  Complex total = 0.0;
  for (size_t b = 0; b < count; ++b) {
    for (int i = 0; i < n_azimuth; ++i) {
      const Vec& x0 = slices[i][b];
      const Vec& x1 = slices[(i + 1) % n_azimuth][b];
      double ds = 0.0;
      for (int q = 0; q < 3; ++q) ds += (x1[q] - x0[q]) * (x1[q] - x0[q]);
      ds = std::sqrt(ds);
      Complex v0 = h(x0) / sym.tangential_gradient_norm(x0);
      Complex v1 = h(x1) / sym.tangential_gradient_norm(x1);
      total += 0.5 * (v0 + v1) * ds;
    }
  }
  return total;
}

}  // namespace fundsol
