#include "fundsol/pairing.hpp"

#include <cmath>

#include "fundsol/errors.hpp"

namespace fundsol {

namespace {

// C^4 step: S(0)=0, S(1)=1, first four derivatives vanish at both ends.
// The extra smoothness keeps sphere-quadrature sums of cutoff kernels
// spectrally accurate.
double smoothstep9(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double x5 = x * x * x * x * x;
  return x5 * (126.0 + x * (-420.0 + x * (540.0 + x * (-315.0 + 70.0 * x))));
}

double smoothstep9_prime(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  double a = x * (1.0 - x);
  return 630.0 * a * a * a * a;
}

// d/du [ (1-chi) log|u|^j ], zero on [-rho/2, rho/2]
double outer_kernel_prime(double u, double rho, int j) {
  double au = std::abs(u);
  if (au <= 0.5 * rho) return 0.0;
  double lg = std::log(au);
  double lgj = (j == 1) ? lg : lg * lg;
  double dlgj = (j == 1 ? 1.0 : 2.0 * lg) / u;
  return -bump_chi_prime(u, rho) * lgj + (1.0 - bump_chi(u, rho)) * dlgj;
}

// a_m = int chi(u) log|u|^j d/du[(u/eps)^m] du  (inner-part moments)
Eigen::VectorXd log_inner_moments(int j, double rho, double eps, int degree, int levels,
                                  int gl) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(degree + 1);
  for (int lvl = 0; lvl < levels; ++lvl) {
    double hi = rho * std::pow(2.0, -lvl);
    double lo = 0.5 * hi;
    Rule1D panel = gauss_legendre_panel(lo, hi, gl);
    for (size_t q = 0; q < panel.nodes.size(); ++q) {
      double u = panel.nodes[q], w = panel.weights[q];
      for (int sgn = 0; sgn < 2; ++sgn) {
        double us = sgn ? -u : u;
        double lg = std::log(u);
        double lgj = (j == 1) ? lg : lg * lg;
        double base = bump_chi(us, rho) * lgj * w;
        double spow = 1.0;  // (us/eps)^{m-1}
        for (int m = 1; m <= degree; ++m) {
          a(m) += base * m / eps * spow;
          spow *= us / eps;
        }
      }
    }
  }
  return a;
}

// a_m = int psi(u) |u|^{2 zeta - 2} u (u/eps)^m du, computed in closed form
// (psi is piecewise polynomial: the bump shape with radius "rad").
Eigen::VectorXd power_inner_moments(double zeta, double rad, double eps, int degree) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(degree + 1);
  // psi on [rad/2, rad] as a polynomial in u: 1 - S(2u/rad - 1)
  // S poly in x: x^5 (126 - 420 x + 540 x^2 - 315 x^3 + 70 x^4)
  std::vector<double> sx = {0.0, 0.0, 0.0, 0.0,    0.0,
                            126.0, -420.0, 540.0, -315.0, 70.0};
  // substitute x = (2/rad) u - 1
  const int ns = int(sx.size());
  std::vector<double> cu(ns, 0.0);  // psi transition coefficients in u
  {
    std::vector<double> xpow = {1.0};  // (2u/rad - 1)^p as u-poly
    for (int p = 0; p < ns; ++p) {
      for (size_t t = 0; t < xpow.size(); ++t) cu[t] -= sx[p] * xpow[t];
      // multiply xpow by (2u/rad - 1)
      std::vector<double> nx(xpow.size() + 1, 0.0);
      for (size_t t = 0; t < xpow.size(); ++t) {
        nx[t] -= xpow[t];
        nx[t + 1] += 2.0 / rad * xpow[t];
      }
      xpow = std::move(nx);
    }
    cu[0] += 1.0;  // psi = 1 - S
  }
  for (int m = 1; m <= degree; m += 2) {  // even m vanish by parity
    double q = 2.0 * zeta - 1.0 + m;
    double plateau = std::pow(0.5 * rad, q + 1.0) / (q + 1.0);
    double trans = 0.0;
    for (int p = 0; p < ns; ++p) {
      double e = q + p + 1.0;
      trans += cu[p] * (std::pow(rad, e) - std::pow(0.5 * rad, e)) / e;
    }
    a(m) = 2.0 * (plateau + trans) / std::pow(eps, m);
  }
  return a;
}

}  // namespace

double bump_chi(double u, double rho) {
  double s = std::abs(u) / rho;
  return 1.0 - smoothstep9(2.0 * s - 1.0);
}

double bump_chi_prime(double u, double rho) {
  double s = std::abs(u) / rho;
  double d = -smoothstep9_prime(2.0 * s - 1.0) * 2.0 / rho;
  return u >= 0.0 ? d : -d;
}

Complex log_bracket(const LerayProfile& prof, const LogBracketSpec& spec) {
  if (spec.j < 1 || spec.j > 2) throw Error("log power must be 1 or 2");
  if (prof.eps <= 0.0 || spec.rho <= 0.0 || spec.rho > prof.eps)
    throw WindowTooSmall("cutoff radius must satisfy 0 < rho <= eps");
  for (Complex c : prof.fit)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw NonfiniteProfile("window fit has non-finite coefficients");

  // inner part: int chi log^j d/du(fit)
  Eigen::VectorXd a = log_inner_moments(spec.j, spec.rho, prof.eps, int(prof.fit.size()) - 1,
                                        spec.graded_levels, spec.gl_pts);
  Complex inner = 0.0;
  for (size_t m = 0; m < prof.fit.size(); ++m) inner += a(m) * prof.fit[m];

  // outer part, by parts: - int d/du[(1-chi) log^j] dA
  Complex outer = 0.0;
  if (!prof.atom_u.empty()) {
    for (size_t i = 0; i < prof.atom_u.size(); ++i) {
      double u = prof.atom_u[i];
      if (std::abs(u) <= 0.5 * spec.rho) continue;
      outer -= prof.atom_mass[i] * outer_kernel_prime(u, spec.rho, spec.j);
    }
  } else if (prof.density) {
    double hi = std::max(std::abs(prof.u_min), std::abs(prof.u_max));
    // panel edges aligned with the cutoff breakpoints rho/2 and rho, where
    // the kernel loses smoothness
    auto run_panels = [&](double lo_edge, double hi_edge, int npanels) {
      if (hi_edge <= lo_edge) return;
      for (int sgn = 0; sgn < 2; ++sgn) {
        for (int i = 0; i < npanels; ++i) {
          double pa = lo_edge + (hi_edge - lo_edge) * i / npanels;
          double pb = lo_edge + (hi_edge - lo_edge) * (i + 1) / npanels;
          Rule1D panel = gauss_legendre_panel(pa, pb, spec.gl_pts);
          for (size_t q = 0; q < panel.nodes.size(); ++q) {
            double u = sgn ? -panel.nodes[q] : panel.nodes[q];
            if (u < prof.u_min || u > prof.u_max) continue;
            outer -=
                panel.weights[q] * outer_kernel_prime(u, spec.rho, spec.j) * prof.density(u);
          }
        }
      }
    };
    run_panels(0.5 * spec.rho, spec.rho, 16);
    run_panels(spec.rho, hi, spec.outer_panels);
  } else {
    // Riemann-Stieltjes against the grid cumulative
    for (size_t i = 0; i + 1 < prof.grid_u.size(); ++i) {
      double um = 0.5 * (prof.grid_u[i] + prof.grid_u[i + 1]);
      if (std::abs(um) <= 0.5 * spec.rho) continue;
      outer -= (prof.A[i + 1] - prof.A[i]) * outer_kernel_prime(um, spec.rho, spec.j);
    }
  }
  return inner + outer;
}

SphereBracketContext::SphereBracketContext(const HomogeneousSymbol& sym,
                                           const SphereQuadrature& quad,
                                           const SymbolValidation& val,
                                           BracketContextOptions opt)
    : sym_(sym), quad_(quad), val_(val), opt_(opt) {
  if (!val.passes_H || val.epsilon <= 0.0)
    throw HypothesisViolated("bracket context requires a validated symbol");
  eta_ = opt_.eta > 0.0 ? opt_.eta : val.epsilon / 4.0;
  if (eta_ > val.epsilon / 4.0) throw MollifierTooWide("mollifier width must be <= eps/4");
  if (opt_.rho <= 0.0) opt_.rho = 0.75 * val.epsilon;
  if (opt_.rho > val.epsilon) throw WindowTooSmall("rho must be <= eps");

  p_.resize(quad.size());
  for (size_t j = 0; j < quad.size(); ++j) p_[j] = sym.eval(quad.nodes[j]);

  win_u_.resize(opt_.win_pts);
  for (int i = 0; i < opt_.win_pts; ++i)
    win_u_[i] = -val.epsilon + 2.0 * val.epsilon * i / (opt_.win_pts - 1);

  const int d = opt_.fit_degree;
  Eigen::MatrixXd V(opt_.win_pts, d + 1);
  for (int i = 0; i < opt_.win_pts; ++i) {
    double s = win_u_[i] / val.epsilon, pw = 1.0;
    for (int m = 0; m <= d; ++m) {
      V(i, m) = pw;
      pw *= s;
    }
  }
  pinv_ = V.completeOrthogonalDecomposition().pseudoInverse();

  if (sym.dim() == 2) {
    roots_.resize(opt_.win_pts);
    for (int i = 0; i < opt_.win_pts; ++i) {
      for (double t : circle_roots(sym_, win_u_[i])) {
        Vec th = {std::cos(t), std::sin(t)};
        double tg = sym_.tangential_gradient_norm(th);
        roots_[i].push_back({std::move(th), 1.0 / tg});
      }
    }
  }
}

LerayOptions SphereBracketContext::leray_options() const {
  LerayOptions lo;
  lo.eta = eta_;
  lo.win_pts = opt_.win_pts;
  lo.fit_degree = opt_.fit_degree;
  return lo;
}

LerayProfile SphereBracketContext::profile(const ThetaFunction& h) const {
  return leray_transform(sym_, h, quad_, val_, leray_options());
}

std::vector<double> SphereBracketContext::inner_projection(const Eigen::VectorXd& a) const {
  Eigen::VectorXd g = pinv_.transpose() * a;
  return std::vector<double>(g.data(), g.data() + g.size());
}

void SphereBracketContext::append_inner_weights(const std::vector<double>& g,
                                                BracketWeights& bw) const {
  if (sym_.dim() == 2) {
    for (size_t i = 0; i < roots_.size(); ++i)
      for (const auto& rp : roots_[i]) {
        bw.points.push_back(rp.theta);
        bw.w.push_back(g[i] * rp.inv_tg);
      }
    return;
  }
  // mollified kernel against the quadrature nodes (accumulated into the
  // node weights that were already appended by the caller)
  auto gauss = [](double t, double w) {
    return std::exp(-0.5 * t * t / (w * w)) / (w * std::sqrt(2.0 * M_PI));
  };
  const double cutoff = 12.0 * eta_;
  for (size_t jn = 0; jn < quad_.size(); ++jn) {
    double pj = p_[jn];
    if (pj < win_u_.front() - cutoff || pj > win_u_.back() + cutoff) continue;
    double s = 0.0;
    for (size_t i = 0; i < win_u_.size(); ++i) {
      double t = pj - win_u_[i];
      if (std::abs(t) > cutoff) continue;
      s += g[i] * (4.0 * gauss(t, 0.5 * eta_) - gauss(t, eta_)) / 3.0;
    }
    bw.w[jn] += quad_.weights[jn] * s;
  }
}

// The near/far split in the collapsed weights uses the bump shape with a
// FIXED radius: the window edge eps.  That keeps the far kernel smooth on
// the sphere (spectral accuracy of the atom sums) while making the weights
// exactly independent of the regularization cutoff radius rho, which is
// the property the regularized bracket promises.
BracketWeights SphereBracketContext::log_pair_weights(int j) const {
  if (j < 1 || j > 2) throw Error("log power must be 1 or 2");
  const double eps = val_.epsilon;
  BracketWeights bw;
  bw.points = quad_.nodes;
  bw.w.resize(quad_.size());
  for (size_t jn = 0; jn < quad_.size(); ++jn)
    bw.w[jn] = -quad_.weights[jn] * outer_kernel_prime(p_[jn], eps, j);
  Eigen::VectorXd a = log_inner_moments(j, eps, eps, opt_.fit_degree,
                                        opt_.graded_levels, opt_.gl_pts);
  append_inner_weights(inner_projection(a), bw);
  return bw;
}

BracketWeights SphereBracketContext::power_pair_weights(double zeta) const {
  const double eps = val_.epsilon;
  BracketWeights bw;
  bw.points = quad_.nodes;
  bw.w.resize(quad_.size());
  for (size_t jn = 0; jn < quad_.size(); ++jn) {
    double u = p_[jn];
    double k = (std::abs(u) > 0.0) ? std::copysign(std::pow(std::abs(u), 2.0 * zeta - 1.0), u)
                                   : 0.0;
    bw.w[jn] = quad_.weights[jn] * (1.0 - bump_chi(u, eps)) * k;
  }
  Eigen::VectorXd a = power_inner_moments(zeta, eps, eps, opt_.fit_degree);
  append_inner_weights(inner_projection(a), bw);
  return bw;
}

}  // namespace fundsol
