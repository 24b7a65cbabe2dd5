#include "fundsol/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "fundsol/errors.hpp"

namespace fundsol {

namespace {

// int_0^R r^gamma F^{(m)}(r) dr on the scan mesh
Complex scan_power_integral(const RadialScan& scan, int m, double gamma) {
  Complex s = 0.0;
  for (size_t i = 0; i < scan.r.size(); ++i)
    s += scan.w[i] * std::pow(scan.r[i], gamma) * scan.values[m][i];
  return s;
}

Complex assemble_M(const RadialScan& scan, int n, int k, double zeta) {
  double g = 2.0 * k * zeta - k + n - 1.0;
  Complex radial;
  if (g >= 0.0) {
    radial = scan_power_integral(scan, 0, g);
  } else {
    // one integration by parts lifts the near-non-integrable power
    size_t last = scan.r.size() - 1;
    double rl = scan.r[last];
    radial = std::pow(rl, g + 1.0) / (g + 1.0) * scan.values[0][last] -
             scan_power_integral(scan, 1, g + 1.0) / (g + 1.0);
  }
  return std::pow(2.0 * M_PI, -n) * radial;
}

}  // namespace

double convergence_abscissa(int n, int k) {
  return std::max(0.0, double(k - n) / (2.0 * k));
}

Complex sample_M(const SphereBracketContext& ctx, const SpectralTestFunction& f, double zeta,
                 const RadialOptions& ropt) {
  const int n = ctx.symbol().dim(), k = ctx.symbol().degree();
  if (zeta <= convergence_abscissa(n, k))
    throw OutsideConvergenceRegion("zeta must exceed the convergence abscissa");
  BracketWeights bw = ctx.power_pair_weights(zeta);
  double g = 2.0 * k * zeta - k + n - 1.0;
  RadialScan scan = build_scan(bw, f, g >= 0.0 ? 0 : 1, ropt);
  return assemble_M(scan, n, k, zeta);
}

std::vector<std::pair<double, Complex>> sample_M_family(const SphereBracketContext& ctx,
                                                        const SpectralTestFunction& f,
                                                        const OracleOptions& opt,
                                                        const RadialOptions& ropt) {
  const int n = ctx.symbol().dim(), k = ctx.symbol().degree();
  const double lo = convergence_abscissa(n, k) + opt.margin;
  const double hi = lo + 1.0 / (4.0 * k);
  std::vector<double> zetas(opt.n_samples);
  for (int i = 0; i < opt.n_samples; ++i) {
    double x = std::cos(M_PI * (2.0 * i + 1.0) / (2.0 * opt.n_samples));  // (-1,1)
    zetas[i] = lo + (hi - lo) * 0.5 * (1.0 + x);
  }
  std::sort(zetas.begin(), zetas.end());

  std::vector<BracketWeights> bws;
  bws.reserve(zetas.size());
  std::vector<const BracketWeights*> ptrs;
  for (double z : zetas) bws.push_back(ctx.power_pair_weights(z));
  for (auto& b : bws) ptrs.push_back(&b);
  auto scans = build_scans(ptrs, f, 1, ropt);

  std::vector<std::pair<double, Complex>> out;
  for (size_t i = 0; i < zetas.size(); ++i)
    out.emplace_back(zetas[i], assemble_M(scans[i], n, k, zetas[i]));
  return out;
}

LaurentFit laurent_fit(const std::vector<std::pair<double, Complex>>& samples,
                       int pole_order_cap, int q, double cond_threshold) {
  if (pole_order_cap > 2) throw PoleOrderExceeded("pole order cap is 2");
  const int ns = int(samples.size());
  if (ns < 12) throw Error("laurent_fit needs at least 12 samples");

  LaurentFit lf;
  lf.q = q;
  for (const auto& [z, v] : samples) {
    lf.zeta.push_back(z);
    lf.values.push_back(v);
  }
  double vscale = 0.0;
  for (const auto& v : lf.values) vscale = std::max(vscale, std::abs(v));
  if (vscale == 0.0) vscale = 1.0;

  // column-normalized complex least squares for a fixed pole order / degree
  auto fit_once = [&](int d, int qq, std::vector<Complex>& coeffs, double& resid,
                      double& cond) {
    const int nc = d + qq + 1;
    Eigen::MatrixXcd V(ns, nc);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < nc; ++j) V(i, j) = std::pow(lf.zeta[i], j - d);
    Eigen::VectorXd colnorm(nc);
    for (int j = 0; j < nc; ++j) {
      colnorm(j) = V.col(j).norm();
      V.col(j) /= colnorm(j);
    }
    Eigen::VectorXcd y(ns);
    for (int i = 0; i < ns; ++i) y(i) = lf.values[i];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    cond = svd.singularValues()(0) / svd.singularValues()(nc - 1);
    Eigen::VectorXcd c = svd.solve(y);
    resid = (V * c - y).norm() / y.norm();
    coeffs.resize(nc);
    for (int j = 0; j < nc; ++j) coeffs[j] = c(j) / colnorm(j);
  };

  // model selection: smallest pole order whose residual is within a factor
  // of the deepest model's
  std::vector<std::vector<Complex>> all_coeffs(pole_order_cap + 1);
  std::vector<double> all_resid(pole_order_cap + 1), all_cond(pole_order_cap + 1);
  for (int d = 0; d <= pole_order_cap; ++d)
    fit_once(d, q, all_coeffs[d], all_resid[d], all_cond[d]);
  double best = *std::min_element(all_resid.begin(), all_resid.end());
  int sel = pole_order_cap;
  for (int d = 0; d <= pole_order_cap; ++d)
    if (all_resid[d] <= std::max(10.0 * best, 1e-12)) {
      sel = d;
      break;
    }
  if (all_cond[sel] > cond_threshold)
    throw IllConditionedFit("laurent fit condition estimate beyond threshold");

  lf.pole_order = sel;
  lf.coeffs = all_coeffs[sel];
  lf.residual = all_resid[sel];
  lf.condition = all_cond[sel];
  lf.a0 = lf.coeffs[sel];

  // uncertainty: sensitivity of a0 to one more regular term
  std::vector<Complex> c2;
  double r2, k2;
  fit_once(sel, q + 1, c2, r2, k2);
  lf.a0_uncertainty = std::abs(c2[sel] - lf.a0) + lf.residual * vscale;
  return lf;
}

namespace {

// p-th derivative at 0 by the Cauchy integral on a circle of radius rad
double contour_deriv(const std::function<Complex(Complex)>& fn, int p, double rad) {
  const int N = 64;
  Complex s = 0.0;
  for (int i = 0; i < N; ++i) {
    double t = 2.0 * M_PI * i / N;
    Complex z = rad * Complex(std::cos(t), std::sin(t));
    s += fn(z) / std::pow(z, p);
  }
  double fact = 1.0;
  for (int j = 2; j <= p; ++j) fact *= j;
  return (s * fact / double(N)).real();
}

}  // namespace

ProofConstants proof_constants(int k) {
  if (k < 1 || k > 8) throw ConfigError("proof constants implemented for 1 <= k <= 8");
  ProofConstants pc;
  pc.k = k;
  const double g = 0.57721566490153286060651209008240243;
  const double g2k = std::tgamma(2.0 * k), g1p2k = std::tgamma(2.0 * k + 1.0);
  const double psi2k = digamma_int(2 * k), psi1_2k = trigamma_int(2 * k);

  pc.h0 = -1.0 / g1p2k;  // = (1/2k) * (-1/Gamma(2k))
  pc.hp0 = -(g + psi2k) / g2k;
  pc.m0 = 1.0 / (2.0 * g1p2k);
  pc.mp0 = (1.0 + k * (g + psi2k)) / g1p2k;
  pc.mpp0 = (12.0 + k * (6.0 * g * (2.0 + k * g) + k * M_PI * M_PI) +
             6.0 * k * (psi2k * (2.0 + 2.0 * k * g + k * psi2k) - k * psi1_2k)) /
            (3.0 * g1p2k);

  auto h = [k](Complex z) {
    Complex prod = 1.0 / (2.0 * k);
    for (int j = 1; j <= 2 * k - 1; ++j) prod /= (2.0 * k * z - double(j));
    return prod;
  };
  auto m = [k](Complex z) {
    Complex prod = 1.0 / (4.0 * k * (2.0 * z - 1.0));
    for (int j = 1; j <= 2 * k - 1; ++j) prod /= (2.0 * k * z - double(j));
    return prod;
  };
  const double rad = 1.0 / (8.0 * k);  // well inside the pole lattice at j/(2k)
  pc.h0_num = contour_deriv(h, 0, rad);
  pc.hp0_num = contour_deriv(h, 1, rad);
  pc.m0_num = contour_deriv(m, 0, rad);
  pc.mp0_num = contour_deriv(m, 1, rad);
  pc.mpp0_num = contour_deriv(m, 2, rad);
  return pc;
}

Adjudication adjudicate(const SolutionFunctional& sf, const SpectralTestFunction& f,
                        const OracleOptions& opt) {
  Adjudication adj;
  auto samples = sample_M_family(sf.context(), f, opt, sf.budgets().radial);
  adj.fit = laurent_fit(samples, 2, opt.q, opt.cond_threshold);
  adj.a0 = adj.fit.a0;
  if (sf.case_tag() == 'A') {
    adj.theorem_value = adj.proof_value = sf.eval_A(f);
  } else {
    auto t = sf.eval_B_terms(f);
    const auto& c = sf.constants();
    Complex term1_theorem, term1_proof;
    if (sf.variant() == Variant::theorem) {
      term1_theorem = t.term1;
      term1_proof = t.term1 * ((c.euler_gamma + c.psi_2k) / (c.euler_gamma + c.psi_k));
    } else {
      term1_proof = t.term1;
      term1_theorem = t.term1 * ((c.euler_gamma + c.psi_k) / (c.euler_gamma + c.psi_2k));
    }
    adj.theorem_value = term1_theorem + t.term2 + t.term3;
    adj.proof_value = term1_proof + t.term2 + t.term3;
  }
  // Symmetric symbol/test-function pairs can make a0 itself vanish; keep the
  // relative error well conditioned by scaling against the delta pairing too.
  double scale = std::max({std::abs(adj.a0), std::abs(f.point_value()), 1e-300});
  adj.err_theorem = std::abs(adj.theorem_value - adj.a0) / scale;
  adj.err_proof = std::abs(adj.proof_value - adj.a0) / scale;
  adj.winner = adj.err_theorem <= adj.err_proof ? Variant::theorem : Variant::proof;
  return adj;
}

PvResult pv_crosscheck(const HomogeneousSymbol& sym, const SpectralTestFunction& f,
                       int sphere_level, const RadialOptions& ropt) {
  const int n = sym.dim(), k = sym.degree();
  if (k >= n) throw CaseMismatch("the regularized cross-check applies to k < n only");
  SphereQuadrature quad =
      build_quadrature(n, sphere_level > 0 ? sphere_level : default_sphere_level(n) / 2);
  double R = ropt.R > 0.0 ? ropt.R : default_truncation_radius(f);
  Rule1D mesh = graded_mesh(R, ropt.decades, ropt.panels_per_decade, ropt.uniform_panels,
                            ropt.gl_pts);

  const int nd = 6;
  std::vector<double> deltas(nd);
  for (int m = 0; m < nd; ++m) deltas[m] = 0.3 * std::pow(0.5, m) * sym.coeff_norm();

  std::vector<Complex> I(nd, 0.0);
  for (size_t q = 0; q < quad.size(); ++q) {
    double pq = sym.eval(quad.nodes[q]);
    RayFunction rf = f.restrict_to_ray(quad.nodes[q]);
    for (size_t i = 0; i < mesh.nodes.size(); ++i) {
      double r = mesh.nodes[i];
      if (0.5 * rf.c * r * r > 46.0) continue;
      Complex fv = rf.at(r);
      double rk = std::pow(r, k), rn1 = std::pow(r, n - 1);
      double num = rk * pq;
      for (int m = 0; m < nd; ++m)
        I[m] += quad.weights[q] * mesh.weights[i] * rn1 * num * fv /
                (num * num + deltas[m] * deltas[m]);
    }
  }
  PvResult res;
  double pref = std::pow(2.0 * M_PI, -n);
  for (auto& v : I) v *= pref;
  res.raw = I;
  for (int m = 0; m + 1 < nd; ++m)
    res.extrapolants.push_back((4.0 * I[m + 1] - I[m]) / 3.0);
  const auto& E = res.extrapolants;
  size_t ne = E.size();
  double d1 = std::abs(E[ne - 1] - E[ne - 2]);
  double d0 = std::abs(E[ne - 2] - E[ne - 3]);
  res.converged = d1 <= d0;
  if (!res.converged && d1 > 10.0 * d0)
    throw NoConvergenceTrend("regularized sequence is diverging");
  res.value = E.back();
  return res;
}

}  // namespace fundsol
