#include "fundsol/radial.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "fundsol/errors.hpp"

namespace fundsol {

namespace {

double binom(int n, int j) {
  double b = 1.0;
  for (int i = 0; i < j; ++i) b = b * (n - i) / (i + 1);
  return b;
}

double falling(int n, int j) {
  double f = 1.0;
  for (int i = 0; i < j; ++i) f *= (n - i);
  return f;
}

}  // namespace

double default_truncation_radius(const SpectralTestFunction& f, int max_order) {
  // Choose R so that the hat and its first max_order radial derivatives are
  // below 1e-14 relative at R.  Each derivative of exp(-s^2 r^2 / 2) can
  // contribute a factor up to s^2 r, so the polynomial prefactor grows like
  // max(1, s^2 R, R)^{deg + max_order}.
  double s2 = f.sigma() * f.sigma();
  int deg = f.hat_poly().degree() + 2 + max_order;
  double R = 8.0 / f.sigma();
  for (int it = 0; it < 6; ++it) {
    double growth = std::log(std::max({R, s2 * R, 1.0}));
    R = std::sqrt(2.0 / s2 * (14.0 * std::log(10.0) + deg * growth));
  }
  return R;
}

std::vector<RadialScan> build_scans(const std::vector<const BracketWeights*>& brackets,
                                    const SpectralTestFunction& f, int max_order,
                                    const RadialOptions& opt) {
  const size_t nb = brackets.size();
  if (nb == 0) return {};
  const size_t npts = brackets[0]->points.size();
  for (const auto* b : brackets)
    if (b->points.size() != npts)
      throw Error("build_scans: brackets must share one point set");

  double R = opt.R > 0.0 ? opt.R : default_truncation_radius(f, max_order);
  Rule1D mesh = graded_mesh(R, opt.decades, opt.panels_per_decade, opt.uniform_panels,
                            opt.gl_pts);
  const size_t nr = mesh.nodes.size();

  std::vector<RadialScan> scans(nb);
  for (auto& s : scans) {
    s.r = mesh.nodes;
    s.w = mesh.weights;
    s.R = R;
    s.max_order = max_order;
    s.values.assign(max_order + 1, std::vector<Complex>(nr, 0.0));
    s.at_zero.assign(max_order + 1, 0.0);
  }

  const int n_chunks = 64;
  struct ChunkAcc {
    // [bracket][order][r] plus at-zero values
    std::vector<std::vector<std::vector<Complex>>> vals;
    std::vector<std::vector<Complex>> zero;
  };
  std::vector<ChunkAcc> acc(n_chunks);
  for (auto& c : acc) {
    c.vals.assign(nb, std::vector<std::vector<Complex>>(max_order + 1,
                                                        std::vector<Complex>(nr, 0.0)));
    c.zero.assign(nb, std::vector<Complex>(max_order + 1, 0.0));
  }

  std::atomic<int> next_chunk{0};
  auto worker = [&]() {
    std::vector<RayFunction> derivs(max_order + 1);
    for (;;) {
      int c = next_chunk.fetch_add(1);
      if (c >= n_chunks) return;
      size_t lo = npts * c / n_chunks, hi = npts * (c + 1) / n_chunks;
      for (size_t ptid = lo; ptid < hi; ++ptid) {
        bool relevant = false;
        for (size_t b = 0; b < nb; ++b)
          if (brackets[b]->w[ptid] != 0.0) relevant = true;
        if (!relevant) continue;
        derivs[0] = f.restrict_to_ray(brackets[0]->points[ptid]);
        for (int m = 1; m <= max_order; ++m) derivs[m] = derivs[m - 1].derivative();
        for (size_t b = 0; b < nb; ++b) {
          double wb = brackets[b]->w[ptid];
          if (wb == 0.0) continue;
          for (int m = 0; m <= max_order; ++m)
            acc[c].zero[b][m] += wb * derivs[m].coeffs[0];
        }
        for (size_t i = 0; i < nr; ++i) {
          double r = mesh.nodes[i];
          if (0.5 * derivs[0].c * r * r > 46.0) continue;  // envelope below 1e-20
          Complex env = derivs[0].envelope(r);
          for (int m = 0; m <= max_order; ++m) {
            Complex val = derivs[m].poly_at(r) * env;
            for (size_t b = 0; b < nb; ++b) {
              double wb = brackets[b]->w[ptid];
              if (wb != 0.0) acc[c].vals[b][m][i] += wb * val;
            }
          }
        }
      }
    }
  };

  int nt = opt.threads > 0 ? opt.threads
                           : std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  // deterministic reduction in chunk order
  for (int c = 0; c < n_chunks; ++c)
    for (size_t b = 0; b < nb; ++b) {
      for (int m = 0; m <= max_order; ++m) {
        scans[b].at_zero[m] += acc[c].zero[b][m];
        for (size_t i = 0; i < nr; ++i) scans[b].values[m][i] += acc[c].vals[b][m][i];
      }
    }
  for (auto& s : scans)
    for (size_t i = 0; i < nr; ++i) s.scale = std::max(s.scale, std::abs(s.values[0][i]));
  return scans;
}

RadialScan build_scan(const BracketWeights& bw, const SpectralTestFunction& f, int max_order,
                      const RadialOptions& opt) {
  return build_scans({&bw}, f, max_order, opt)[0];
}

Complex taylor_at_zero(const BracketWeights& bw, const SpectralTestFunction& f, int m) {
  if (m > f.derivative_cap()) throw OrderCapExceeded("taylor order above derivative cap");
  Complex s = 0.0;
  for (size_t i = 0; i < bw.points.size(); ++i) {
    if (bw.w[i] == 0.0) continue;
    RayFunction rf = f.restrict_to_ray(bw.points[i]);
    for (int q = 0; q < m; ++q) rf = rf.derivative();
    s += bw.w[i] * rf.coeffs[0];
  }
  return s;
}

Complex boundary_derivative(const RadialScan& scan, int k, int n) {
  if (k < n) return 0.0;
  if (k - n > scan.max_order) throw OrderCapExceeded("scan order too low for boundary term");
  return binom(2 * k - 1, k + n - 1) * std::tgamma(double(k + n)) * scan.at_zero[k - n];
}

Complex log_weighted_integral(const RadialScan& scan, int k, int n) {
  if (k < n) throw CaseMismatch("log-weighted integral applies to k >= n only");
  const int jmax = k + n - 1;  // lowest surviving power of r is r^0
  if (2 * k > scan.max_order)
    throw OrderCapExceeded("scan must carry derivatives up to order 2k");
  if (2 * k - jmax < 0) throw NonintegrableAssembly("assembly produced a negative power");
  // tail certification
  size_t last = scan.r.size() - 1;
  for (int j = 0; j <= jmax; ++j) {
    double tail = std::abs(scan.values[2 * k - j][last]) * std::pow(scan.R, k + n - 1 - j);
    if (tail > 1e-8 * std::max(scan.scale, 1e-300) * std::pow(scan.R, k + n - 1))
      throw TailNotCertified("radial scan tail is not negligible at R");
  }
  Complex total = 0.0;
  for (size_t i = 0; i < scan.r.size(); ++i) {
    double r = scan.r[i];
    Complex g = 0.0;
    for (int j = 0; j <= jmax; ++j)
      g += binom(2 * k, j) * falling(k + n - 1, j) * std::pow(r, k + n - 1 - j) *
           scan.values[2 * k - j][i];
    total += scan.w[i] * std::log(r) * g;
  }
  return total;
}

Complex power_weighted_integral(const RadialScan& scan, double exponent) {
  Complex total = 0.0;
  for (size_t i = 0; i < scan.r.size(); ++i)
    total += scan.w[i] * std::pow(scan.r[i], exponent) * scan.values[0][i];
  return total;
}

}  // namespace fundsol
