#include "fundsol/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "fundsol/errors.hpp"
#include "json.hpp"

namespace fundsol {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void normalize(Vec& v) {
  double n = norm2(v);
  for (double& x : v) x /= n;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

HomogeneousSymbol::HomogeneousSymbol(int n, int k, std::vector<Monomial> monomials)
    : n_(n), k_(k), mono_(std::move(monomials)) {
  if (n_ < 2) throw UnsupportedDimension("symbol dimension must be >= 2");
  if (k_ < 1) throw DegreeError("symbol degree must be >= 1");
  bool nonzero = false;
  double s2 = 0.0;
  for (const auto& m : mono_) {
    if (int(m.alpha.size()) != n_)
      throw DimensionMismatch("monomial multi-index size != n");
    if (order(m.alpha) != k_)
      throw DegreeError("monomial |alpha| != k");
    if (m.coeff != 0.0) nonzero = true;
    s2 += m.coeff * m.coeff;
  }
  if (!nonzero) throw DegreeError("symbol has no nonzero coefficient");
  coeff_norm_ = std::sqrt(s2);
}

double HomogeneousSymbol::eval(std::span<const double> xi) const {
  double s = 0.0;
  for (const auto& m : mono_) {
    double v = m.coeff;
    for (int i = 0; i < n_; ++i)
      for (int e = 0; e < m.alpha[i]; ++e) v *= xi[i];
    s += v;
  }
  return s;
}

Vec HomogeneousSymbol::gradient(std::span<const double> xi) const {
  Vec g(n_, 0.0);
  for (const auto& m : mono_) {
    for (int j = 0; j < n_; ++j) {
      if (m.alpha[j] == 0) continue;
      double v = m.coeff * m.alpha[j];
      for (int i = 0; i < n_; ++i) {
        int e = m.alpha[i] - (i == j ? 1 : 0);
        for (int q = 0; q < e; ++q) v *= xi[i];
      }
      g[j] += v;
    }
  }
  return g;
}

Vec HomogeneousSymbol::tangential_gradient(std::span<const double> theta) const {
  Vec g = gradient(theta);
  double r = dot(g, theta);
  for (int i = 0; i < n_; ++i) g[i] -= r * theta[i];
  return g;
}

double HomogeneousSymbol::tangential_gradient_norm(std::span<const double> theta) const {
  return norm2(tangential_gradient(theta));
}

Poly HomogeneousSymbol::as_poly() const {
  Poly p(n_);
  for (const auto& m : mono_) p.add_term(m.alpha, m.coeff);
  return p;
}

HomogeneousSymbol HomogeneousSymbol::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int n = j.at("n").get<int>();
  int k = j.at("k").get<int>();
  std::vector<Monomial> mono;
  for (const auto& m : j.at("monomials")) {
    Monomial mm;
    mm.alpha = m.at("alpha").get<std::vector<int>>();
    mm.coeff = m.at("coeff").get<double>();
    mono.push_back(std::move(mm));
  }
  return HomogeneousSymbol(n, k, std::move(mono));
}

HomogeneousSymbol HomogeneousSymbol::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open symbol file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

namespace {

// Quasi-uniform direction samples on S^{n-1}.
std::vector<Vec> sphere_samples(int n, int count, std::uint64_t seed) {
  std::vector<Vec> out;
  out.reserve(count);
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      double t = 2.0 * M_PI * i / count;
      out.push_back({std::cos(t), std::sin(t)});
    }
  } else if (n == 3) {
    // Fibonacci lattice
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / count;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double t = ga * i;
      out.push_back({r * std::cos(t), r * std::sin(t), z});
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    for (int i = 0; i < count; ++i) {
      Vec v(n);
      for (double& x : v) x = nd(rng);
      normalize(v);
      out.push_back(std::move(v));
    }
  }
  return out;
}

// Bisection for a root of p along the geodesic t -> cos(t) u + sin(t) v.
Vec bisect_root(const HomogeneousSymbol& sym, const Vec& u, const Vec& v,
                double ta, double tb) {
  auto at = [&](double t) {
    Vec x(u.size());
    for (size_t i = 0; i < u.size(); ++i)
      x[i] = std::cos(t) * u[i] + std::sin(t) * v[i];
    return x;
  };
  double fa = sym.eval(at(ta));
  for (int it = 0; it < 80; ++it) {
    double tm = 0.5 * (ta + tb);
    double fm = sym.eval(at(tm));
    if ((fa <= 0) == (fm <= 0)) {
      ta = tm;
      fa = fm;
    } else {
      tb = tm;
    }
  }
  return at(0.5 * (ta + tb));
}

// Local minimization of the tangential gradient norm constrained to the
// zero set (penalty form), used to detect hidden degeneracies that point
// sampling misses.
double polish_min_tg(const HomogeneousSymbol& sym, Vec theta, double scale) {
  const int n = sym.dim();
  auto objective = [&](const Vec& th) {
    double tg = sym.tangential_gradient_norm(th);
    double pv = sym.eval(th) / scale;
    return tg * tg + 1e6 * pv * pv * scale * scale;
  };
  double best_tg = sym.tangential_gradient_norm(theta);
  double f = objective(theta);
  double step = 0.05;
  std::mt19937_64 rng(777);
  std::normal_distribution<double> nd;
  for (int it = 0; it < 600 && step > 1e-12; ++it) {
    bool improved = false;
    for (int trial = 0; trial < 2 * n; ++trial) {
      Vec cand = theta;
      for (int i = 0; i < n; ++i) cand[i] += step * nd(rng);
      normalize(cand);
      double fc = objective(cand);
      if (fc < f) {
        theta = cand;
        f = fc;
        improved = true;
        if (std::abs(sym.eval(theta)) <= 1e-7 * scale)
          best_tg = std::min(best_tg, sym.tangential_gradient_norm(theta));
      }
    }
    if (!improved) step *= 0.5;
  }
  return best_tg;
}

}  // namespace

SymbolValidation validate_H(const HomogeneousSymbol& sym, const ValidationOptions& opt) {
  if (opt.sample_budget < 1000)
    throw ConfigError("validate_H: sample_budget must be >= 1000");
  const int n = sym.dim();
  SymbolValidation val;

  auto samples = sphere_samples(n, opt.sample_budget, opt.seed);
  std::vector<double> pvals(samples.size());
  double sup = 0.0, pmin = 1e300, pmax = -1e300;
  for (size_t i = 0; i < samples.size(); ++i) {
    pvals[i] = sym.eval(samples[i]);
    sup = std::max(sup, std::abs(pvals[i]));
    pmin = std::min(pmin, pvals[i]);
    pmax = std::max(pmax, pvals[i]);
  }
  val.sup_p = sup;
  val.min_p = pmin;
  val.max_p = pmax;

  if (pmin > 0.0 || pmax < 0.0) {
    // definite symbol: elliptic case, outside the constructions's interest
    val.empty_characteristic_set = true;
    val.passes_H = true;
    val.min_tangential_gradient_norm = 0.0;
    val.epsilon = 0.0;
    return val;
  }

  // Root search along geodesics seeded from the sample set.
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> nd;
  const int n_geodesics = std::max(32, opt.sample_budget / 256);
  const int per_circle = 512;
  std::vector<Vec> roots;
  for (int g = 0; g < n_geodesics; ++g) {
    Vec u(n), v(n);
    for (double& x : u) x = nd(rng);
    normalize(u);
    for (double& x : v) x = nd(rng);
    double d = dot(v, u);
    for (int i = 0; i < n; ++i) v[i] -= d * u[i];
    normalize(v);
    double prev_t = 0.0;
    Vec x(n);
    double prev_f = sym.eval(u);
    for (int i = 1; i <= per_circle; ++i) {
      double t = 2.0 * M_PI * i / per_circle;
      for (int q = 0; q < n; ++q)
        x[q] = std::cos(t) * u[q] + std::sin(t) * v[q];
      double f = sym.eval(x);
      if ((prev_f <= 0) != (f <= 0))
        roots.push_back(bisect_root(sym, u, v, prev_t, t));
      prev_t = t;
      prev_f = f;
    }
  }

  if (roots.empty()) {
    val.empty_characteristic_set = true;
    val.passes_H = true;
    val.epsilon = 0.0;
    return val;
  }

  double min_tg = 1e300;
  for (auto& r : roots) min_tg = std::min(min_tg, sym.tangential_gradient_norm(r));

  // Polish the worst candidates to hunt for hidden zeros of the tangential
  // gradient on the characteristic set.
  std::vector<size_t> idx(roots.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return sym.tangential_gradient_norm(roots[a]) < sym.tangential_gradient_norm(roots[b]);
  });
  for (size_t i = 0; i < std::min<size_t>(idx.size(), 16); ++i)
    min_tg = std::min(min_tg, polish_min_tg(sym, roots[idx[i]], sup));

  const double grad_tol = opt.grad_tol_rel * sym.degree() * sym.coeff_norm();
  if (min_tg <= grad_tol) {
    std::ostringstream msg;
    msg << "tangential gradient vanishes on the characteristic set; offending directions:";
    for (size_t i = 0; i < std::min<size_t>(idx.size(), 4); ++i) {
      msg << " (";
      const Vec& r = roots[idx[i]];
      for (size_t q = 0; q < r.size(); ++q) msg << (q ? "," : "") << r[q];
      msg << ")";
    }
    throw DegenerateSymbol(msg.str());
  }

  val.passes_H = true;
  val.min_tangential_gradient_norm = min_tg;
  for (size_t i = 0; i < std::min<size_t>(roots.size(), 256); ++i)
    val.characteristic_samples.push_back(roots[i]);

  // Derive the smooth window: largest ladder value eps with the tangential
  // gradient above min_tg/2 throughout K_eps, kept well inside the range of
  // p on the sphere.
  if (opt.epsilon_override > 0.0) {
    val.epsilon = opt.epsilon_override;
    return val;
  }
  double cap = 0.4 * std::min(std::abs(pmin), std::abs(pmax));
  double eps = 0.0;
  for (int m = 1; m <= 40; ++m) {
    double cand = sup * std::pow(2.0, -m);
    if (cand > cap) continue;
    bool ok = true;
    for (size_t i = 0; i < samples.size(); ++i) {
      if (std::abs(pvals[i]) <= cand &&
          sym.tangential_gradient_norm(samples[i]) < 0.5 * min_tg) {
        ok = false;
        break;
      }
    }
    if (ok) {
      eps = cand;
      break;
    }
  }
  val.epsilon = eps;
  return val;
}

}  // namespace fundsol
