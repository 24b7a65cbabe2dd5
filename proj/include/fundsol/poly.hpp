#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

namespace fundsol {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;

inline int order(const MultiIndex& a) {
  int s = 0;
  for (int e : a) s += e;
  return s;
}

// Multivariate polynomial with complex coefficients, stored sparsely by
// multi-index.  Closed under the operations the spectral side needs:
// products, derivatives, coordinate scaling.
class Poly {
 public:
  Poly() : dim_(0) {}
  explicit Poly(int dim) : dim_(dim) {}

  static Poly constant(int dim, Complex c) {
    Poly p(dim);
    if (c != 0.0) p.terms_[MultiIndex(dim, 0)] = c;
    return p;
  }

  int dim() const { return dim_; }
  bool empty() const { return terms_.empty(); }
  const std::map<MultiIndex, Complex>& terms() const { return terms_; }

  void add_term(const MultiIndex& alpha, Complex c) {
    auto& v = terms_[alpha];
    v += c;
    if (v == 0.0) terms_.erase(alpha);
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }

  Poly operator*(const Poly& o) const {
    Poly r(dim_);
    for (const auto& [a, ca] : terms_)
      for (const auto& [b, cb] : o.terms_) {
        MultiIndex s(a);
        for (int i = 0; i < dim_; ++i) s[i] += b[i];
        r.add_term(s, ca * cb);
      }
    return r;
  }

  Poly operator*(Complex c) const {
    Poly r(dim_);
    if (c == 0.0) return r;
    for (const auto& [a, ca] : terms_) r.terms_[a] = ca * c;
    return r;
  }

  // d/dx_j
  Poly derivative(int j) const {
    Poly r(dim_);
    for (const auto& [a, c] : terms_) {
      if (a[j] == 0) continue;
      MultiIndex b(a);
      b[j] -= 1;
      r.add_term(b, c * double(a[j]));
    }
    return r;
  }

  // p(x/lambda)
  Poly scale_argument(double lambda) const {
    Poly r(dim_);
    for (const auto& [a, c] : terms_) {
      double f = 1.0;
      for (int i = 0; i < dim_; ++i)
        for (int e = 0; e < a[i]; ++e) f /= lambda;
      r.terms_[a] = c * f;
    }
    return r;
  }

  Complex eval(std::span<const double> x) const {
    Complex s = 0.0;
    for (const auto& [a, c] : terms_) {
      double m = 1.0;
      for (int i = 0; i < dim_; ++i)
        for (int e = 0; e < a[i]; ++e) m *= x[i];
      s += c * m;
    }
    return s;
  }

  int degree() const {
    int d = 0;
    for (const auto& [a, c] : terms_) d = std::max(d, order(a));
    return d;
  }

  // Restriction to a ray x = r*theta: coefficients of the univariate
  // polynomial in r.
  std::vector<Complex> restrict_to_ray(std::span<const double> theta) const {
    std::vector<Complex> out(degree() + 1, 0.0);
    for (const auto& [a, c] : terms_) {
      double m = 1.0;
      for (int i = 0; i < dim_; ++i)
        for (int e = 0; e < a[i]; ++e) m *= theta[i];
      out[order(a)] += c * m;
    }
    return out;
  }

 private:
  int dim_;
  std::map<MultiIndex, Complex> terms_;
};

}  // namespace fundsol
