#pragma once

#include <memory>

#include "fundsol/pairing.hpp"
#include "fundsol/radial.hpp"
#include "fundsol/symbol.hpp"

namespace fundsol {

// First-term coefficient of the non-integrable case: the two candidate
// digamma arguments are adjudicated numerically against the continuation
// oracle, never silently picked.
enum class Variant { theorem, proof };

struct ConstantsBundle {
  double euler_gamma;
  double gamma_2k, gamma_1p2k, gamma_k;  // Gamma(2k), Gamma(1+2k), Gamma(k)
  double psi_k, psi_2k;                  // digamma at k and 2k
};

// digamma at a positive integer: -gamma + H_{m-1}
double digamma_int(int m);
// trigamma at a positive integer: pi^2/6 - sum_{j<m} 1/j^2
double trigamma_int(int m);
ConstantsBundle make_constants(int k);

struct SolutionBudgets {
  int sphere_level = 0;  // 0: dimension default
  BracketContextOptions bracket;
  RadialOptions radial;
  ValidationOptions validation;
};

int default_sphere_level(int n);

// The assembled fundamental-solution functional. Case A (k < n) integrates
// the log bracket against r^{n-k-1}; case B (k >= n) combines two boundary
// derivatives and a log-weighted radial integral. Immutable after
// construction; evaluations share state read-only.
class SolutionFunctional {
 public:
  // The bracket here is the derivative pairing taken with the opposite
  // orientation to the naive cutoff split; one recorded constant, validated
  // by the delta property, absorbs the difference.
  static constexpr double kDistributionalSign = -1.0;

  explicit SolutionFunctional(HomogeneousSymbol sym, Variant variant = Variant::theorem,
                              SolutionBudgets budgets = {});

  char case_tag() const { return case_tag_; }
  int dim() const { return sym_.dim(); }
  int degree() const { return sym_.degree(); }
  Variant variant() const { return variant_; }
  const HomogeneousSymbol& symbol() const { return sym_; }
  const SymbolValidation& validation() const { return val_; }
  const SphereQuadrature& quadrature() const { return quad_; }
  const SphereBracketContext& context() const { return *ctx_; }
  const ConstantsBundle& constants() const { return c_; }
  const SolutionBudgets& budgets() const { return bud_; }
  const BracketWeights& log_weights(int j) const;

  struct BTerms {
    Complex term1 = 0.0, term2 = 0.0, term3 = 0.0;
    Complex total = 0.0;
  };

  Complex eval(const SpectralTestFunction& f) const;  // dispatch on case tag
  Complex eval_A(const SpectralTestFunction& f) const;
  Complex eval_B(const SpectralTestFunction& f) const;
  BTerms eval_B_terms(const SpectralTestFunction& f) const;
  Complex eval_null(const SpectralTestFunction& f) const;
  Complex eval_family(Complex lambda, const SpectralTestFunction& f) const;

 private:
  HomogeneousSymbol sym_;
  Variant variant_;
  SolutionBudgets bud_;
  char case_tag_;
  SymbolValidation val_;
  SphereQuadrature quad_;
  std::unique_ptr<SphereBracketContext> ctx_;
  ConstantsBundle c_;
  BracketWeights bw1_, bw2_;  // log and log^2 bracket node weights
};

// (Qf)^ = p * f-hat; the delta-property probe <s, Qf> = f(0).
SpectralTestFunction apply_Q(const HomogeneousSymbol& sym, const SpectralTestFunction& f);

}  // namespace fundsol
