#pragma once

#include <utility>
#include <vector>

#include "fundsol/solution.hpp"

namespace fundsol {

// Least-squares Laurent model  M(zeta) ~ sum_{j=-d}^{q} a_j zeta^j  fitted to
// samples in the absolute-convergence strip; a_0 is the independent value of
// the solution pairing.
struct LaurentFit {
  std::vector<double> zeta;
  std::vector<Complex> values;
  int pole_order = 0;  // selected d
  int q = 4;
  std::vector<Complex> coeffs;  // a_{-d} .. a_q
  Complex a0 = 0.0;
  double a0_uncertainty = 0.0;
  double residual = 0.0;
  double condition = 0.0;
};

struct OracleOptions {
  int n_samples = 16;
  double margin = 0.02;  // offset above the convergence abscissa
  int q = 4;
  double cond_threshold = 1e10;
};

// Lower edge of the absolute-convergence region for the continuation family.
double convergence_abscissa(int n, int k);

// M(zeta) = (2 pi)^{-n} int (p^2)^{zeta-1} p fhat, by polar quadrature with
// the analytic u-side kernel; one integration by parts in r when the radial
// exponent is negative.
Complex sample_M(const SphereBracketContext& ctx, const SpectralTestFunction& f, double zeta,
                 const RadialOptions& ropt = {});

// All abscissae in one radial pass (the node set is shared across zeta).
std::vector<std::pair<double, Complex>> sample_M_family(const SphereBracketContext& ctx,
                                                        const SpectralTestFunction& f,
                                                        const OracleOptions& opt = {},
                                                        const RadialOptions& ropt = {});

LaurentFit laurent_fit(const std::vector<std::pair<double, Complex>>& samples,
                       int pole_order_cap = 2, int q = 4, double cond_threshold = 1e10);

// Closed forms for the continuation prefactors h, m at 0 next to contour
// differentiation of their product formulas.
struct ProofConstants {
  int k = 0;
  double h0 = 0, hp0 = 0, m0 = 0, mp0 = 0, mpp0 = 0;                // closed form
  double h0_num = 0, hp0_num = 0, m0_num = 0, mp0_num = 0, mpp0_num = 0;
};
ProofConstants proof_constants(int k);

// Which digamma argument in the first boundary term matches the independent
// continuation value.
struct Adjudication {
  Complex a0 = 0.0;
  Complex theorem_value = 0.0, proof_value = 0.0;
  double err_theorem = 0.0, err_proof = 0.0;
  Variant winner = Variant::theorem;
  LaurentFit fit;
};
Adjudication adjudicate(const SolutionFunctional& sf, const SpectralTestFunction& f,
                        const OracleOptions& opt = {});

// Experimental delta-regularized cross-check for the locally integrable case;
// reported, never used as ground truth.
struct PvResult {
  Complex value = 0.0;
  std::vector<Complex> raw;           // I(delta_m)
  std::vector<Complex> extrapolants;  // Richardson over delta halving
  bool converged = false;
};
PvResult pv_crosscheck(const HomogeneousSymbol& sym, const SpectralTestFunction& f,
                       int sphere_level = 0, const RadialOptions& ropt = {});

}  // namespace fundsol
