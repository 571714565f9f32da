// Approximate functional equation apparatus for the product
// zeta(1/2+alpha+it) zeta(1/2+beta-it): the entire weight G(s), the gamma
// ratios g_{alpha,beta}(s,t) and X_{alpha,beta,t}, the smooth cutoff
// V_{alpha,beta}(x,t), a numerical residual check of the identity, and the
// diagonal arithmetical-factor identity.
#ifndef CRITLINE_AFE_HPP
#define CRITLINE_AFE_HPP

#include <cstdint>
#include <vector>

#include "critline/polynomial.hpp"
#include "critline/zeta.hpp"

namespace critline {

struct AfeShifts {
    cplx alpha;
    cplx beta;
    void validate() const;   // Re(alpha), Re(beta) < 1/2
};

// Vertical-line contour for the V integral: Re s = line_re, truncated at
// |Im s| = half_len (G decays like e^{-Im(s)^2}), Gauss-Legendre with
// `nodes` points per unit-width panel.
struct ContourSpec {
    double line_re = 1.0;
    double half_len = 6.5;
    int nodes = 16;
    void validate() const;
};

// G(s) = e^{s^2} ((alpha+beta)^2 - (2s)^2) / (alpha+beta)^2.
// Rejects alpha + beta = 0 (the polynomial factor exists to cancel a pole
// at s = -(alpha+beta)/2 and degenerates there).
cplx G_weight(const cplx& s, const AfeShifts& shifts);

// g_{alpha,beta}(s,t) = pi^{-s}
//   Gamma((1/2+alpha+s+it)/2) Gamma((1/2+beta+s-it)/2)
//   / [Gamma((1/2+alpha+it)/2) Gamma((1/2+beta-it)/2)],
// computed through log-gamma so nothing overflows.
cplx g_factor(const cplx& s, double t, const AfeShifts& shifts);

// X_{alpha,beta,t} = pi^{alpha+beta}
//   Gamma((1/2-alpha-it)/2)/Gamma((1/2+alpha+it)/2) *
//   Gamma((1/2-beta+it)/2)/Gamma((1/2+beta-it)/2).
cplx X_factor(double t, const AfeShifts& shifts);

// Precomputed contour data for V_{alpha,beta}(x,t) at fixed (shifts, t):
// evaluating at many x costs one complex exponential per node.
class VWeightTable {
public:
    VWeightTable(const AfeShifts& shifts, double t, const ContourSpec& contour);
    cplx operator()(double x) const;

private:
    double line_re_;
    std::vector<double> ys_;
    std::vector<cplx> coef_;
};

// V_{alpha,beta}(x,t) = (1/2 pi i) int_{(line_re)} G(s)/s g(s,t) x^{-s} ds.
// Evaluates at `nodes` and at doubled nodes; throws std::runtime_error if
// the two differ by more than 1e-6 (quadrature not converged).
cplx V_weight(double x, double t, const AfeShifts& shifts, const ContourSpec& contour);

// | zeta(1/2+alpha+it) zeta(1/2+beta-it) - truncated AFE right-hand side |
// with both sums truncated at mn <= truncation.
double afe_residual(double t, const AfeShifts& shifts, int64_t truncation,
                    const ZetaContext& ctx, const ContourSpec& contour = {});

// A_{0,0}(s,s,s) truncated at hm = kn <= cap: each block N = hm = kn
// contributes N^{-1-2s} (sum_{h|N} mu(h))^2, which vanishes identically for
// N > 1, so the result is exactly 1 for every cap.
double arith_factor_check(double s_re, int64_t cap);

// sum_{d|n} mu(d) for n = 1..cap (the per-N blocks above).
std::vector<int64_t> mobius_divisor_sums(int64_t cap);

} // namespace critline

#endif
