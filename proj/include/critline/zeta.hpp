// Euler-Maclaurin evaluation of zeta(s) and its s-derivatives in the
// critical strip at moderate height, the Mobius sieve, the smoothed operator
// V(s) = Q(-(1/L) d/ds) zeta(s), and the mollifier psi(s).
#ifndef CRITLINE_ZETA_HPP
#define CRITLINE_ZETA_HPP

#include <cstdint>
#include <vector>

#include "critline/polynomial.hpp"

namespace critline {

// zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//           + sum_{k=1}^{q} B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1} + err,
// with N = em_terms and q = em_order.  The error dies like (|s|/(2 pi N))^{2q},
// so N must grow with |Im s|.
struct ZetaContext {
    int em_terms = 50;
    int em_order = 8;
    double t_max = 100.0;

    // Cheap profile for bulk integration: N = max(50, ceil(1.3|t|/(2pi)) + 20).
    // Good to ~1e-4 relative by t = 1e4; the moment experiment tolerates far
    // more than that.
    static ZetaContext for_height(double t);
    // N = max(50, 2|t|): relative error ~1e-10 up to t = 1e4.
    static ZetaContext accurate(double t);

    void validate() const;
};

// mu(n) for 1 <= n <= limit by a linear sieve; index 0 unused.
std::vector<int8_t> mobius_sieve(int64_t limit);

cplx zeta_em(const cplx& s, const ZetaContext& ctx);

// zeta^{(j)}(s) for j = 0..jmax in one pass over the direct sum.
std::vector<cplx> zeta_derivs_upto(const cplx& s, int jmax, const ZetaContext& ctx);

// j-th derivative, 1 <= j <= 8.
cplx zeta_derivative(const cplx& s, int j, const ZetaContext& ctx);

// Adds the boundary + Bernoulli parts of the Euler-Maclaurin formula (and
// their first jmax s-derivatives) into out[0..jmax].  Shared between
// zeta_derivs_upto and the table-driven moment integrand so both paths agree
// exactly.
void zeta_em_tail_derivs(const cplx& s, int N, int order, int jmax, cplx* out);

// V(s) = sum_j q_j (-1/logT)^j zeta^{(j)}(s) for Q(x) = sum_j q_j x^j.
cplx V_eval(const cplx& s, const Polynomial& Q, double logT, const ZetaContext& ctx);

// psi(s) = sum_{h<=M} mu(h) h^{-(s + 1/2 - sigma0)} P(log(M/h)/log M)
// with sigma0 = 1/2 - sigma0_offset/logT.  On the sigma0-line the h-exponent
// is exactly 1/2 + it.
struct MollifierSpec {
    Polynomial P;          // P(0) = 0, P(1) = 1
    int64_t M = 2;         // mollifier length, >= 2
    double sigma0_offset = 1.3;   // the R in sigma0 = 1/2 - R/L
    double logT = 9.2;

    void validate() const;
    double sigma0() const { return 0.5 - sigma0_offset / logT; }
};

cplx psi_eval(const cplx& s, const MollifierSpec& spec);

} // namespace critline

#endif
