#include "critline/afe.hpp"

#include <cmath>
#include <stdexcept>

#include "critline/gammafn.hpp"
#include "critline/quadrature.hpp"

namespace critline {

namespace {

bool shifts_sum_zero(const AfeShifts& sh) {
    return std::abs(sh.alpha + sh.beta) <=
           1e-14 * (1.0 + std::abs(sh.alpha) + std::abs(sh.beta));
}

} // namespace

void AfeShifts::validate() const {
    if (!(alpha.real() < 0.5) || !(beta.real() < 0.5))
        throw std::invalid_argument("AfeShifts: shifts must have real part < 1/2");
}

void ContourSpec::validate() const {
    if (nodes < 16) throw std::invalid_argument("ContourSpec: nodes must be >= 16");
    if (!(std::exp(-half_len * half_len) < 1e-16))
        throw std::invalid_argument("ContourSpec: half_len too small for the Gaussian tail");
}

cplx G_weight(const cplx& s, const AfeShifts& shifts) {
    shifts.validate();
    if (shifts_sum_zero(shifts))
        throw std::invalid_argument("G_weight: alpha + beta = 0 degenerates p(s)");
    const cplx ab = shifts.alpha + shifts.beta;
    return std::exp(s * s) * (ab * ab - 4.0 * s * s) / (ab * ab);
}

cplx g_factor(const cplx& s, double t, const AfeShifts& shifts) {
    shifts.validate();
    if (!(t >= 1.0)) throw std::invalid_argument("g_factor: t must be >= 1");
    const cplx it(0.0, t);
    return std::exp(-s * std::log(M_PI)
                    + log_gamma((0.5 + shifts.alpha + s + it) / 2.0)
                    - log_gamma((0.5 + shifts.alpha + it) / 2.0)
                    + log_gamma((0.5 + shifts.beta + s - it) / 2.0)
                    - log_gamma((0.5 + shifts.beta - it) / 2.0));
}

cplx X_factor(double t, const AfeShifts& shifts) {
    shifts.validate();
    if (!(t >= 1.0)) throw std::invalid_argument("X_factor: t must be >= 1");
    const cplx it(0.0, t);
    return std::exp((shifts.alpha + shifts.beta) * std::log(M_PI)
                    + log_gamma((0.5 - shifts.alpha - it) / 2.0)
                    - log_gamma((0.5 + shifts.alpha + it) / 2.0)
                    + log_gamma((0.5 - shifts.beta + it) / 2.0)
                    - log_gamma((0.5 + shifts.beta - it) / 2.0));
}

VWeightTable::VWeightTable(const AfeShifts& shifts, double t, const ContourSpec& contour) {
    shifts.validate();
    contour.validate();
    line_re_ = contour.line_re;
    const GaussLegendre& gl = gauss_legendre(contour.nodes);
    double lo = -contour.half_len;
    while (lo < contour.half_len - 1e-12) {
        double hi = std::min(lo + 1.0, contour.half_len);
        double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        for (int i = 0; i < contour.nodes; ++i) {
            double y = mid + half * gl.nodes[i];
            cplx s(contour.line_re, y);
            ys_.push_back(y);
            coef_.push_back(half * gl.weights[i] / (2.0 * M_PI) *
                            G_weight(s, shifts) / s * g_factor(s, t, shifts));
        }
        lo = hi;
    }
}

cplx VWeightTable::operator()(double x) const {
    if (!(x > 0.0)) throw std::invalid_argument("V_weight: x must be positive");
    const double lx = std::log(x);
    cplx sum = 0.0;
    for (size_t i = 0; i < ys_.size(); ++i)
        sum += coef_[i] * cplx(std::cos(ys_[i] * lx), -std::sin(ys_[i] * lx));
    return sum * std::pow(x, -line_re_);
}

cplx V_weight(double x, double t, const AfeShifts& shifts, const ContourSpec& contour) {
    VWeightTable coarse(shifts, t, contour);
    ContourSpec fine = contour;
    fine.nodes = 2 * contour.nodes;
    VWeightTable refined(shifts, t, fine);
    const cplx v1 = coarse(x), v2 = refined(x);
    if (std::abs(v1 - v2) > 1e-6 * std::max(1.0, std::abs(v2)))
        throw std::runtime_error("V_weight: contour quadrature did not converge");
    return v2;
}

double afe_residual(double t, const AfeShifts& shifts, int64_t truncation,
                    const ZetaContext& ctx, const ContourSpec& contour) {
    shifts.validate();
    if (!(t >= 50.0) || t > 1e4)
        throw std::invalid_argument("afe_residual: t must lie in [50, 1e4]");
    if (truncation < 1) throw std::invalid_argument("afe_residual: truncation must be >= 1");
    if (truncation > 20000000)
        throw std::invalid_argument("afe_residual: truncation too large");
    if (!(shifts.alpha.real() > -0.5) || !(shifts.beta.real() > -0.5))
        throw std::invalid_argument("afe_residual: need Re(shift) > -1/2 for the zeta product");

    const cplx it(0.0, t);
    const cplx lhs = zeta_em(0.5 + shifts.alpha + it, ctx) *
                     zeta_em(0.5 + shifts.beta - it, ctx);

    // Group the double sums by N = mn; V depends on mn only.
    const int64_t K = truncation;
    std::vector<cplx> s1(K + 1, cplx(0.0, 0.0)), s2(K + 1, cplx(0.0, 0.0));
    for (int64_t m = 1; m <= K; ++m) {
        const double lm = std::log(static_cast<double>(m));
        const int64_t nmax = K / m;
        for (int64_t n = 1; n <= nmax; ++n) {
            const double ln = std::log(static_cast<double>(n));
            const cplx phase = std::exp(cplx(0.0, -t * (lm - ln)));
            s1[m * n] += std::exp(-(0.5 + shifts.alpha) * lm - (0.5 + shifts.beta) * ln) * phase;
            s2[m * n] += std::exp(-(0.5 - shifts.beta) * lm - (0.5 - shifts.alpha) * ln) * phase;
        }
    }

    const VWeightTable v1(shifts, t, contour);
    const AfeShifts mirrored{-shifts.beta, -shifts.alpha};
    const VWeightTable v2(mirrored, t, contour);
    const cplx X = X_factor(t, shifts);

    cplx rhs = 0.0;
    for (int64_t N = 1; N <= K; ++N) {
        const double x = static_cast<double>(N);
        rhs += v1(x) * s1[N] + X * v2(x) * s2[N];
    }
    return std::abs(lhs - rhs);
}

std::vector<int64_t> mobius_divisor_sums(int64_t cap) {
    if (cap < 1) throw std::invalid_argument("mobius_divisor_sums: cap must be >= 1");
    std::vector<int8_t> mu = mobius_sieve(cap);
    std::vector<int64_t> dsum(cap + 1, 0);
    for (int64_t d = 1; d <= cap; ++d) {
        if (mu[d] == 0) continue;
        for (int64_t n = d; n <= cap; n += d) dsum[n] += mu[d];
    }
    return dsum;
}

double arith_factor_check(double s_re, int64_t cap) {
    if (!(s_re > 0.0)) throw std::invalid_argument("arith_factor_check: Re(s) must be positive");
    std::vector<int64_t> dsum = mobius_divisor_sums(cap);
    double sum = 0.0;
    for (int64_t N = 1; N <= cap; ++N) {
        if (dsum[N] == 0) continue;   // exact Mobius cancellation for N > 1
        const double block = static_cast<double>(dsum[N] * dsum[N]);
        sum += block * std::exp(-(1.0 + 2.0 * s_re) * std::log(static_cast<double>(N)));
    }
    return sum;
}

} // namespace critline
