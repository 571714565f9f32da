#include "critline/zeta.hpp"

#include <cmath>
#include <stdexcept>

namespace critline {

namespace {

// B_2, B_4, ..., B_24
const double kBernoulli2k[12] = {
    1.0 / 6,           -1.0 / 30,          1.0 / 42,          -1.0 / 30,
    5.0 / 66,          -691.0 / 2730,      7.0 / 6,           -3617.0 / 510,
    43867.0 / 798,     -174611.0 / 330,    854513.0 / 138,    -236364091.0 / 2730};

constexpr int kMaxOrder = 12;
constexpr int kMaxDeriv = 8;

// poch_k(s) = s(s+1)...(s+2k-2) and its derivatives, as polynomials in s.
struct PochTables {
    // deriv[k-1][i] = i-th derivative of poch_k, for k = 1..kMaxOrder, i = 0..kMaxDeriv
    std::vector<std::vector<Polynomial>> deriv;
    PochTables() {
        deriv.resize(kMaxOrder);
        Polynomial poch = Polynomial::monomial(1);  // s
        for (int k = 1; k <= kMaxOrder; ++k) {
            if (k > 1) {
                poch = poch * Polynomial(std::vector<double>{2.0 * k - 3.0, 1.0});
                poch = poch * Polynomial(std::vector<double>{2.0 * k - 2.0, 1.0});
            }
            deriv[k - 1].resize(kMaxDeriv + 1);
            deriv[k - 1][0] = poch;
            for (int i = 1; i <= kMaxDeriv; ++i)
                deriv[k - 1][i] = deriv[k - 1][i - 1].derivative();
        }
    }
};

const PochTables& poch_tables() {
    static const PochTables t;
    return t;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_point(const cplx& s, const ZetaContext& ctx) {
    if (!(s.real() > 0.0))
        throw std::invalid_argument("zeta_em: Re(s) must be positive");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-10)
        throw std::invalid_argument("zeta_em: pole at s = 1");
    if (std::abs(s.imag()) > ctx.t_max)
        throw std::invalid_argument("zeta_em: |Im s| exceeds the context's t_max");
}

} // namespace

ZetaContext ZetaContext::for_height(double t) {
    ZetaContext c;
    double at = std::abs(t);
    c.em_terms = std::max(50, static_cast<int>(std::ceil(1.3 * at / (2.0 * M_PI))) + 20);
    c.em_order = 8;
    c.t_max = std::max(at, 1.0);
    return c;
}

ZetaContext ZetaContext::accurate(double t) {
    ZetaContext c;
    double at = std::abs(t);
    c.em_terms = std::max(50, static_cast<int>(std::ceil(2.0 * at)));
    c.em_order = 8;
    c.t_max = std::max(at, 1.0);
    return c;
}

void ZetaContext::validate() const {
    if (em_terms < std::ceil(t_max / (2.0 * M_PI)))
        throw std::invalid_argument("ZetaContext: em_terms too small for t_max");
    if (em_order < 2 || em_order > kMaxOrder)
        throw std::invalid_argument("ZetaContext: em_order must lie in [2, 12]");
    if (!(t_max > 0.0)) throw std::invalid_argument("ZetaContext: t_max must be positive");
}

std::vector<int8_t> mobius_sieve(int64_t limit) {
    if (limit < 1) throw std::invalid_argument("mobius_sieve: limit must be >= 1");
    std::vector<int8_t> mu(limit + 1, 0);
    std::vector<int64_t> primes;
    std::vector<char> composite(limit + 1, 0);
    mu[1] = 1;
    for (int64_t i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (int64_t p : primes) {
            if (i * p > limit) break;
            composite[i * p] = 1;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    return mu;
}

void zeta_em_tail_derivs(const cplx& s, int N, int order, int jmax, cplx* out) {
    const double lnN = std::log(static_cast<double>(N));
    const cplx Ns = std::exp(-s * lnN);     // N^{-s}
    const cplx N1s = Ns * static_cast<double>(N);  // N^{1-s}

    // powers of -lnN and factorials
    double neg_lnN_pow[kMaxDeriv + 1];
    double fact[kMaxDeriv + 1];
    neg_lnN_pow[0] = 1.0;
    fact[0] = 1.0;
    for (int i = 1; i <= jmax; ++i) {
        neg_lnN_pow[i] = neg_lnN_pow[i - 1] * (-lnN);
        fact[i] = fact[i - 1] * i;
    }

    // d^j [N^{1-s}/(s-1)] = sum_i C(j,i) (-lnN)^{j-i} N^{1-s} (-1)^i i! (s-1)^{-1-i}
    // d^j [N^{-s}/2]      = (-lnN)^j N^{-s} / 2
    cplx inv_sm1[kMaxDeriv + 1];
    inv_sm1[0] = 1.0 / (s - 1.0);
    for (int i = 1; i <= jmax; ++i) inv_sm1[i] = inv_sm1[i - 1] / (s - 1.0);
    for (int j = 0; j <= jmax; ++j) {
        cplx acc = 0.0;
        for (int i = 0; i <= j; ++i) {
            double sign = (i % 2 == 0) ? 1.0 : -1.0;
            acc += binom(j, i) * neg_lnN_pow[j - i] * sign * fact[i] * inv_sm1[i];
        }
        out[j] += N1s * acc + 0.5 * neg_lnN_pow[j] * Ns;
    }

    // Bernoulli corrections.
    const PochTables& pt = poch_tables();
    double over_fact = 1.0;   // (2k)!
    double Npow = 1.0;        // N^{-(2k-1)}
    for (int k = 1; k <= order; ++k) {
        over_fact *= (2.0 * k) * (2.0 * k - 1.0);
        Npow /= (k == 1) ? static_cast<double>(N)
                         : static_cast<double>(N) * static_cast<double>(N);
        const double coef = kBernoulli2k[k - 1] / over_fact * Npow;
        cplx pd[kMaxDeriv + 1];
        for (int i = 0; i <= jmax; ++i) pd[i] = pt.deriv[k - 1][i](s);
        for (int j = 0; j <= jmax; ++j) {
            cplx acc = 0.0;
            for (int i = 0; i <= j; ++i)
                acc += binom(j, i) * pd[i] * neg_lnN_pow[j - i];
            out[j] += coef * acc * Ns;
        }
    }
}

std::vector<cplx> zeta_derivs_upto(const cplx& s, int jmax, const ZetaContext& ctx) {
    ctx.validate();
    check_point(s, ctx);
    if (jmax < 0 || jmax > kMaxDeriv)
        throw std::invalid_argument("zeta_derivs_upto: jmax must lie in [0, 8]");

    const int N = ctx.em_terms;
    std::vector<cplx> out(jmax + 1, cplx(0.0, 0.0));
    for (int n = 1; n < N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        cplx term = std::exp(-s * ln);
        out[0] += term;
        for (int j = 1; j <= jmax; ++j) {
            term *= -ln;
            out[j] += term;
        }
    }
    zeta_em_tail_derivs(s, N, ctx.em_order, jmax, out.data());
    return out;
}

cplx zeta_em(const cplx& s, const ZetaContext& ctx) {
    return zeta_derivs_upto(s, 0, ctx)[0];
}

cplx zeta_derivative(const cplx& s, int j, const ZetaContext& ctx) {
    if (j < 1 || j > kMaxDeriv)
        throw std::invalid_argument("zeta_derivative: order must lie in [1, 8]");
    return zeta_derivs_upto(s, j, ctx)[j];
}

cplx V_eval(const cplx& s, const Polynomial& Q, double logT, const ZetaContext& ctx) {
    if (!(logT > 0.0)) throw std::invalid_argument("V_eval: logT must be positive");
    if (std::abs(Q(0.0) - 1.0) > 1e-12)
        throw std::invalid_argument("V_eval: Q(0) must be 1");
    const int d = Q.degree();
    std::vector<cplx> dz = zeta_derivs_upto(s, d, ctx);
    cplx v = 0.0;
    double scale = 1.0;   // (-1/logT)^j
    for (int j = 0; j <= d; ++j) {
        v += Q.coeff(j) * scale * dz[j];
        scale *= -1.0 / logT;
    }
    return v;
}

void MollifierSpec::validate() const {
    if (M < 2) throw std::invalid_argument("MollifierSpec: M must be >= 2");
    if (!(logT > 0.0)) throw std::invalid_argument("MollifierSpec: logT must be positive");
    const double tol = 1e-12;
    if (P.is_zero() || std::abs(P(0.0)) > tol || std::abs(P(1.0) - 1.0) > tol)
        throw std::invalid_argument("MollifierSpec: P must satisfy P(0)=0, P(1)=1");
}

cplx psi_eval(const cplx& s, const MollifierSpec& spec) {
    spec.validate();
    std::vector<int8_t> mu = mobius_sieve(spec.M);
    const double lnM = std::log(static_cast<double>(spec.M));
    const cplx expo = s + 0.5 - spec.sigma0();   // = 1/2 + it on the sigma0 line
    cplx sum = 0.0;
    for (int64_t h = 1; h <= spec.M; ++h) {
        if (mu[h] == 0) continue;
        const double lnh = std::log(static_cast<double>(h));
        sum += static_cast<double>(mu[h]) * std::exp(-expo * lnh) *
               spec.P((lnM - lnh) / lnM);
    }
    return sum;
}

} // namespace critline
