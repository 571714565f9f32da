// Test-only reference machinery, independent of the library code paths it
// checks: adaptive quadrature, Cauchy-circle derivatives, finite differences,
// random admissible polynomials, a tiny Jacobi eigensolver, and the rotated
// zeta Z(t) for locating the first critical zero by bisection.
#ifndef CRITLINE_TESTS_ORACLES_HPP
#define CRITLINE_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "critline/gammafn.hpp"
#include "critline/polynomial.hpp"

namespace oracles {

using critline::cplx;
using critline::Polynomial;

// ---------------------------------------------------------------------------
// adaptive Simpson
// ---------------------------------------------------------------------------
inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline double adaptive_quadrature(const std::function<double(double)>& f, double a,
                                  double b, double tol = 1e-13) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

// ---------------------------------------------------------------------------
// derivative oracles
// ---------------------------------------------------------------------------

// j! / (2 pi) * int f(s0 + r e^{i theta}) e^{-i j theta} dtheta / r^j by the
// trapezoid rule (spectrally accurate for analytic f).
inline cplx cauchy_circle_derivative(const std::function<cplx(cplx)>& f, cplx s0, int j,
                                     double radius = 0.1, int nodes = 64) {
    cplx sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const double th = 2.0 * M_PI * k / nodes;
        const cplx e(std::cos(th), std::sin(th));
        cplx fk = f(s0 + radius * e);
        sum += fk * std::exp(cplx(0.0, -j * th));
    }
    double jfact = 1.0;
    for (int i = 2; i <= j; ++i) jfact *= i;
    return jfact * sum / static_cast<double>(nodes) / std::pow(radius, j);
}

inline cplx central_difference(const std::function<cplx(cplx)>& f, cplx s, double h) {
    return (f(s + h) - f(s - h)) / (2.0 * h);
}

// ---------------------------------------------------------------------------
// random polynomial generators
// ---------------------------------------------------------------------------

// random P with P(0) = 0 and P(1) = 1
inline Polynomial random_admissible_P(std::mt19937_64& rng, int deg) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> c(deg + 1, 0.0);
    double sum = 0.0;
    do {
        sum = 0.0;
        for (int j = 1; j <= deg; ++j) {
            c[j] = coef(rng);
            sum += c[j];
        }
    } while (std::abs(sum) < 0.1);
    for (int j = 1; j <= deg; ++j) c[j] /= sum;
    return Polynomial(c);
}

// random Q with Q(0) = 1
inline Polynomial random_Q(std::mt19937_64& rng, int deg) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> c(deg + 1);
    c[0] = 1.0;
    for (int j = 1; j <= deg; ++j) c[j] = coef(rng);
    return Polynomial(c);
}

inline Polynomial random_poly(std::mt19937_64& rng, int deg, double lo = -1.0,
                              double hi = 1.0) {
    std::uniform_real_distribution<double> coef(lo, hi);
    std::vector<double> c(deg + 1);
    for (int j = 0; j <= deg; ++j) c[j] = coef(rng);
    return Polynomial(c);
}

// ---------------------------------------------------------------------------
// smallest eigenvalue of a small symmetric matrix (cyclic Jacobi)
// ---------------------------------------------------------------------------
inline double smallest_eigenvalue(std::vector<double> a, int n) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p * n + q]) < 1e-30) continue;
                const double theta = 0.5 * std::atan2(2 * a[p * n + q],
                                                      a[q * n + q] - a[p * n + p]);
                const double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
    }
    double mn = a[0];
    for (int i = 1; i < n; ++i) mn = std::min(mn, a[i * n + i]);
    return mn;
}

// ---------------------------------------------------------------------------
// rotated zeta on the critical line: Z(t) = e^{i theta(t)} zeta(1/2 + it) is
// real, with theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi.
// ---------------------------------------------------------------------------
inline double siegel_theta(double t) {
    return critline::log_gamma(cplx(0.25, t / 2.0)).imag() - 0.5 * t * std::log(M_PI);
}

template <class ZetaFn>
double rotated_zeta(const ZetaFn& zeta, double t) {
    const cplx z = zeta(cplx(0.5, t));
    return (std::exp(cplx(0.0, siegel_theta(t))) * z).real();
}

template <class ZetaFn>
double bisect_zero(const ZetaFn& zeta, double lo, double hi) {
    double flo = rotated_zeta(zeta, lo);
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = rotated_zeta(zeta, mid);
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace oracles

#endif
