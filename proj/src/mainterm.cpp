#include "critline/mainterm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "critline/quadrature.hpp"

namespace critline {

namespace {

// |alpha| log T stays O(1); anything far beyond that is outside the regime
// in which the shifted main terms mean anything.
constexpr double kShiftScaleBound = 100.0;

bool sum_is_zero(const cplx& a, const cplx& b) {
    return std::abs(a + b) <= 1e-14 * (1.0 + std::abs(a) + std::abs(b));
}

// Coefficients of F(x,y) = int_0^1 P(x+u) P(y+u) du up to degree 1 in each
// of x and y: F00, F10 (x), F01 (y), F11 (xy).  Expanded via the binomial
// shift of P, with the u-integral done monomial by monomial.
struct FExpansion {
    double f00, f10, f01, f11;
};

FExpansion expand_pp_integral(const Polynomial& P) {
    BivariatePolynomial bx = poly_shift(P, ShiftVar::U, 1.0);  // (x, u)
    BivariatePolynomial by = poly_shift(P, ShiftVar::U, 1.0);  // (y, u)
    FExpansion f{0.0, 0.0, 0.0, 0.0};
    const int d = P.degree();
    for (int k = 0; k <= d; ++k)
        for (int m = 0; m <= d; ++m) {
            double inv = 1.0 / (k + m + 1);
            f.f00 += bx.coeff(0, k) * by.coeff(0, m) * inv;
            f.f10 += bx.coeff(1, k) * by.coeff(0, m) * inv;
            f.f01 += bx.coeff(0, k) * by.coeff(1, m) * inv;
            f.f11 += bx.coeff(1, k) * by.coeff(1, m) * inv;
        }
    return f;
}

// (1 - e^{-z})/z with a series for small |z|.
cplx one_minus_exp_over(const cplx& z) {
    if (std::abs(z) < 1e-6)
        return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
    return (1.0 - std::exp(-z)) / z;
}

} // namespace

void ShiftPair::validate() const {
    if (!(logT > 0.0) || !(logM > 0.0))
        throw std::invalid_argument("ShiftPair: logT and logM must be positive");
    if (logM > logT + 1e-12)
        throw std::invalid_argument("ShiftPair: logM must not exceed logT");
    if (std::abs(alpha) * logT > kShiftScaleBound || std::abs(beta) * logT > kShiftScaleBound)
        throw std::invalid_argument("ShiftPair: shifts exceed the O(1/log T) regime");
}

BivariatePolynomial inner_derivative(const MainTermParams& params) {
    params.validate();
    const Polynomial& P = params.P;
    const Polynomial& Q = params.Q;
    BivariatePolynomial g =
        BivariatePolynomial::outer(P, Q).scaled(params.R * params.theta) +
        BivariatePolynomial::outer(P.derivative(), Q) +
        BivariatePolynomial::outer(P, Q.derivative()).scaled(params.theta);
    return g;
}

MainTermResult main_term_closed(const MainTermParams& params) {
    params.validate();
    BivariatePolynomial g = inner_derivative(params);
    double integral = integrate_unit_square_weighted(g * g, params.R);
    MainTermResult r;
    r.c_value = 1.0 + integral / params.theta;
    r.kappa = params.R > 0.0 ? kappa_bound(params.R, r.c_value)
                             : std::numeric_limits<double>::quiet_NaN();
    r.method = MainTermMethod::ClosedForm;
    return r;
}

MainTermResult main_term_quadrature(const MainTermParams& params, int n_nodes) {
    params.validate();
    if (n_nodes < 2) throw std::invalid_argument("main_term_quadrature: n_nodes must be >= 2");
    const Polynomial& P = params.P;
    const Polynomial& Q = params.Q;
    const Polynomial Pd = P.derivative();
    const Polynomial Qd = Q.derivative();
    const double R = params.R, th = params.theta;
    const GaussLegendre& gl = gauss_legendre(n_nodes);

    double integral = 0.0;
    for (int j = 0; j < n_nodes; ++j) {
        double v = 0.5 * (1.0 + gl.nodes[j]);
        double wv = 0.5 * gl.weights[j] * std::exp(2.0 * R * v);
        double qv = Q(v), qdv = Qd(v);
        double inner = 0.0;
        for (int i = 0; i < n_nodes; ++i) {
            double u = 0.5 * (1.0 + gl.nodes[i]);
            double gval = R * th * P(u) * qv + Pd(u) * qv + th * P(u) * qdv;
            inner += 0.5 * gl.weights[i] * gval * gval;
        }
        integral += wv * inner;
    }

    MainTermResult r;
    r.c_value = 1.0 + integral / th;
    r.kappa = R > 0.0 ? kappa_bound(R, r.c_value)
                      : std::numeric_limits<double>::quiet_NaN();
    r.method = MainTermMethod::Quadrature;
    return r;
}

cplx c1_integral_form(const ShiftPair& shifts, const Polynomial& P) {
    shifts.validate();
    if (sum_is_zero(shifts.alpha, shifts.beta))
        throw std::invalid_argument("c1: pole at alpha + beta = 0; use the symmetrized form");
    const Polynomial Pd = P.derivative();
    const double i_dd = (Pd * Pd).integral01();
    const double i_dp = (Pd * P).integral01();
    const double i_pp = (P * P).integral01();
    const cplx a = shifts.alpha * shifts.logM;
    const cplx b = shifts.beta * shifts.logM;
    return (i_dd + (a + b) * i_dp + a * b * i_pp) / ((shifts.alpha + shifts.beta) * shifts.logM);
}

cplx c1_derivative_form(const ShiftPair& shifts, const Polynomial& P) {
    shifts.validate();
    if (sum_is_zero(shifts.alpha, shifts.beta))
        throw std::invalid_argument("c1: pole at alpha + beta = 0; use the symmetrized form");
    FExpansion f = expand_pp_integral(P);
    const cplx a = shifts.alpha * shifts.logM;
    const cplx b = shifts.beta * shifts.logM;
    // d^2/dxdy e^{ax+by} F(x,y) |_0 = ab F00 + a F01 + b F10 + F11
    cplx d = a * b * f.f00 + a * f.f01 + b * f.f10 + f.f11;
    return d / ((shifts.alpha + shifts.beta) * shifts.logM);
}

cplx c_general(const ShiftPair& shifts, const Polynomial& P, double theta) {
    shifts.validate();
    if (!(theta > 0.0)) throw std::invalid_argument("c_general: theta must be positive");
    if (std::abs(theta * shifts.logT - shifts.logM) > 1e-9 * shifts.logT)
        throw std::invalid_argument("c_general: theta inconsistent with logM/logT");
    FExpansion f = expand_pp_integral(P);
    // prefactor M^{-beta x - alpha y}
    const cplx a = -shifts.beta * shifts.logM;
    const cplx b = -shifts.alpha * shifts.logM;
    cplx d = a * b * f.f00 + a * f.f01 + b * f.f10 + f.f11;
    cplx s = one_minus_exp_over((shifts.alpha + shifts.beta) * shifts.logT);
    return 1.0 + s * d / theta;
}

double apply_Q_operator(const Polynomial& Q, double logT, double base_log) {
    if (!(logT > 0.0)) throw std::invalid_argument("apply_Q_operator: logT must be positive");
    return Q(base_log / logT);
}

double main_term_via_operator(const MainTermParams& params) {
    params.validate();
    const Polynomial& P = params.P;
    const Polynomial& Q = params.Q;
    const double th = params.theta, R = params.R;

    // Applying Q(-(1/L) d/dalpha) Q(-(1/L) d/dbeta) to c(alpha,beta) turns
    // the exponentials T^{-v(alpha+beta)} M^{-beta x - alpha y} into the
    // multipliers Q(v + theta x) Q(v + theta y); at alpha = beta = -R/L the
    // weight becomes e^{2Rv} e^{R theta (x+y)}.  Keep the (1, x, y, xy)
    // coefficients as polynomials in v and take the mixed derivative.
    const double a00 = (P * P).integral01();
    const double a10 = (P.derivative() * P).integral01();
    const double a11 = (P.derivative() * P.derivative()).integral01();

    const Polynomial QQ = Q * Q;
    const Polynomial QdQ = Q.derivative() * Q;
    const Polynomial QdQd = Q.derivative() * Q.derivative();

    auto weighted = [&](const Polynomial& p) {
        double s = 0.0;
        for (int m = 0; m <= p.degree(); ++m)
            if (p.coeff(m) != 0.0) s += p.coeff(m) * exp_moment(m, R);
        return s;
    };

    const double b00 = weighted(QQ.scaled(a00));
    const double b10 = weighted(QQ.scaled(a10) + QdQ.scaled(a00 * th));
    const double b01 = b10;
    const double b11 = weighted(QQ.scaled(a11) + QdQ.scaled(2.0 * a10 * th) +
                                QdQd.scaled(a00 * th * th));

    const double rt = R * th;
    return 1.0 + (rt * rt * b00 + rt * (b10 + b01) + b11) / th;
}

double kappa_bound(double R, double c) {
    if (!(R > 0.0)) throw std::invalid_argument("kappa_bound: R must be positive");
    if (!(c >= 1.0)) throw std::invalid_argument("kappa_bound: c must be >= 1");
    return 1.0 - std::log(c) / R;
}

} // namespace critline
