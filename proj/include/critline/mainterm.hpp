// The mollified second-moment main term c(P,Q,R,theta), its two-variable
// shifted relatives c(alpha,beta) and c1(alpha,beta), the Q-operator
// calculus connecting them, and the kappa lower bound.
#ifndef CRITLINE_MAINTERM_HPP
#define CRITLINE_MAINTERM_HPP

#include "critline/polynomial.hpp"

namespace critline {

// Shifts alpha, beta of size O(1/log T), together with the run's scales
// L = log T and log M = theta * log T.
struct ShiftPair {
    cplx alpha;
    cplx beta;
    double logT = 0.0;
    double logM = 0.0;

    double theta() const { return logM / logT; }
    void validate() const;   // throws std::invalid_argument
};

enum class MainTermMethod { ClosedForm, Quadrature };

struct MainTermResult {
    double c_value = 0.0;
    double kappa = 0.0;      // 1 - log(c)/R; NaN when R = 0
    MainTermMethod method = MainTermMethod::ClosedForm;
};

// g(u,v) = d/dx [ e^{R theta x} P(x+u) Q(v + theta x) ] at x = 0
//        = R*theta*P(u)Q(v) + P'(u)Q(v) + theta*P(u)Q'(v),
// as a bivariate polynomial with first variable u, second v.
BivariatePolynomial inner_derivative(const MainTermParams& params);

// c = 1 + (1/theta) int_0^1 int_0^1 e^{2Rv} g(u,v)^2 du dv, integrated
// exactly through the exponential moments.
MainTermResult main_term_closed(const MainTermParams& params);

// Same double integral by tensor-product Gauss-Legendre with n_nodes per
// axis; g is evaluated pointwise from P and Q rather than expanded, so the
// two routes share no polynomial bookkeeping.
MainTermResult main_term_quadrature(const MainTermParams& params, int n_nodes);

// c1(alpha,beta) in the integral form
//   (1/((alpha+beta) log M)) int_0^1 (P'+alpha logM P)(P'+beta logM P) du.
// Rejects alpha + beta = 0 (pole; use the symmetrized combination instead).
cplx c1_integral_form(const ShiftPair& shifts, const Polynomial& P);

// c1(alpha,beta) as the mixed derivative
//   (1/((alpha+beta) log M)) d^2/dxdy M^{alpha x + beta y}
//       int_0^1 P(x+u)P(y+u) du |_{x=y=0},
// computed by expanding the u-integral symbolically in (x,y).
cplx c1_derivative_form(const ShiftPair& shifts, const Polynomial& P);

// c(alpha,beta) = 1 + (1/theta) d^2/dxdy M^{-beta x - alpha y}
//   int_0^1 int_0^1 T^{-v(alpha+beta)} P(x+u)P(y+u) du dv |_{x=y=0}.
// The v-integral is (1 - T^{-(alpha+beta)})/((alpha+beta) log T), with the
// analytic limit 1 at alpha + beta = 0, so no rejection is needed here.
cplx c_general(const ShiftPair& shifts, const Polynomial& P, double theta);

// Q(-(1/log T) d/dalpha) acting on X^{-alpha} multiplies it by
// Q(log X / log T); returns that multiplier.
double apply_Q_operator(const Polynomial& Q, double logT, double base_log);

// Evaluates c(P,Q,R,theta) by the operator route: apply the double
// Q-operator to c(alpha,beta) symbolically and set alpha = beta = -R/L.
// Equals main_term_closed up to rounding; the two routes share only the
// exponential moments.
double main_term_via_operator(const MainTermParams& params);

// kappa >= 1 - log(c)/R.  Rejects R <= 0 and c < 1.
double kappa_bound(double R, double c);

} // namespace critline

#endif
