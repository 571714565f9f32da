// Mollifier optimization: c(P,Q,R,theta) is an exact quadratic form in the
// coefficients of P when Q is fixed (and vice versa), so each subproblem is
// an equality-constrained least-squares solve and the joint problem is
// coordinate descent plus a one-dimensional search over R.
#ifndef CRITLINE_OPTIMIZER_HPP
#define CRITLINE_OPTIMIZER_HPP

#include <vector>

#include "critline/polynomial.hpp"

namespace critline {

struct OptimizeSpec {
    int degP = 1;
    int degQ = 1;
    double theta = 0.5;
    double R_lo = 0.5;
    double R_hi = 3.0;
    int max_alt_iters = 60;
    double tol = 1e-12;      // convergence threshold on c
    int r_grid = 200;        // dense guard grid over [R_lo, R_hi]

    void validate() const;
};

struct SubproblemResult {
    Polynomial poly;
    bool degenerate = false;  // singular KKT system; minimum-norm tie-break used
};

struct TracePoint {
    double R, c, kappa;
};

struct OptimizeResult {
    Polynomial P_opt, Q_opt;
    double R_opt = 0.0, c_opt = 0.0, kappa_opt = 0.0;
    int iterations = 0;       // alternating iterations at the winning R
    bool converged = false;
    bool degenerate = false;
    std::vector<TracePoint> trace;    // one row per R candidate on the guard grid
    std::vector<double> c_trace;      // c after each alternating step at R_opt
};

// Quadratic form matrices: c = 1 + (1/theta) x^T A x over the coefficient
// vector of P (resp. Q), row-major (deg+1)^2.  Exposed so the positive
// semidefiniteness of the assembled forms can be checked directly.
std::vector<double> p_form_matrix(const Polynomial& Q, double R, double theta, int degP);
std::vector<double> q_form_matrix(const Polynomial& P, double R, double theta, int degQ);

// argmin over P of c(P,Q,R,theta) subject to P(0)=0, P(1)=1.
SubproblemResult optimize_P_given_Q(const Polynomial& Q, double R, double theta, int degP);
// argmin over Q of c(P,Q,R,theta) subject to Q(0)=1.
SubproblemResult optimize_Q_given_P(const Polynomial& P, double R, double theta, int degQ);

OptimizeResult optimize_alternating(const OptimizeSpec& spec);

} // namespace critline

#endif
