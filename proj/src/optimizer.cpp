#include "critline/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "critline/mainterm.hpp"

namespace critline {

namespace {

// Dense Gaussian elimination with partial pivoting; A is n x n row-major,
// b length n.  Returns false on a (near-)singular pivot.
bool solve_inplace(std::vector<double> A, std::vector<double> b, int n,
                   std::vector<double>& x) {
    double scale = 0.0;
    for (double v : A) scale = std::max(scale, std::abs(v));
    const double tiny = 1e-13 * (scale + 1.0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A[i * n + k]) > std::abs(A[piv * n + k])) piv = i;
        if (std::abs(A[piv * n + k]) < tiny) return false;
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(A[k * n + j], A[piv * n + j]);
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            double f = A[i * n + k] / A[k * n + k];
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j) A[i * n + j] -= f * A[k * n + j];
            b[i] -= f * b[k];
        }
    }
    x.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A[i * n + j] * x[j];
        x[i] = s / A[i * n + i];
    }
    return true;
}

// minimize x^T M x  subject to C x = d   (M is n x n, C is m x n)
// via the KKT system [2M C^T; C 0].  On a singular system falls back to a
// vanishing ridge on M, which selects the minimum-norm minimizer.
SubproblemResult solve_constrained_qp(const std::vector<double>& M, int n,
                                      const std::vector<double>& C,
                                      const std::vector<double>& d, int m) {
    const int dim = n + m;
    std::vector<double> K(dim * dim, 0.0), rhs(dim, 0.0), sol;
    auto fill = [&](double ridge) {
        std::fill(K.begin(), K.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) K[i * dim + j] = 2.0 * M[i * n + j];
            K[i * dim + i] += ridge;
        }
        for (int r = 0; r < m; ++r)
            for (int j = 0; j < n; ++j) {
                K[(n + r) * dim + j] = C[r * n + j];
                K[j * dim + (n + r)] = C[r * n + j];
            }
        for (int r = 0; r < m; ++r) rhs[n + r] = d[r];
    };

    SubproblemResult out;
    fill(0.0);
    if (!solve_inplace(K, rhs, dim, sol)) {
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += std::abs(M[i * n + i]);
        fill(1e-10 * (tr / n + 1.0));
        if (!solve_inplace(K, rhs, dim, sol))
            throw std::runtime_error("constrained QP: KKT system unsolvable");
        out.degenerate = true;
    }
    sol.resize(n);
    out.poly = Polynomial(std::move(sol));
    return out;
}

double weighted_v_integral(const Polynomial& p, double R) {
    double s = 0.0;
    for (int m = 0; m <= p.degree(); ++m)
        if (p.coeff(m) != 0.0) s += p.coeff(m) * exp_moment(m, R);
    return s;
}

} // namespace

void OptimizeSpec::validate() const {
    if (degP < 1) throw std::invalid_argument("OptimizeSpec: degP must be >= 1");
    if (degQ < 0) throw std::invalid_argument("OptimizeSpec: degQ must be >= 0");
    if (!(theta > 0.0) || theta > 0.5)
        throw std::invalid_argument("OptimizeSpec: theta must lie in (0, 1/2]");
    if (!(R_lo > 0.0) || R_hi < R_lo)
        throw std::invalid_argument("OptimizeSpec: R range must have positive lower endpoint");
    if (!(tol > 0.0)) throw std::invalid_argument("OptimizeSpec: tol must be positive");
    if (max_alt_iters < 1) throw std::invalid_argument("OptimizeSpec: max_alt_iters must be >= 1");
    if (r_grid < 2) throw std::invalid_argument("OptimizeSpec: r_grid must be >= 2");
}

std::vector<double> p_form_matrix(const Polynomial& Q, double R, double theta, int degP) {
    // g_j(u,v) = u^j S(v) + j u^{j-1} Q(v) with S = R theta Q + theta Q', so
    //   A_jk = WSS/(j+k+1) + WSQ [j+k>=1] + jk WQQ/(j+k-1)
    // with the weighted v-integrals of S^2, SQ, Q^2.
    const Polynomial S = Q.scaled(R * theta) + Q.derivative().scaled(theta);
    const double wss = weighted_v_integral(S * S, R);
    const double wsq = weighted_v_integral(S * Q, R);
    const double wqq = weighted_v_integral(Q * Q, R);
    const int n = degP + 1;
    std::vector<double> A(n * n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double v = wss / (j + k + 1);
            if (j + k >= 1) v += wsq;
            if (j >= 1 && k >= 1) v += double(j) * k * wqq / (j + k - 1);
            A[j * n + k] = v;
        }
    return A;
}

std::vector<double> q_form_matrix(const Polynomial& P, double R, double theta, int degQ) {
    // h_j(u,v) = v^j U(u) + theta j v^{j-1} P(u) with U = R theta P + P', so
    //   B_jk = EUU E_{j+k} + theta (j+k) EUP E_{j+k-1} + theta^2 jk EPP E_{j+k-2}
    const Polynomial U = P.scaled(R * theta) + P.derivative();
    const double euu = (U * U).integral01();
    const double eup = (U * P).integral01();
    const double epp = (P * P).integral01();
    const int n = degQ + 1;
    std::vector<double> em(2 * degQ + 1);
    for (int m = 0; m <= 2 * degQ; ++m) em[m] = exp_moment(m, R);
    std::vector<double> B(n * n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double v = euu * em[j + k];
            if (j + k >= 1) v += theta * (j + k) * eup * em[j + k - 1];
            if (j >= 1 && k >= 1) v += theta * theta * j * k * epp * em[j + k - 2];
            B[j * n + k] = v;
        }
    return B;
}

SubproblemResult optimize_P_given_Q(const Polynomial& Q, double R, double theta, int degP) {
    if (degP < 1) throw std::invalid_argument("optimize_P_given_Q: degP must be >= 1");
    const int n = degP + 1;
    std::vector<double> A = p_form_matrix(Q, R, theta, degP);
    // P(0) = 0 and P(1) = 1
    std::vector<double> C(2 * n, 0.0), d = {0.0, 1.0};
    C[0] = 1.0;
    for (int j = 0; j < n; ++j) C[n + j] = 1.0;
    return solve_constrained_qp(A, n, C, d, 2);
}

SubproblemResult optimize_Q_given_P(const Polynomial& P, double R, double theta, int degQ) {
    if (degQ < 0) throw std::invalid_argument("optimize_Q_given_P: degQ must be >= 0");
    const int n = degQ + 1;
    std::vector<double> B = q_form_matrix(P, R, theta, degQ);
    // Q(0) = 1
    std::vector<double> C(n, 0.0), d = {1.0};
    C[0] = 1.0;
    return solve_constrained_qp(B, n, C, d, 1);
}

namespace {

struct FixedROutcome {
    Polynomial P, Q;
    double c = 0.0;
    int iterations = 0;
    bool converged = false;
    bool degenerate = false;
    std::vector<double> c_trace;
};

double c_of(const Polynomial& P, const Polynomial& Q, double R, double theta) {
    MainTermParams p{P, Q, R, theta};
    return main_term_closed(p).c_value;
}

FixedROutcome alternate_at_R(const OptimizeSpec& spec, double R) {
    FixedROutcome out;
    // deterministic starting point: P = x, Q = 1 - x truncated to degQ
    out.P = Polynomial::monomial(1);
    out.Q = spec.degQ >= 1 ? Polynomial(std::vector<double>{1.0, -1.0})
                           : Polynomial(std::vector<double>{1.0});
    double prev = c_of(out.P, out.Q, R, spec.theta);
    out.c_trace.push_back(prev);
    for (int it = 0; it < spec.max_alt_iters; ++it) {
        SubproblemResult sp = optimize_P_given_Q(out.Q, R, spec.theta, spec.degP);
        out.degenerate |= sp.degenerate;
        out.P = sp.poly;
        SubproblemResult sq = optimize_Q_given_P(out.P, R, spec.theta, spec.degQ);
        out.degenerate |= sq.degenerate;
        out.Q = sq.poly;
        double c = c_of(out.P, out.Q, R, spec.theta);
        out.c_trace.push_back(c);
        out.iterations = it + 1;
        if (std::abs(prev - c) < spec.tol) {
            out.converged = true;
            out.c = c;
            return out;
        }
        prev = c;
    }
    out.c = prev;
    return out;
}

} // namespace

OptimizeResult optimize_alternating(const OptimizeSpec& spec) {
    spec.validate();
    OptimizeResult best;
    double best_kappa = -1e300;

    auto consider = [&](double R, bool record_trace) {
        FixedROutcome o = alternate_at_R(spec, R);
        double kappa = kappa_bound(R, o.c);
        if (record_trace) best.trace.push_back({R, o.c, kappa});
        if (kappa > best_kappa) {
            best_kappa = kappa;
            best.P_opt = o.P;
            best.Q_opt = o.Q;
            best.R_opt = R;
            best.c_opt = o.c;
            best.kappa_opt = kappa;
            best.iterations = o.iterations;
            best.converged = o.converged;
            best.degenerate = o.degenerate;
            best.c_trace = o.c_trace;
        }
        return kappa;
    };

    if (spec.R_hi - spec.R_lo < 1e-12) {
        consider(spec.R_lo, true);
        return best;
    }

    // Dense guard grid first (unimodality in R is observed, not proven),
    // then golden-section refinement around the best grid cell.
    const double h = (spec.R_hi - spec.R_lo) / (spec.r_grid - 1);
    double grid_best_R = spec.R_lo;
    double grid_best_kappa = -1e300;
    for (int i = 0; i < spec.r_grid; ++i) {
        double R = spec.R_lo + i * h;
        double kappa = consider(R, true);
        if (kappa > grid_best_kappa) {
            grid_best_kappa = kappa;
            grid_best_R = R;
        }
    }

    double a = std::max(spec.R_lo, grid_best_R - h);
    double b = std::min(spec.R_hi, grid_best_R + h);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = consider(x1, false);
    double f2 = consider(x2, false);
    for (int it = 0; it < 60 && b - a > 1e-10; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = consider(x2, false);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = consider(x1, false);
        }
    }
    return best;
}

} // namespace critline
