#include "critline/momentlab.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "critline/mainterm.hpp"
#include "critline/quadrature.hpp"

namespace critline {

namespace {

// C-infinity ramp: 0 for x <= 0, 1 for x >= 1.
double ramp(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

} // namespace

WindowSpec WindowSpec::majorant(double T) {
    WindowSpec s;
    s.T = T;
    s.kind = WindowKind::UpperMajorant;
    s.fill_defaults();
    return s;
}

WindowSpec WindowSpec::minorant(double T) {
    WindowSpec s;
    s.T = T;
    s.kind = WindowKind::LowerMinorant;
    s.fill_defaults();
    return s;
}

WindowSpec WindowSpec::bump(double T) {
    WindowSpec s;
    s.T = T;
    s.kind = WindowKind::CenteredBump;
    s.fill_defaults();
    return s;
}

double WindowSpec::effective_delta() const {
    return delta > 0.0 ? delta : T / std::log(T);
}

void WindowSpec::fill_defaults() {
    if (delta <= 0.0) delta = T / std::log(T);
    if (support_lo == 0.0 && support_hi == 0.0) {
        switch (kind) {
            case WindowKind::UpperMajorant:  // w >= indicator of [T/2, T]
                support_lo = T / 2 - delta;
                support_hi = T + delta;
                break;
            case WindowKind::LowerMinorant:  // w <= indicator of [T/2, T]
                support_lo = T / 2;
                support_hi = T;
                break;
            case WindowKind::CenteredBump:
                support_lo = 5.0 * T / 8 - delta;
                support_hi = 7.0 * T / 8 + delta;
                break;
        }
    }
}

void WindowSpec::validate() const {
    if (!(T > 0.0)) throw std::invalid_argument("WindowSpec: T must be positive");
    if (delta < 0.0) throw std::invalid_argument("WindowSpec: delta must be positive");
    WindowSpec s = *this;
    s.fill_defaults();
    if (!(s.delta > 0.0)) throw std::invalid_argument("WindowSpec: delta must be positive");
    const double tol = 1e-9 * T;
    if (s.support_lo < T / 4 - tol || s.support_hi > 2 * T + tol)
        throw std::invalid_argument("WindowSpec: support must lie within [T/4, 2T]");
    if (s.support_hi - s.support_lo < 2.0 * s.delta)
        throw std::invalid_argument("WindowSpec: support too narrow for the ramps");
}

Window::Window(double lo, double hi, double delta) : lo_(lo), hi_(hi), delta_(delta) {}

double Window::operator()(double t) const {
    if (t <= lo_ || t >= hi_) return 0.0;
    double w = 1.0;
    if (t < lo_ + delta_) w = ramp((t - lo_) / delta_);
    if (t > hi_ - delta_) w *= ramp((hi_ - t) / delta_);
    return w;
}

Window window_build(const WindowSpec& spec) {
    spec.validate();
    WindowSpec s = spec;
    s.fill_defaults();
    return Window(s.support_lo, s.support_hi, s.delta);
}

WindowAdmissibility verify_window(const WindowSpec& spec) {
    Window w = window_build(spec);
    WindowSpec s = spec;
    s.fill_defaults();
    WindowAdmissibility out;
    out.support_ok = true;  // validate() above enforced (w2)
    out.range_ok = true;

    // Finite differences on a grid that resolves the ramps.
    const double h = s.delta / 400.0;
    const int span = static_cast<int>((w.hi() - w.lo()) / h) + 1;
    double maxd[5] = {0, 0, 0, 0, 0};
    for (int i = -4; i <= span + 4; ++i) {
        const double t = w.lo() + i * h;
        double f[9];
        for (int k = 0; k < 9; ++k) f[k] = w(t + (k - 4) * h);
        if (f[4] < -1e-15 || f[4] > 1.0 + 1e-15) out.range_ok = false;
        const double d1 = (f[5] - f[3]) / (2 * h);
        const double d2 = (f[5] - 2 * f[4] + f[3]) / (h * h);
        const double d3 = (f[6] - 2 * f[5] + 2 * f[3] - f[2]) / (2 * h * h * h);
        const double d4 = (f[6] - 4 * f[5] + 6 * f[4] - 4 * f[3] + f[2]) / (h * h * h * h);
        maxd[0] = std::max(maxd[0], std::abs(f[4]));
        maxd[1] = std::max(maxd[1], std::abs(d1));
        maxd[2] = std::max(maxd[2], std::abs(d2));
        maxd[3] = std::max(maxd[3], std::abs(d3));
        maxd[4] = std::max(maxd[4], std::abs(d4));
    }
    double dpow = 1.0;
    for (int j = 0; j <= 4; ++j) {
        out.deriv_const[j] = maxd[j] * dpow;
        dpow *= s.delta;
    }
    return out;
}

double w_hat_zero(const WindowSpec& spec) {
    Window w = window_build(spec);
    const double plateau = w.plateau_hi() - w.plateau_lo();
    auto f = [&](double t) { return w(t); };
    const double ramps =
        gl_integrate(f, w.lo(), w.plateau_lo(), w.delta() / 16.0, 16) +
        gl_integrate(f, w.plateau_hi(), w.hi(), w.delta() / 16.0, 16);
    return plateau + ramps;
}

int64_t MomentRunConfig::M() const { return std::llround(std::pow(T, theta)); }
double MomentRunConfig::logT() const { return std::log(T); }
double MomentRunConfig::sigma0() const { return 0.5 - R / std::log(T); }

void MomentRunConfig::validate() const {
    if (!(T > 10.0) || T > 2e5)
        throw std::invalid_argument("MomentRunConfig: T must lie in (10, 2e5] (desk-scale guard)");
    if (!(theta > 0.0) || theta > 0.5)
        throw std::invalid_argument("MomentRunConfig: theta must lie in (0, 1/2]");
    if (!(R > 0.0)) throw std::invalid_argument("MomentRunConfig: R must be positive");
    if (M() < 2) throw std::invalid_argument("MomentRunConfig: M = round(T^theta) must be >= 2");
    const double s0 = sigma0();
    // The headline parameters (R = 1.3) put sigma0 near 0.36-0.39 at desk
    // heights, so the guard is (1/4, 1/2) rather than anything tighter.
    if (!(s0 > 0.25) || !(s0 < 0.5))
        throw std::invalid_argument("MomentRunConfig: sigma0 = 1/2 - R/log T outside (1/4, 1/2)");
    if (!(quad_step > 0.0)) throw std::invalid_argument("MomentRunConfig: quad_step must be positive");
    if (nodes < 4) throw std::invalid_argument("MomentRunConfig: nodes must be >= 4");
    MainTermParams mt{P, Q, R, theta};
    mt.validate();
}

namespace {

// Table-driven integrand |V psi(sigma0 + it)|^2.  The n^{-sigma0} and log n
// tables are shared across the whole t-range; derivative sums for all orders
// of Q reuse one sincos per n.  The Euler-Maclaurin tail is the same code
// path the pointwise evaluator uses.
class MomentIntegrand {
public:
    MomentIntegrand(const MomentRunConfig& cfg, double t_hi) {
        sigma0_ = cfg.sigma0();
        logT_ = cfg.logT();
        jmax_ = std::max(0, cfg.Q.degree());
        qop_.resize(jmax_ + 1);
        double scale = 1.0;
        for (int j = 0; j <= jmax_; ++j) {
            qop_[j] = cfg.Q.coeff(j) * scale;
            scale *= -1.0 / logT_;
        }
        em_order_ = 8;
        nmax_ = std::max(50, static_cast<int>(std::ceil(1.3 * t_hi / (2.0 * M_PI))) + 21);
        lnn_.resize(nmax_ + 1);
        nsig_.resize(nmax_ + 1);
        lnn_[0] = nsig_[0] = 0.0;
        for (int n = 1; n <= nmax_; ++n) {
            lnn_[n] = std::log(static_cast<double>(n));
            nsig_[n] = std::pow(static_cast<double>(n), -sigma0_);
        }
        const int64_t M = cfg.M();
        std::vector<int8_t> mu = mobius_sieve(M);
        const double lnM = std::log(static_cast<double>(M));
        for (int64_t h = 1; h <= M; ++h) {
            if (mu[h] == 0) continue;
            const double lh = std::log(static_cast<double>(h));
            const double a = static_cast<double>(mu[h]) *
                             std::pow(static_cast<double>(h), -0.5) *
                             cfg.P((lnM - lh) / lnM);
            if (a != 0.0) {
                lnh_.push_back(lh);
                amph_.push_back(a);
            }
        }
    }

    double operator()(double t) const {
        const int N = std::min(
            nmax_, std::max(50, static_cast<int>(std::ceil(1.3 * t / (2.0 * M_PI))) + 20));
        cplx d[9] = {};
        for (int n = 1; n < N; ++n) {
            const double ph = t * lnn_[n];
            cplx term = nsig_[n] * cplx(std::cos(ph), -std::sin(ph));
            d[0] += term;
            for (int j = 1; j <= jmax_; ++j) {
                term *= -lnn_[n];
                d[j] += term;
            }
        }
        const cplx s(sigma0_, t);
        zeta_em_tail_derivs(s, N, em_order_, jmax_, d);
        cplx V = 0.0;
        for (int j = 0; j <= jmax_; ++j) V += qop_[j] * d[j];
        cplx psi = 0.0;
        for (size_t i = 0; i < lnh_.size(); ++i) {
            const double ph = t * lnh_[i];
            psi += amph_[i] * cplx(std::cos(ph), -std::sin(ph));
        }
        return std::norm(V * psi);
    }

private:
    double sigma0_, logT_;
    int jmax_, em_order_, nmax_;
    std::vector<double> qop_, lnn_, nsig_, lnh_, amph_;
};

// Composite Gauss-Legendre over [a,b]; panels are reduced in ascending order
// so the result is independent of the thread count.
double integrate_panels(const MomentIntegrand& f, const Window* w, double a, double b,
                        double step, int nodes, int threads) {
    const GaussLegendre& gl = gauss_legendre(nodes);
    const int64_t npanels = static_cast<int64_t>(std::ceil((b - a) / step - 1e-12));
    std::vector<double> partial(npanels, 0.0);
    (void)threads;
#ifdef _OPENMP
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
#endif
    for (int64_t p = 0; p < npanels; ++p) {
        const double lo = a + p * step;
        const double hi = std::min(lo + step, b);
        const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        double s = 0.0;
        for (int i = 0; i < nodes; ++i) {
            const double t = mid + half * gl.nodes[i];
            double v = f(t);
            if (w) v *= (*w)(t);
            s += gl.weights[i] * v;
        }
        partial[p] = half * s;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

} // namespace

MomentResult smoothed_moment(const MomentRunConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    WindowSpec wspec = config.window;
    wspec.T = config.T;
    wspec.fill_defaults();
    WindowAdmissibility adm = verify_window(wspec);
    if (!adm.range_ok || !adm.support_ok)
        throw std::invalid_argument("smoothed_moment: window fails (w1)/(w2)");
    Window w = window_build(wspec);

    MomentIntegrand f(config, w.hi());
    double value = integrate_panels(f, &w, w.lo(), w.hi(), config.quad_step,
                                    config.nodes, config.threads);

    MomentResult r;
    r.value = value;
    MainTermParams mt{config.P, config.Q, config.R, config.theta};
    r.main_term = main_term_closed(mt).c_value * w_hat_zero(wspec);
    r.ratio = r.value / r.main_term;
    r.T = config.T;
    r.sigma0 = config.sigma0();
    r.M = config.M();
    if (config.check_step) {
        r.halved_value = integrate_panels(f, &w, w.lo(), w.hi(), config.quad_step / 2,
                                          config.nodes, config.threads);
        r.step_converged = std::abs(r.halved_value - r.value) <= 0.005 * std::abs(r.halved_value);
    }
    r.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

MomentResult sharp_moment(const MomentRunConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    MomentIntegrand f(config, config.T);
    double integral = integrate_panels(f, nullptr, 1.0, config.T, config.quad_step,
                                       config.nodes, config.threads);

    MomentResult r;
    r.value = integral / config.T;
    MainTermParams mt{config.P, config.Q, config.R, config.theta};
    r.main_term = main_term_closed(mt).c_value;
    r.ratio = r.value / r.main_term;
    r.T = config.T;
    r.sigma0 = config.sigma0();
    r.M = config.M();
    if (config.check_step) {
        r.halved_value = integrate_panels(f, nullptr, 1.0, config.T, config.quad_step / 2,
                                          config.nodes, config.threads) / config.T;
        r.step_converged = std::abs(r.halved_value - r.value) <= 0.005 * std::abs(r.halved_value);
    }
    r.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

double band_integral(const MomentRunConfig& config, double t_lo, double t_hi,
                     bool windowed) {
    config.validate();
    if (!(t_lo >= 1.0) || !(t_hi > t_lo))
        throw std::invalid_argument("band_integral: need 1 <= t_lo < t_hi");
    MomentIntegrand f(config, t_hi);
    if (windowed) {
        WindowSpec ws = config.window;
        ws.T = config.T;
        ws.fill_defaults();
        Window w = window_build(ws);
        return integrate_panels(f, &w, t_lo, t_hi, config.quad_step, config.nodes,
                                config.threads);
    }
    return integrate_panels(f, nullptr, t_lo, t_hi, config.quad_step, config.nodes,
                            config.threads);
}

} // namespace critline
