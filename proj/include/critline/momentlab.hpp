// Desk-scale verification of the mollified second-moment asymptotic: build
// an admissible smooth window w, integrate w(t) |V psi(sigma0+it)|^2 by
// composite Gauss-Legendre panels, and compare against c(P,Q,R,theta) w^(0).
#ifndef CRITLINE_MOMENTLAB_HPP
#define CRITLINE_MOMENTLAB_HPP

#include <cstdint>

#include "critline/polynomial.hpp"
#include "critline/zeta.hpp"

namespace critline {

enum class WindowKind { UpperMajorant, LowerMinorant, CenteredBump };

// Smooth transition window: exact 0 outside [support_lo, support_hi],
// exact 1 on [support_lo + delta, support_hi - delta], C-infinity ramps of
// width delta in between.  Admissibility: 0 <= w <= 1, support within
// [T/4, 2T], derivatives bounded by C_j delta^{-j}.
struct WindowSpec {
    double T = 1e4;
    double delta = 0.0;        // 0 -> default T / log T
    double support_lo = 0.0;   // 0 -> default from kind
    double support_hi = 0.0;
    WindowKind kind = WindowKind::UpperMajorant;

    static WindowSpec majorant(double T);     // support [T/2 - delta, T + delta]
    static WindowSpec minorant(double T);     // support [T/2, T]
    static WindowSpec bump(double T);         // plateau [5T/8, 7T/8]

    double effective_delta() const;
    void fill_defaults();      // resolves the zero fields
    void validate() const;     // throws on (w1)/(w2) violations
};

class Window {
public:
    Window(double lo, double hi, double delta);
    double operator()(double t) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double delta() const { return delta_; }
    double plateau_lo() const { return lo_ + delta_; }
    double plateau_hi() const { return hi_ - delta_; }

private:
    double lo_, hi_, delta_;
};

Window window_build(const WindowSpec& spec);

// Measured admissibility data: max grid value of |w^{(j)}| delta^j for
// j = 0..4 (finite differences on a fine grid).
struct WindowAdmissibility {
    bool range_ok = false;     // 0 <= w <= 1
    bool support_ok = false;   // support within [T/4, 2T]
    double deriv_const[5] = {0, 0, 0, 0, 0};
};

WindowAdmissibility verify_window(const WindowSpec& spec);

// w^(0) = int w(t) dt: plateau length plus the two ramps by quadrature.
double w_hat_zero(const WindowSpec& spec);

struct MomentRunConfig {
    double T = 1e4;
    double theta = 0.5;
    double R = 1.3;
    Polynomial P;              // defaults handled by the CLI
    Polynomial Q;
    WindowSpec window;
    double quad_step = 2.0;    // Gauss-Legendre panel width in t
    int nodes = 16;            // nodes per panel
    bool check_step = false;   // re-run at quad_step/2 and compare
    int threads = 0;           // 0 = all available

    int64_t M() const;         // round(T^theta)
    double logT() const;
    double sigma0() const;     // 1/2 - R/log T
    void validate() const;
};

struct MomentResult {
    double value = 0.0;        // the integral; sharp_moment divides by T
    double main_term = 0.0;    // c * w^(0) (smoothed) or c (sharp)
    double ratio = 0.0;
    double halved_value = 0.0; // only when check_step
    bool step_converged = true;
    double runtime_seconds = 0.0;
    double T = 0.0, sigma0 = 0.0;
    int64_t M = 0;
};

// int w(t) |V psi(sigma0 + it)|^2 dt over the window support.
MomentResult smoothed_moment(const MomentRunConfig& config);

// (1/T) int_1^T |V psi(sigma0 + it)|^2 dt, reported against c(P,Q,R,theta).
MomentResult sharp_moment(const MomentRunConfig& config);

// int_a^b |V psi(sigma0 + it)|^2 dt, optionally multiplied by the config's
// window (used for the majorant/minorant squeeze and per-segment dumps).
double band_integral(const MomentRunConfig& config, double t_lo, double t_hi,
                     bool windowed = false);

} // namespace critline

#endif
