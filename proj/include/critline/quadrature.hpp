// Gauss-Legendre rules on [-1,1], computed once per node count and cached.
#ifndef CRITLINE_QUADRATURE_HPP
#define CRITLINE_QUADRATURE_HPP

#include <vector>

namespace critline {

struct GaussLegendre {
    std::vector<double> nodes;    // ascending in (-1,1)
    std::vector<double> weights;
};

// n >= 1; cached, safe to call concurrently.
const GaussLegendre& gauss_legendre(int n);

// Composite rule: f integrated over [a,b] split into panels of width at most
// `panel`, n nodes per panel.  Panel contributions are summed in ascending
// order so the result is deterministic.
template <class F>
double gl_integrate(F&& f, double a, double b, double panel, int n) {
    const GaussLegendre& gl = gauss_legendre(n);
    double total = 0.0;
    double lo = a;
    while (lo < b - 1e-12 * (1.0 + std::abs(b))) {
        double hi = lo + panel < b ? lo + panel : b;
        double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        double s = 0.0;
        for (size_t i = 0; i < gl.nodes.size(); ++i)
            s += gl.weights[i] * f(mid + half * gl.nodes[i]);
        total += half * s;
        lo = hi;
    }
    return total;
}

} // namespace critline

#endif
