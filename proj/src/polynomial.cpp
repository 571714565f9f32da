#include "critline/polynomial.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace critline {

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    trim();
}

Polynomial Polynomial::monomial(int degree, double coeff) {
    if (degree < 0) throw std::invalid_argument("monomial: negative degree");
    std::vector<double> c(degree + 1, 0.0);
    c[degree] = coeff;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::parse(const std::string& csv) {
    std::vector<double> c;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const char* b = tok.c_str();
        char* end = nullptr;
        double v = std::strtod(b, &end);
        while (end && *end == ' ') ++end;
        if (end == b || (end && *end != '\0'))
            throw std::invalid_argument("polynomial coefficient not a number: '" + tok + "'");
        c.push_back(v);
    }
    if (c.empty()) throw std::invalid_argument("empty polynomial coefficient list");
    return Polynomial(std::move(c));
}

double Polynomial::coeff(int j) const {
    if (j < 0 || j >= static_cast<int>(c_.size())) return 0.0;
    return c_[j];
}

double Polynomial::operator()(double x) const {
    double r = 0.0;
    for (size_t j = c_.size(); j-- > 0;) r = r * x + c_[j];
    return r;
}

cplx Polynomial::operator()(const cplx& x) const {
    cplx r = 0.0;
    for (size_t j = c_.size(); j-- > 0;) r = r * x + c_[j];
    return r;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<double> d(c_.size() - 1);
    for (size_t j = 1; j < c_.size(); ++j) d[j - 1] = c_[j] * static_cast<double>(j);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    if (c_.empty()) return Polynomial();
    std::vector<double> a(c_.size() + 1, 0.0);
    for (size_t j = 0; j < c_.size(); ++j) a[j + 1] = c_[j] / static_cast<double>(j + 1);
    return Polynomial(std::move(a));
}

double Polynomial::integral01() const {
    double s = 0.0;
    for (size_t j = c_.size(); j-- > 0;) s += c_[j] / static_cast<double>(j + 1);
    return s;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<double> c(std::max(c_.size(), o.c_.size()), 0.0);
    for (size_t j = 0; j < c.size(); ++j) c[j] = coeff(static_cast<int>(j)) + o.coeff(static_cast<int>(j));
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<double> c(std::max(c_.size(), o.c_.size()), 0.0);
    for (size_t j = 0; j < c.size(); ++j) c[j] = coeff(static_cast<int>(j)) - o.coeff(static_cast<int>(j));
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<double> c(c_.size() + o.c_.size() - 1, 0.0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(double a) const {
    std::vector<double> c(c_);
    for (double& x : c) x *= a;
    return Polynomial(std::move(c));
}

std::string Polynomial::to_csv() const {
    if (c_.empty()) return "0";
    std::string out;
    char buf[40];
    for (size_t j = 0; j < c_.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", c_[j]);
        if (j) out += ',';
        out += buf;
    }
    return out;
}

BivariatePolynomial::BivariatePolynomial(int deg1, int deg2) : d1_(deg1), d2_(deg2) {
    if (deg1 < 0 || deg2 < 0) throw std::invalid_argument("BivariatePolynomial: negative degree");
    c_.assign(static_cast<size_t>(deg1 + 1) * (deg2 + 1), 0.0);
}

BivariatePolynomial BivariatePolynomial::outer(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return BivariatePolynomial();
    BivariatePolynomial r(a.degree(), b.degree());
    for (int i = 0; i <= a.degree(); ++i)
        for (int k = 0; k <= b.degree(); ++k) r.at(i, k) = a.coeff(i) * b.coeff(k);
    return r;
}

double BivariatePolynomial::coeff(int i, int k) const {
    if (i < 0 || i > d1_ || k < 0 || k > d2_) return 0.0;
    return c_[static_cast<size_t>(i) * (d2_ + 1) + k];
}

double& BivariatePolynomial::at(int i, int k) {
    if (i < 0 || i > d1_ || k < 0 || k > d2_)
        throw std::out_of_range("BivariatePolynomial::at");
    return c_[static_cast<size_t>(i) * (d2_ + 1) + k];
}

double BivariatePolynomial::operator()(double u, double v) const {
    // Horner in the first variable; inner Horner in the second.
    double r = 0.0;
    for (int i = d1_; i >= 0; --i) {
        double row = 0.0;
        for (int k = d2_; k >= 0; --k) row = row * v + coeff(i, k);
        r = r * u + row;
    }
    return r;
}

BivariatePolynomial BivariatePolynomial::operator+(const BivariatePolynomial& o) const {
    if (d1_ < 0) return o;
    if (o.d1_ < 0) return *this;
    BivariatePolynomial r(std::max(d1_, o.d1_), std::max(d2_, o.d2_));
    for (int i = 0; i <= r.d1_; ++i)
        for (int k = 0; k <= r.d2_; ++k) r.at(i, k) = coeff(i, k) + o.coeff(i, k);
    return r;
}

BivariatePolynomial BivariatePolynomial::operator*(const BivariatePolynomial& o) const {
    if (d1_ < 0 || o.d1_ < 0) return BivariatePolynomial();
    BivariatePolynomial r(d1_ + o.d1_, d2_ + o.d2_);
    for (int i = 0; i <= d1_; ++i)
        for (int k = 0; k <= d2_; ++k) {
            double a = coeff(i, k);
            if (a == 0.0) continue;
            for (int p = 0; p <= o.d1_; ++p)
                for (int q = 0; q <= o.d2_; ++q) r.at(i + p, k + q) += a * o.coeff(p, q);
        }
    return r;
}

BivariatePolynomial BivariatePolynomial::scaled(double a) const {
    BivariatePolynomial r(*this);
    for (double& x : r.c_) x *= a;
    return r;
}

double exp_moment(int k, double R) {
    if (k < 0) throw std::invalid_argument("exp_moment: k must be nonnegative");
    if (R == 0.0) return 1.0 / (k + 1);
    // Power series int_0^1 e^{2Rv} v^k dv = sum_m (2R)^m / (m! (k+m+1)).
    // All terms positive for R > 0, so there is no cancellation; the upward
    // recurrence E_k = (e^{2R} - k E_{k-1})/(2R) amplifies errors by
    // k!/(2R)^k and is not usable at the k ~ 20 this project reaches.
    const double z = 2.0 * R;
    double term = 1.0;   // z^m / m!
    double sum = 1.0 / (k + 1);
    for (int m = 1; m < 400; ++m) {
        term *= z / m;
        double add = term / (k + m + 1);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum) && m > std::abs(z)) break;
    }
    return sum;
}

BivariatePolynomial poly_shift(const Polynomial& p, ShiftVar /*other*/, double scale) {
    if (p.is_zero()) return BivariatePolynomial();
    const int d = p.degree();
    BivariatePolynomial r(d, d);
    // p(w + scale*x) = sum_j p_j sum_{i<=j} C(j,i) (scale*x)^i w^{j-i}
    for (int j = 0; j <= d; ++j) {
        double pj = p.coeff(j);
        if (pj == 0.0) continue;
        double binom = 1.0, spow = 1.0;
        for (int i = 0; i <= j; ++i) {
            r.at(i, j - i) += pj * binom * spow;
            binom = binom * (j - i) / (i + 1);
            spow *= scale;
        }
    }
    return r;
}

double integrate_unit_square_weighted(const BivariatePolynomial& g, double R) {
    if (g.degree1() < 0) return 0.0;
    // cache the v-moments once per call
    std::vector<double> em(g.degree2() + 1);
    for (int k = 0; k <= g.degree2(); ++k) em[k] = exp_moment(k, R);
    double s = 0.0;
    for (int i = 0; i <= g.degree1(); ++i)
        for (int k = 0; k <= g.degree2(); ++k) {
            double c = g.coeff(i, k);
            if (c != 0.0) s += c * em[k] / (i + 1);
        }
    return s;
}

void MainTermParams::validate() const {
    const double tol = 1e-12;
    if (P.is_zero() || std::abs(P(0.0)) > tol)
        throw std::invalid_argument("MainTermParams: P(0) must be 0");
    if (std::abs(P(1.0) - 1.0) > tol)
        throw std::invalid_argument("MainTermParams: P(1) must be 1");
    if (std::abs(Q(0.0) - 1.0) > tol)
        throw std::invalid_argument("MainTermParams: Q(0) must be 1");
    if (!(R >= 0.0))
        throw std::invalid_argument("MainTermParams: R must be nonnegative");
    if (!(theta > 0.0) || theta > 0.5)
        throw std::invalid_argument("MainTermParams: theta must lie in (0, 1/2]");
}

} // namespace critline
