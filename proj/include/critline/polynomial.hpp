// Dense real-coefficient polynomial algebra in one and two variables,
// plus the exponential moments E_k(R) = int_0^1 e^{2Rv} v^k dv that turn
// weighted unit-square integrals of bivariate polynomials into closed forms.
#ifndef CRITLINE_POLYNOMIAL_HPP
#define CRITLINE_POLYNOMIAL_HPP

#include <complex>
#include <string>
#include <vector>

namespace critline {

using cplx = std::complex<double>;

class Polynomial {
public:
    Polynomial() = default;                          // the zero polynomial
    explicit Polynomial(std::vector<double> coeffs); // coeffs[j] multiplies x^j

    static Polynomial monomial(int degree, double coeff = 1.0);
    // Parses a comma-separated coefficient list, lowest degree first
    // ("0,1" is x, "1,-1" is 1-x).  Throws std::invalid_argument on junk.
    static Polynomial parse(const std::string& csv);

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    double coeff(int j) const;
    const std::vector<double>& coeffs() const { return c_; }

    double operator()(double x) const;
    cplx operator()(const cplx& x) const;

    Polynomial derivative() const;
    Polynomial antiderivative() const;   // constant term 0
    double integral01() const;           // int_0^1

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(double a) const;

    std::string to_csv() const;

private:
    std::vector<double> c_;   // trailing coefficient nonzero unless empty
    void trim();
};

// Polynomial in two variables; coeff(i,k) multiplies first^i * second^k.
// Which letters "first" and "second" denote is the caller's convention:
// inner_derivative() produces (u,v), poly_shift() produces (x,w).
class BivariatePolynomial {
public:
    BivariatePolynomial() : d1_(-1), d2_(-1) {}
    BivariatePolynomial(int deg1, int deg2);

    // a(first) * b(second)
    static BivariatePolynomial outer(const Polynomial& a, const Polynomial& b);

    double coeff(int i, int k) const;
    double& at(int i, int k);
    int degree1() const { return d1_; }
    int degree2() const { return d2_; }

    double operator()(double u, double v) const;

    BivariatePolynomial operator+(const BivariatePolynomial& o) const;
    BivariatePolynomial operator*(const BivariatePolynomial& o) const;
    BivariatePolynomial scaled(double a) const;

private:
    int d1_, d2_;
    std::vector<double> c_;  // (d1_+1) x (d2_+1), row-major in the first index
};

// E_k(R) = int_0^1 e^{2Rv} v^k dv.  Exact limit 1/(k+1) at R = 0.
// Throws std::invalid_argument for k < 0.
double exp_moment(int k, double R);

enum class ShiftVar { U, V };

// Expands p(w + scale*x) by the binomial theorem into a bivariate polynomial
// with first variable x and second variable w (= u or v, per `other`).
// Evaluating at x = 0 recovers p(w).
BivariatePolynomial poly_shift(const Polynomial& p, ShiftVar other, double scale);

// int_0^1 int_0^1 e^{2Rv} g(u,v) du dv, exactly: the monomial u^i v^k
// contributes exp_moment(k,R)/(i+1).  First variable is u, second is v.
double integrate_unit_square_weighted(const BivariatePolynomial& g, double R);

// The argument bundle of the main term c(P,Q,R,theta).
struct MainTermParams {
    Polynomial P;      // P(0) = 0, P(1) = 1
    Polynomial Q;      // Q(0) = 1
    double R = 1.3;    // >= 0 (the kappa bound itself needs R > 0)
    double theta = 0.5;  // in (0, 1/2]

    // Throws std::invalid_argument on constraint violations.
    void validate() const;
    // theta = 1/2 sits on the boundary of the admissible range; runs at the
    // boundary carry a warning.
    bool theta_at_boundary() const { return theta == 0.5; }
};

} // namespace critline

#endif
