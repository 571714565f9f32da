#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "critline/polynomial.hpp"
#include "critline/quadrature.hpp"
#include "oracles.hpp"

using namespace critline;

TEST_CASE("poly_eval basics") {
    Polynomial P = Polynomial::parse("0,1");       // x
    Polynomial Q = Polynomial::parse("1,-1");      // 1 - x
    CHECK(P(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(Q(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    Polynomial p({0.0, 2.0, 1.0});                 // x^2 + 2x
    CHECK(p(3.0) == doctest::Approx(15.0).epsilon(1e-15));
}

TEST_CASE("poly parse and round trip") {
    Polynomial p = Polynomial::parse(" 1 , -0.5 , 2.25 ");
    CHECK(p.degree() == 2);
    CHECK(p.coeff(1) == -0.5);
    Polynomial q = Polynomial::parse(p.to_csv());
    for (int j = 0; j <= 2; ++j) CHECK(q.coeff(j) == p.coeff(j));
    CHECK_THROWS_AS(Polynomial::parse("1,abc"), std::invalid_argument);
    CHECK_THROWS_AS(Polynomial::parse(""), std::invalid_argument);
    // trailing-zero invariant
    Polynomial r = Polynomial::parse("1,2,0,0");
    CHECK(r.degree() == 1);
}

TEST_CASE("poly_derivative") {
    CHECK(Polynomial::parse("0,1").derivative().coeff(0) == 1.0);
    CHECK(Polynomial::parse("1,-1").derivative().coeff(0) == -1.0);
    Polynomial c = Polynomial::parse("0,0,0,1").derivative();   // 3x^2
    CHECK(c.degree() == 2);
    CHECK(c.coeff(2) == 3.0);
}

TEST_CASE("poly_shift examples") {
    // x shifted by u: x + u
    BivariatePolynomial a = poly_shift(Polynomial::parse("0,1"), ShiftVar::U, 1.0);
    CHECK(a.coeff(1, 0) == 1.0);
    CHECK(a.coeff(0, 1) == 1.0);
    CHECK(a.coeff(0, 0) == 0.0);
    // 1 - x shifted by v with scale theta = 0.5: 1 - v - 0.5 x
    BivariatePolynomial b = poly_shift(Polynomial::parse("1,-1"), ShiftVar::V, 0.5);
    CHECK(b.coeff(0, 0) == 1.0);
    CHECK(b.coeff(0, 1) == -1.0);
    CHECK(b.coeff(1, 0) == -0.5);
    // x^2 shifted by u: x^2 + 2ux + u^2
    BivariatePolynomial c = poly_shift(Polynomial::parse("0,0,1"), ShiftVar::U, 1.0);
    CHECK(c.coeff(2, 0) == 1.0);
    CHECK(c.coeff(1, 1) == 2.0);
    CHECK(c.coeff(0, 2) == 1.0);
}

TEST_CASE("poly_shift at x=0 recovers the polynomial") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> xs(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        Polynomial p = oracles::random_poly(rng, 1 + static_cast<int>(rng() % 8));
        double scale = xs(rng);
        BivariatePolynomial b = poly_shift(p, ShiftVar::U, scale);
        double w = xs(rng);
        CHECK(b(0.0, w) == doctest::Approx(p(w)).epsilon(1e-13));
        // and the full shift identity b(x, w) = p(w + scale x)
        double x = xs(rng);
        CHECK(b(x, w) == doctest::Approx(p(w + scale * x)).epsilon(1e-12));
    }
}

TEST_CASE("exp_moment values") {
    CHECK(exp_moment(0, 0.0) == 1.0);
    CHECK(exp_moment(3, 0.0) == 0.25);
    // reference: (e^{2.6}-1)/2.6, cross-checked against adaptive quadrature
    const double frozen = 4.793745398077573526;
    CHECK(exp_moment(0, 1.3) == doctest::Approx(frozen).epsilon(1e-14));
    double quad = oracles::adaptive_quadrature(
        [](double v) { return std::exp(2.6 * v); }, 0.0, 1.0);
    CHECK(exp_moment(0, 1.3) == doctest::Approx(quad).epsilon(1e-12));
    CHECK_THROWS_AS(exp_moment(-1, 1.0), std::invalid_argument);
}

TEST_CASE("exp_moment recurrence identity and continuity at R=0") {
    for (double R : {0.3, 0.7, 1.3, 2.9, -0.2}) {
        const double e2r = std::exp(2.0 * R);
        for (int k = 1; k <= 20; ++k) {
            double lhs = 2.0 * R * exp_moment(k, R) + k * exp_moment(k - 1, R);
            CHECK(lhs == doctest::Approx(e2r).epsilon(1e-12));
        }
    }
    for (int k = 0; k <= 8; ++k)
        CHECK(std::abs(exp_moment(k, 1e-8) - 1.0 / (k + 1)) < 1e-7);
}

TEST_CASE("exp_moment against quadrature across k and R") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> Rd(0.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        double R = Rd(rng);
        int k = static_cast<int>(rng() % 12);
        double quad = oracles::adaptive_quadrature(
            [&](double v) { return std::exp(2.0 * R * v) * std::pow(v, k); }, 0.0, 1.0);
        CHECK(exp_moment(k, R) == doctest::Approx(quad).epsilon(1e-11));
    }
}

TEST_CASE("bipoly weighted unit-square integral") {
    BivariatePolynomial one(0, 0);
    one.at(0, 0) = 1.0;
    CHECK(integrate_unit_square_weighted(one, 0.0) == doctest::Approx(1.0));
    BivariatePolynomial uv(1, 1);
    uv.at(1, 1) = 1.0;
    CHECK(integrate_unit_square_weighted(uv, 0.0) == doctest::Approx(0.25));
    BivariatePolynomial v(0, 1);
    v.at(0, 1) = 1.0;
    CHECK(integrate_unit_square_weighted(v, 1.3) ==
          doctest::Approx(exp_moment(1, 1.3)).epsilon(1e-14));
}

TEST_CASE("bipoly integral matches 2-D Gauss-Legendre on random polynomials") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> Rd(0.0, 3.0);
    const GaussLegendre& gl = gauss_legendre(24);
    for (int trial = 0; trial < 30; ++trial) {
        const int d1 = 1 + static_cast<int>(rng() % 8);
        const int d2 = 1 + static_cast<int>(rng() % 8);
        BivariatePolynomial g(d1, d2);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        for (int i = 0; i <= d1; ++i)
            for (int k = 0; k <= d2; ++k) g.at(i, k) = coef(rng);
        const double R = Rd(rng);
        double quad = 0.0;
        for (size_t i = 0; i < gl.nodes.size(); ++i)
            for (size_t j = 0; j < gl.nodes.size(); ++j) {
                double u = 0.5 * (1 + gl.nodes[i]);
                double v = 0.5 * (1 + gl.nodes[j]);
                quad += 0.25 * gl.weights[i] * gl.weights[j] * std::exp(2 * R * v) * g(u, v);
            }
        double exact = integrate_unit_square_weighted(g, R);
        CHECK(exact == doctest::Approx(quad).epsilon(1e-10));
    }
}

TEST_CASE("bivariate product and evaluation agree") {
    std::mt19937_64 rng(31);
    Polynomial a = oracles::random_poly(rng, 3), b = oracles::random_poly(rng, 4);
    BivariatePolynomial pa = BivariatePolynomial::outer(a, b);
    BivariatePolynomial sq = pa * pa;
    for (double u : {0.2, 0.7})
        for (double v : {0.1, 0.9}) {
            double direct = a(u) * b(v);
            CHECK(sq(u, v) == doctest::Approx(direct * direct).epsilon(1e-12));
        }
}

TEST_CASE("MainTermParams validation") {
    MainTermParams good{Polynomial::parse("0,1"), Polynomial::parse("1,-1"), 1.3, 0.5};
    CHECK_NOTHROW(good.validate());
    CHECK(good.theta_at_boundary());

    MainTermParams badP{Polynomial::parse("1,1"), Polynomial::parse("1,-1"), 1.3, 0.5};
    CHECK_THROWS_AS(badP.validate(), std::invalid_argument);
    MainTermParams badP1{Polynomial::parse("0,2"), Polynomial::parse("1,-1"), 1.3, 0.5};
    CHECK_THROWS_AS(badP1.validate(), std::invalid_argument);
    MainTermParams badQ{Polynomial::parse("0,1"), Polynomial::parse("0,1"), 1.3, 0.5};
    CHECK_THROWS_AS(badQ.validate(), std::invalid_argument);
    MainTermParams badR{Polynomial::parse("0,1"), Polynomial::parse("1,-1"), -1.0, 0.5};
    CHECK_THROWS_AS(badR.validate(), std::invalid_argument);
    MainTermParams badTheta{Polynomial::parse("0,1"), Polynomial::parse("1,-1"), 1.3, 0.6};
    CHECK_THROWS_AS(badTheta.validate(), std::invalid_argument);
}
