#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "channelfield/quadrature.hpp"
#include "channelfield/special.hpp"

using namespace channelfield;

TEST_CASE("incomplete gamma against the erf identity") {
    // gamma_p(1/2, x) = erf(sqrt(x)), an independent closed form.
    for (const double x : {1e-6, 0.01, 0.3, 1.0, 2.5, 10.0, 40.0}) {
        CHECK(gamma_p(0.5, x) ==
              doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
    }
}

TEST_CASE("incomplete gamma against quadrature") {
    // int_0^x s^{a-1} e^{-s} ds with the endpoint singularity removed by
    // s = v^{1/a}: (1/a) becomes exact and the integrand smooth.
    for (const double a : {0.2, 0.5, 0.8, 1.3}) {
        for (const double x : {0.05, 0.7, 3.0, 25.0}) {
            const double direct = quad_adaptive(
                [&](double v) {
                    const double s = std::pow(v, 1.0 / a);
                    return std::exp(-s) / a;
                },
                0.0, std::pow(x, a), 1e-13);
            CHECK(gamma_lower(a, x) == doctest::Approx(direct).epsilon(1e-10));
        }
    }
    CHECK(gamma_p(0.5, 0.0) == 0.0);
    CHECK(gamma_q(0.5, 0.0) == 1.0);
    CHECK(gamma_p(0.7, 60.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const QuadRule r8 = gauss_legendre(8);
    double wsum = 0.0;
    for (double w : r8.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // degree 15 is the exactness limit of an 8-point rule
    const auto poly = [](double x) { return std::pow(x, 15) + 3.0 * std::pow(x, 8); };
    CHECK(quad_fixed(poly, -1.0, 1.0, r8) ==
          doctest::Approx(2.0 * 3.0 / 9.0).epsilon(1e-13));
    CHECK(quad_fixed([](double x) { return std::exp(x); }, 0.0, 1.0,
                     gauss_legendre(16)) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("gauss-kronrod pair self-validates") {
    // The embedded pair must integrate polynomials of degree <= 22 exactly;
    // this pins every tabulated abscissa and weight.
    for (int deg = 0; deg <= 22; ++deg) {
        const double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
        const double got = quad_adaptive(
            [deg](double x) { return std::pow(x, deg); }, -1.0, 1.0, 1e-13);
        CHECK(got == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("adaptive quadrature on rough integrands") {
    CHECK(quad_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0,
                        1e-10) == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(quad_adaptive([](double x) { return std::sin(50.0 * x); }, 0.0, M_PI,
                        1e-12) ==
          doctest::Approx((1.0 - std::cos(50.0 * M_PI)) / 50.0).epsilon(1e-10));
}
