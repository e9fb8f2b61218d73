#include <doctest.h>

#include <cmath>
#include <functional>

#include "khinchin/specfun.hpp"

using namespace khinchin;
namespace sf = khinchin::specfun;

namespace {

// Independent oracle: adaptive Simpson, used only from tests.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

double quad_oracle(const std::function<double(double)>& f, double a, double b,
                   double tol = 1e-12) {
    return simpson(f, a, b, f(a), f(0.5 * (a + b)), f(b), tol, 48);
}

constexpr double sqrt_pi = 1.77245385090551602729816748334;

}  // namespace

TEST_CASE("gamma: classical values and recurrence") {
    CHECK(sf::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sf::gamma(0.5) == doctest::Approx(sqrt_pi).epsilon(1e-13));
    // derived by recurrence from Gamma(0.5)
    CHECK(sf::gamma(1.5) == doctest::Approx(0.5 * sqrt_pi).epsilon(1e-13));
    CHECK(sf::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-13));

    for (double x = 0.1; x < 5.05; x += 0.1) {
        const double lhs = sf::gamma(x + 1.0);
        const double rhs = x * sf::gamma(x);
        CHECK(std::abs(lhs - rhs) / lhs <= 1e-11);
    }
    // cross-check against the standard library implementation
    for (double x : {0.13, 0.77, 1.9, 3.14, 7.5, 12.0})
        CHECK(sf::gamma(x) == doctest::Approx(std::tgamma(x)).epsilon(5e-13));
    CHECK_THROWS_AS(sf::gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(sf::gamma(-1.3), std::domain_error);
}

TEST_CASE("upper incomplete gamma: closed forms and quadrature oracle") {
    CHECK(sf::upper_incomplete_gamma(1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    // Gamma(0.5, 1) = sqrt(pi) (1 - erf(1))
    CHECK(sf::upper_incomplete_gamma(0.5, 1.0) ==
          doctest::Approx(sqrt_pi * (1.0 - std::erf(1.0))).epsilon(1e-12));
    // Gamma(2, x) = (1 + x) e^{-x}
    CHECK(sf::upper_incomplete_gamma(2.0, 0.5) ==
          doctest::Approx(1.5 * std::exp(-0.5)).epsilon(1e-12));

    // direct quadrature of the defining integral (finite piece + closed tail bound)
    auto defint = [](double s, double x) {
        const double big = 60.0;
        return quad_oracle([s](double t) { return std::pow(t, s - 1.0) * std::exp(-t); }, x, big);
    };
    CHECK(sf::upper_incomplete_gamma(0.5, 1.0) == doctest::Approx(defint(0.5, 1.0)).epsilon(1e-10));
    CHECK(sf::upper_incomplete_gamma(-0.3, 1.6449) ==
          doctest::Approx(defint(-0.3, 1.6449)).epsilon(1e-10));
    CHECK(sf::upper_incomplete_gamma(-0.8, 0.37) ==
          doctest::Approx(defint(-0.8, 0.37)).epsilon(1e-10));

    // recurrence Gamma(s+1, x) = s Gamma(s, x) + x^s e^{-x}
    for (double s : {0.25, 1.3, -0.45})
        for (double x : {0.4, 2.0, 8.0, 20.0, 45.0}) {
            const double lhs = sf::upper_incomplete_gamma(s + 1.0, x);
            const double rhs = s * sf::upper_incomplete_gamma(s, x) +
                               std::exp(s * std::log(x) - x);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
        }

    CHECK_THROWS_AS(sf::upper_incomplete_gamma(0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(sf::upper_incomplete_gamma(-2.0, 1.0), std::domain_error);
}

TEST_CASE("sine integral") {
    CHECK(sf::sine_integral(0.0) == 0.0);
    const double si_pi = quad_oracle([](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; },
                                     0.0, khinchin::pi);
    CHECK(sf::sine_integral(khinchin::pi) == doctest::Approx(si_pi).epsilon(1e-12));
    // spot value frozen from the quadrature oracle
    CHECK(sf::sine_integral(khinchin::pi) == doctest::Approx(1.8519370519824662).epsilon(1e-12));

    for (double x : {3.9, 4.1, 12.0, 30.0, 75.0}) {
        const double direct =
            quad_oracle([](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }, 0.0, x);
        CHECK(sf::sine_integral(x) == doctest::Approx(direct).epsilon(1e-11));
    }

    // |Si'(x) - sin x / x| small by central differences
    for (double x = 0.5; x <= 20.0; x += 0.5) {
        const double h = 1e-5;
        const double der = (sf::sine_integral(x + h) - sf::sine_integral(x - h)) / (2.0 * h);
        CHECK(std::abs(der - std::sin(x) / x) <= 1e-6);
    }
    CHECK_THROWS_AS(sf::sine_integral(-1.0), std::domain_error);
}

TEST_CASE("cosine integral") {
    // Ci(x) = gamma + log x + int_0^x (cos t - 1)/t dt
    auto ci_oracle = [](double x) {
        return sf::euler_gamma + std::log(x) +
               quad_oracle([](double t) { return t == 0.0 ? 0.0 : (std::cos(t) - 1.0) / t; },
                           0.0, x);
    };
    for (double x : {0.5, 1.0, 3.9, 4.1, 10.0, 40.0})
        CHECK(sf::cosine_integral(x) == doctest::Approx(ci_oracle(x)).epsilon(1e-10));
    CHECK(sf::cosine_integral(1.0) == doctest::Approx(0.3374039229009681).epsilon(1e-12));
    for (double x = 0.5; x <= 20.0; x += 0.7) {
        const double h = 1e-5;
        const double der =
            (sf::cosine_integral(x + h) - sf::cosine_integral(x - h)) / (2.0 * h);
        CHECK(std::abs(der - std::cos(x) / x) <= 1e-6);
    }
    CHECK_THROWS_AS(sf::cosine_integral(0.0), std::domain_error);
}

TEST_CASE("exponential integral Ei(-x)") {
    // series oracle written out independently
    auto ei_series = [](double x) {
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= -x / k;
            sum += term / k;
        }
        return sf::euler_gamma + std::log(x) + sum;
    };
    CHECK(sf::expint_neg(1.0) == doctest::Approx(ei_series(1.0)).epsilon(1e-13));
    CHECK(sf::expint_neg(1.0) == doctest::Approx(-0.21938393439552029).epsilon(1e-12));

    auto ei_quad = [](double x) {
        return -quad_oracle([](double t) { return std::exp(-t) / t; }, x, x + 80.0);
    };
    for (double x : {0.3, 2.0, 3.9, 4.1, 9.0, 25.0})
        CHECK(sf::expint_neg(x) == doctest::Approx(ei_quad(x)).epsilon(1e-10));
    CHECK_THROWS_AS(sf::expint_neg(0.0), std::domain_error);
}

TEST_CASE("gaussian absolute moments") {
    CHECK(sf::gaussian_abs_moment(2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sf::gaussian_abs_moment(0.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sf::gaussian_abs_moment(1.0) ==
          doctest::Approx(std::sqrt(2.0 / khinchin::pi)).epsilon(1e-13));
    // series-integral agreement with the defining integral
    for (double p : {0.1, 0.5, 1.7}) {
        const double direct =
            2.0 / std::sqrt(2.0 * khinchin::pi) *
            quad_oracle([p](double x) { return std::pow(x, p) * std::exp(-0.5 * x * x); },
                        0.0, 40.0, 1e-13);
        CHECK(sf::gaussian_abs_moment(p) == doctest::Approx(direct).epsilon(1e-10));
    }
    CHECK_THROWS_AS(sf::gaussian_abs_moment(-1.0), std::domain_error);
}

TEST_CASE("kappa_p") {
    CHECK(sf::kappa(1.0) == doctest::Approx(2.0 / khinchin::pi).epsilon(1e-13));
    // (2/pi) Gamma(1.5) sin(pi/4) = 1/sqrt(2 pi)
    CHECK(sf::kappa(0.5) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * khinchin::pi)).epsilon(1e-13));
    CHECK(sf::kappa(1e-6) < 2e-6);  // vanishes as p -> 0+
    CHECK_THROWS_AS(sf::kappa(0.0), std::domain_error);
    CHECK_THROWS_AS(sf::kappa(2.0), std::domain_error);
}

TEST_CASE("gauss moment ratio psi(p)") {
    // psi(p) -> 1 as p -> 0+
    CHECK(sf::gauss_moment_ratio(1e-8) == doctest::Approx(1.0).epsilon(1e-7));
    // direct formula evaluation as oracle for the product form
    const double direct =
        1.5 * std::pow(4.0 / 3.0, 0.25) * sf::gamma(0.75) / sqrt_pi;
    const auto both = sf::gauss_moment_ratio_both(0.5);
    CHECK(both.value == doctest::Approx(direct).epsilon(1e-12));
    CHECK(std::abs(both.value - both.product_value) <= 1e-9);

    // psi(p) < 1 + p(p+1)/6 on a 1e-3 grid
    for (double p = 1e-3; p < 1.0; p += 1e-3)
        CHECK(sf::gauss_moment_ratio(p) < 1.0 + p * (p + 1.0) / 6.0);
    // psi(p) < 1/(2 - (3/2)^{p/2}) for p in (0, 0.69)
    for (double p = 1e-3; p < 0.69; p += 1e-3)
        CHECK(sf::gauss_moment_ratio(p) < 1.0 / (2.0 - std::pow(1.5, 0.5 * p)));
}

TEST_CASE("hurwitz zeta and digamma") {
    CHECK(sf::hurwitz_zeta(2.0, 1.0) ==
          doctest::Approx(khinchin::pi * khinchin::pi / 6.0).epsilon(1e-13));
    // direct-summation oracle
    auto zeta_sum = [](double s, double a) {
        double sum = 0.0;
        const int n = 2000000;
        for (int k = n - 1; k >= 0; --k) sum += std::pow(a + k, -s);
        // integral sandwich for the truncated tail
        return sum + std::pow(a + n - 0.5, 1.0 - s) / (s - 1.0);
    };
    CHECK(sf::hurwitz_zeta(3.0, 2.0) == doctest::Approx(zeta_sum(3.0, 2.0)).epsilon(1e-11));
    CHECK(sf::hurwitz_zeta(2.6, 7.3) == doctest::Approx(zeta_sum(2.6, 7.3)).epsilon(1e-11));

    CHECK(sf::digamma(1.0) == doctest::Approx(-sf::euler_gamma).epsilon(1e-12));
    CHECK(sf::digamma(2.0) == doctest::Approx(1.0 - sf::euler_gamma).epsilon(1e-12));
    CHECK(sf::digamma(0.5) ==
          doctest::Approx(-2.0 * std::log(2.0) - sf::euler_gamma).epsilon(1e-12));
}
