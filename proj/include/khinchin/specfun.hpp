#pragma once

#include "khinchin/common.hpp"

namespace khinchin::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
static_assert(0.577215 < euler_gamma && euler_gamma < 0.577216);

// Gamma function on (0, inf), relative error <= 1e-12.
double gamma(double x);
double log_gamma(double x);

// Upper incomplete gamma Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt for x > 0
// and s not a nonpositive integer. Power series for small x, Legendre
// continued fraction for large x; absolute error <= 1e-12.
double upper_incomplete_gamma(double s, double x, const Accuracy& acc = {1e-12, 500});

// Trigonometric and exponential integrals.
//   sine_integral(x)   = int_0^x sin t / t dt,            x >= 0
//   cosine_integral(x) = gamma + log x + int_0^x (cos t - 1)/t dt,  x > 0
//   expint_neg(x)      = Ei(-x) = -int_x^inf e^{-t}/t dt, x > 0
double sine_integral(double x);
double cosine_integral(double x);
double expint_neg(double x);

// E|Z|^p = 2^{p/2} Gamma((1+p)/2) / sqrt(pi) for a standard Gaussian Z, p > -1.
double gaussian_abs_moment(double p);

// kappa_p = (2/pi) Gamma(1+p) sin(pi p / 2), 0 < p < 2.
double kappa(double p);

// psi(p) = (1+p) (4/3)^{p/2} Gamma((1+p)/2) / sqrt(pi) on (0,1), evaluated
// directly and through its infinite-product form with a summed tail.
struct GammaRatioEval {
    double value;          // direct Gamma-formula evaluation
    double product_value;  // truncated product + analytic tail
    double err_bound;      // bound on the product-route error
};
GammaRatioEval gauss_moment_ratio_both(double p);
double gauss_moment_ratio(double p);

// Hurwitz zeta(s, a) for s > 1, a > 0 (Euler-Maclaurin). Optional err output.
double hurwitz_zeta(double s, double a, double* err = nullptr);

// Digamma for x > 0.
double digamma(double x);

}  // namespace khinchin::specfun
