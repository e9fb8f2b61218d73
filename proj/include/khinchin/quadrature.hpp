#pragma once

#include <functional>
#include <span>
#include <vector>

#include "khinchin/common.hpp"

namespace khinchin::quadrature {

// Integral value with a certified absolute-error bound. "Certified" means
// conservative analytic remainder bounds for series/tails plus adaptive-rule
// error estimates scaled by a safety factor of 10 (no interval arithmetic).
struct QuadratureResult {
    double value = 0.0;
    double err_bound = 0.0;
    int blocks_used = 1;
};

// Adaptive Gauss-Kronrod 7-15 on a finite interval. Endpoints are never
// evaluated, so integrable endpoint singularities are fine. Throws
// ToleranceError (carrying the best bound) if acc cannot be met within
// acc.max_terms interval splits.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const Accuracy& acc = {1e-10, 10000});

// Same, with interior split points the refinement starts from.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const Accuracy& acc, std::span<const double> splits);

// Integrand over (k pi, (k+1) pi) blocks:
//   sin_power:  sign_k * |sin t|^s * t^{-q}
//   gaussian:   e^{-c t^2} * t^{-q}
// with sign_k = (-1)^k when alternating, else +1, optionally times a smooth
// weight w(t) whose tail sup must be supplied for the tail bound.
struct PiBlockIntegrand {
    enum class Kind { sin_power, gaussian };
    Kind kind = Kind::sin_power;
    double s = 1.0;
    double q = 2.0;
    double c = 1.0 / 6.0;
    bool alternating = false;
    std::function<double(double)> weight;  // null means w == 1
    double weight_tail_sup = 1.0;
};

// Sums per-block integrals from from_block on, then closes with an analytic
// tail (exact zeta fold for sin_power with w == 1, certified bounds
// otherwise). err_bound includes the tail.
QuadratureResult integrate_pi_blocks(const PiBlockIntegrand& f, int from_block,
                                     const Accuracy& acc = {1e-10, 10000});

// int_{K pi}^inf |sin t|^s t^{-q} dt via the Hurwitz-zeta fold; exact up to
// quadrature/zeta error (written to *err when given). Requires q > 1, s >= 0.
double sin_power_tail(double s, double q, int from_block, double* err = nullptr);

// Same with per-block signs (-1)^k.
double sin_power_tail_alternating(double s, double q, int from_block, double* err = nullptr);

// int_T^inf e^{-c t^2} t^{-q} dt = (1/2) c^{(q-1)/2} Gamma((1-q)/2, c T^2).
double gaussian_tail(double c, double q, double T);

// int_T^inf prod_j min(1, 1/(w_j t)) t^{-q} dt, piecewise closed form; q > 1.
double power_product_tail(std::span<const double> w, double q, double T);

}  // namespace khinchin::quadrature
