#pragma once

#include <vector>

#include "khinchin/common.hpp"
#include "khinchin/quadrature.hpp"
#include "khinchin/report.hpp"

namespace khinchin::npverify {

// Sublevel measures of the Gaussian and sinc envelopes against the measure
// d mu = t^{-p-1} dt on (0, inf):
//   gauss: mu{ e^{-t^2/6} < y } = (1/p) (-6 log y)^{-p/2}
//   sinc:  mu{ |sin t / t| < y }, summed across level roots block by block
double gauss_sublevel_measure(double y, double p);
double sinc_sublevel_measure(double y, double p);

// I_p(s) = kappa_p int_0^inf (1 - |sinc(t/sqrt(s))|^s) t^{-p-1} dt, s >= 1.
quadrature::QuadratureResult sinc_power_moment(double p, double s,
                                               const Accuracy& acc = {1e-10, 40000});

// I_p(inf) = E|Z/sqrt(3)|^p, closed form and by quadrature.
double gaussian_limit_moment(double p);
quadrature::QuadratureResult gaussian_limit_moment_quad(double p,
                                                        const Accuracy& acc = {1e-10, 40000});

// H(p, s) = int_0^inf (e^{-s t^2/6} - |sin t / t|^s) t^{-p-1} dt.
quadrature::QuadratureResult gauss_sinc_gap(double p, double s,
                                            const Accuracy& acc = {1e-10, 40000});

// d/dp H(p, 1) machinery: the three-piece closed bound with t0 = 3.57 and the
// direct quadrature of int (-log t)(g - f) t^{-p-1} dt.
struct GapDerivativeBounds {
    double t0 = 3.57;
    double piece_below_t0 = 0.0;   // int_1^t0 (-log t)(g-f) t^{-2}, must exceed -0.0297
    double piece_sinc_tail = 0.0;  // chord-weighted sinc blocks, must exceed 0.0437
    double piece_gauss_tail = 0.0; // 0.6132 int_t0^inf e^{-t^2/6}/t, must stay below 0.0127
    double net_lower_bound = 0.0;  // 0.0013 t0^{1-p}
    double direct_value = 0.0;     // quadrature of the derivative integral
};
GapDerivativeBounds gap_p_derivative_bounds(double p);

// Certificate that G - F changes sign exactly once on the sampled range,
// plus the two closed conditions backing it: the derivative-ratio bound
// u_m(p) > 1 on (y_30, y_1) and G > F on (0, y_30).
struct SignChangeCertificate {
    double p = 0.0;
    double y_star_lo = 0.0;
    double y_star_hi = 0.0;
    double a_threshold = 0.0;  // y_30
    bool single_change = false;
    bool condition_i = false;
    bool condition_ii = false;
    std::vector<double> grid_y;
    std::vector<int> signs;
};
SignChangeCertificate sign_change_certificate(double p, const GridSpec& grid);

// u_m(p) = B_m (b_{0,m}^p + 2 sum_{k=1}^m b_{k,m}^p): closed-form lower bound
// for F'/G' when y sits in block m; its value and p-derivative at 1.
double derivative_ratio_bound(double p, int m);
double derivative_ratio_bound_dp1(int m);
VerificationReport table1_check();

// h_p(y) = delta_p y^{p/2-1} + gamma_p y^p - beta_p y^{p-1} - alpha_p; positive
// on (0, 1/(30 pi)) and decreasing there.
double sublevel_gap_envelope(double y, double p);
std::vector<VerificationReport> envelope_checks();

// psi(p) bounds of the gamma-ratio lemmas plus Claim A's polynomial inequality.
std::vector<VerificationReport> gamma_ratio_bound_checks();

// Claim A: kappa_p H(p,2) equals the closed-form moment difference and is >= 0.
std::vector<VerificationReport> claim_a_checks(int grid_points = 50);

// Claim B: H(0.6, 1) > 0.0003 with the paper's three one-sided piece bounds,
// and the derivative route.
std::vector<VerificationReport> claim_b_checks();

nlohmann::json certificate_json(const SignChangeCertificate& c);
VerificationReport certificate_report(const SignChangeCertificate& c);

}  // namespace khinchin::npverify
