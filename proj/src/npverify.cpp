#include "khinchin/npverify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "khinchin/moments.hpp"
#include "khinchin/sincfun.hpp"
#include "khinchin/specfun.hpp"

namespace khinchin::npverify {

using quadrature::QuadratureResult;

double gauss_sublevel_measure(double y, double p) {
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("gauss_sublevel_measure: 0 < y < 1");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gauss_sublevel_measure: 0 < p < 1");
    return std::pow(-6.0 * std::log(y), -0.5 * p) / p;
}

namespace {

// mu(a, b) = (a^{-p} - b^{-p}) / p for the measure t^{-p-1} dt
double mu_interval(double a, double b, double p) {
    return (std::pow(a, -p) - std::pow(b, -p)) / p;
}

// block index m with y_{m+1} < y < y_m
int block_of_level(double y) {
    if (y >= sincfun::peak_value(1)) return 0;
    // bracket from the bounds 1/((k+1/2)pi) <= y_k <= 1/(k pi), then fix up
    int k = std::max(1, static_cast<int>(std::floor(1.0 / (pi * y))) - 2);
    while (sincfun::peak_value(k + 1) >= y) ++k;
    while (k > 0 && sincfun::peak_value(k) < y) --k;
    return k;
}

}  // namespace

double sinc_sublevel_measure(double y, double p) {
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("sinc_sublevel_measure: 0 < y < 1");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("sinc_sublevel_measure: 0 < p < 1");
    const int m = block_of_level(y);
    for (int k = 1; k <= m; ++k)
        if (std::abs(y - sincfun::peak_value(k)) < 1e-13)
            throw std::domain_error("sinc_sublevel_measure: level collides with a peak value");

    double t_prev = sincfun::level_roots(y, 0).t_plus;  // t_0^+
    double total = 0.0;
    for (int k = 1; k <= m; ++k) {
        const sincfun::LevelRoots r = sincfun::level_roots(y, k);
        total += mu_interval(t_prev, *r.t_minus, p);
        t_prev = r.t_plus;
    }
    total += std::pow(t_prev, -p) / p;  // mu(t_m^+, inf)
    return total;
}

namespace {

constexpr double beta1 = 1.0 / 6.0, beta2 = 1.0 / 180.0, beta3 = 1.0 / 2835.0;

// int_0^eps (1 - e^{-sW}) u^{-1-p} du for W = -log sinc, with remainder from
// the all-positive majorant exp(-s log sinc(eps)).
struct SeriesPart {
    double value, err;
};

SeriesPart small_u_series_one_minus_fs(double p, double s, double eps) {
    const double c2 = s * beta1;
    const double c4 = s * beta2 - 0.5 * s * s * beta1 * beta1;
    const double c6 = s * beta3 - s * s * beta1 * beta2 + s * s * s * beta1 * beta1 * beta1 / 6.0;
    const double m2 = s * beta1;
    const double m4 = s * beta2 + 0.5 * s * s * beta1 * beta1;
    const double m6 = s * beta3 + s * s * beta1 * beta2 + s * s * s * beta1 * beta1 * beta1 / 6.0;
    const double e2 = eps * eps;
    const double rbar = std::max(
        0.0, std::expm1(-s * std::log(sincfun::sinc(eps))) - (m2 + (m4 + m6 * e2) * e2) * e2);
    SeriesPart out;
    out.value = c2 * std::pow(eps, 2.0 - p) / (2.0 - p) + c4 * std::pow(eps, 4.0 - p) / (4.0 - p) +
                c6 * std::pow(eps, 6.0 - p) / (6.0 - p);
    out.err = rbar * std::pow(eps, -p) / (8.0 - p);
    return out;
}

}  // namespace

QuadratureResult sinc_power_moment(double p, double s, const Accuracy& acc) {
    acc.validate();
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("sinc_power_moment: 0 < p < 1");
    if (!(s >= 1.0)) throw std::domain_error("sinc_power_moment: s >= 1");
    const double kp = specfun::kappa(p);
    const double scale = kp * std::pow(s, -0.5 * p);
    const double jtol = acc.abs_tol / scale;

    double eps = 0.35;
    SeriesPart ser = small_u_series_one_minus_fs(p, s, eps);
    while (ser.err > 0.25 * jtol && eps > 1e-3) {
        eps *= 0.7;
        ser = small_u_series_one_minus_fs(p, s, eps);
    }

    const int K = 12;
    const double T = K * pi;
    auto f_mid = [&](double u) {
        return (1.0 - std::pow(sincfun::sinc_abs(u), s)) * std::pow(u, -1.0 - p);
    };
    std::vector<double> splits;
    for (double x = 0.5 * pi; x < T; x += 0.5 * pi) splits.push_back(x);
    const QuadratureResult mid = quadrature::integrate(f_mid, eps, T, {0.5 * jtol, acc.max_terms}, splits);

    double tail_err = 0.0;
    const double tail_f = quadrature::sin_power_tail(s, s + 1.0 + p, K, &tail_err);
    const double value = scale * (ser.value + mid.value + std::pow(T, -p) / p - tail_f);
    const double err = scale * (ser.err + mid.err_bound + tail_err);
    return {value, err, mid.blocks_used};
}

double gaussian_limit_moment(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gaussian_limit_moment: 0 < p < 1");
    return specfun::gaussian_abs_moment(p) * std::pow(3.0, -0.5 * p);
}

QuadratureResult gaussian_limit_moment_quad(double p, const Accuracy& acc) {
    acc.validate();
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gaussian_limit_moment_quad: 0 < p < 1");
    const double kp = specfun::kappa(p);
    const double jtol = acc.abs_tol / kp;
    // 1 - e^{-u^2/6}: signed coefficients 1/6, -1/72, 1/1296 and exp majorant
    const double eps = 0.25;
    const double e2 = eps * eps;
    const double rbar = std::max(
        0.0, std::expm1(e2 / 6.0) - (1.0 / 6.0 + (1.0 / 72.0 + e2 / 1296.0) * e2) * e2);
    const double series = std::pow(eps, 2.0 - p) / (6.0 * (2.0 - p)) -
                          std::pow(eps, 4.0 - p) / (72.0 * (4.0 - p)) +
                          std::pow(eps, 6.0 - p) / (1296.0 * (6.0 - p));
    const double series_err = rbar * std::pow(eps, -p) / (8.0 - p);
    const double T = 14.0;
    const QuadratureResult mid = quadrature::integrate(
        [&](double u) { return -std::expm1(-u * u / 6.0) * std::pow(u, -1.0 - p); }, eps, T,
        {0.5 * jtol, acc.max_terms});
    const double tail = std::pow(T, -p) / p - quadrature::gaussian_tail(1.0 / 6.0, 1.0 + p, T);
    const double value = kp * (series + mid.value + tail);
    return {value, kp * (series_err + mid.err_bound) + 1e-14, mid.blocks_used};
}

QuadratureResult gauss_sinc_gap(double p, double s, const Accuracy& acc) {
    acc.validate();
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gauss_sinc_gap: 0 < p < 1");
    if (!(s >= 1.0)) throw std::domain_error("gauss_sinc_gap: s >= 1");
    const double tol = acc.abs_tol;

    // near zero g^s - f^s ~ s beta2 u^4 e^{-s u^2/6}; keep the first term and
    // bound the rest through the positive majorant W2(u) <= W2(eps) (u/eps)^4
    double eps = 0.1;
    double lead = 0.0, eps_err = 0.0;
    for (;;) {
        const double w2eps = -std::log(sincfun::sinc(eps)) - eps * eps / 6.0;
        lead = s * beta2 * std::pow(eps, 4.0 - p) / (4.0 - p);
        const double term_rest =
            s * (w2eps - beta2 * std::pow(eps, 4.0)) * std::pow(eps, -p) / (6.0 - p);
        const double term_quad = 0.5 * s * s * w2eps * w2eps * std::pow(eps, -p) / (8.0 - p);
        const double term_pref = s * s * beta2 / 6.0 * std::pow(eps, 6.0 - p) / (6.0 - p);
        eps_err = std::max(term_rest, 0.0) + term_quad + term_pref;
        if (eps_err <= 0.125 * tol || eps < 1e-4) break;
        eps *= 0.7;
    }

    const int K = 12;
    const double T = K * pi;
    auto f_mid = [&](double u) {
        return (std::exp(-s * u * u / 6.0) - std::pow(sincfun::sinc_abs(u), s)) *
               std::pow(u, -1.0 - p);
    };
    std::vector<double> splits;
    for (double x = 0.5 * pi; x < T; x += 0.5 * pi) splits.push_back(x);
    const QuadratureResult mid =
        quadrature::integrate(f_mid, eps, T, {0.5 * tol, acc.max_terms}, splits);

    double tail_err = 0.0;
    const double tail_f = quadrature::sin_power_tail(s, s + 1.0 + p, K, &tail_err);
    const double tail_g = quadrature::gaussian_tail(s / 6.0, 1.0 + p, T);
    const double value = lead + mid.value + tail_g - tail_f;
    const double err = eps_err + mid.err_bound + tail_err + 1e-14;
    return {value, err, mid.blocks_used};
}

GapDerivativeBounds gap_p_derivative_bounds(double p) {
    if (!(p > 0.6 && p < 1.0)) throw std::domain_error("gap_p_derivative_bounds: 0.6 < p < 1");
    GapDerivativeBounds out;
    const double t0 = out.t0;
    auto g = [](double t) { return std::exp(-t * t / 6.0); };
    auto f = [](double t) { return sincfun::sinc_abs(t); };

    // piece 1: int_1^t0 (-log t)(g - f) / t^2
    out.piece_below_t0 = quadrature::integrate(
                             [&](double t) { return -std::log(t) * (g(t) - f(t)) / (t * t); },
                             1.0, t0, {1e-11, 20000})
                             .value;

    // piece 2: chord-of-log weighted sinc blocks on (t0, 6 pi)
    auto ell = [](int k, double t) {
        return ((k + 1) * pi - t) / pi * std::log(k * pi) + (t - k * pi) / pi * std::log((k + 1) * pi);
    };
    double p2 = quadrature::integrate(
                    [&](double t) { return ell(1, t) * (-std::sin(t)) / (t * t * t); }, t0,
                    2.0 * pi, {1e-11, 20000})
                    .value;
    for (int k = 2; k <= 5; ++k) {
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        p2 += quadrature::integrate(
                  [&](double t) { return ell(k, t) * sgn * std::sin(t) / (t * t * t); }, k * pi,
                  (k + 1) * pi, {1e-11, 20000})
                  .value;
    }
    out.piece_sinc_tail = p2;

    // piece 3: 0.6132 int_t0^inf e^{-t^2/6} / t dt = -0.6132 Ei(-t0^2/6) / 2
    out.piece_gauss_tail = 0.6132 * (-0.5) * specfun::expint_neg(t0 * t0 / 6.0);

    out.net_lower_bound = 0.0013 * std::pow(t0, 1.0 - p);

    // direct quadrature of int_0^inf (-log t)(g - f) t^{-p-1} dt; the part
    // below 1e-4 is O(eps^{4-p} log eps / 180) and ignored
    const double eps = 1e-4;
    const int K = 14;
    const double T = K * pi;
    std::vector<double> splits;
    for (double x = 0.5 * pi; x < T; x += 0.5 * pi) splits.push_back(x);
    const QuadratureResult mid = quadrature::integrate(
        [&](double t) { return -std::log(t) * (g(t) - f(t)) * std::pow(t, -1.0 - p); }, eps, T,
        {1e-10, 40000}, splits);

    // tail: the gaussian part is ~e^{-T^2/6} ~ 0 at T = 14 pi; the sinc part
    // int_T^inf (log t) |sin t| t^{-2-p} dt folds to
    // int_0^pi sin v * (-d/dq)[pi^{-q} zeta(q, K + v/pi)] dv at q = 2 + p
    const double q = 2.0 + p;
    auto log_weighted_sum = [&](double v) {
        const double h = 1e-5;
        auto Fq = [&](double qq) {
            return std::pow(pi, -qq) * specfun::hurwitz_zeta(qq, K + v / pi);
        };
        return -(Fq(q + h) - Fq(q - h)) / (2.0 * h);
    };
    const double tail_f_log =
        quadrature::integrate([&](double v) { return std::sin(v) * log_weighted_sum(v); }, 0.0,
                              pi, {1e-11, 4000})
            .value;
    out.direct_value = mid.value + tail_f_log;
    return out;
}

double derivative_ratio_bound(double p, int m) {
    if (m < 1 || m > 29) throw std::domain_error("derivative_ratio_bound: 1 <= m <= 29");
    if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("derivative_ratio_bound: 0 < p <= 1");
    const double L = std::log(pi * (m + 1.5));
    const double Bm = 20.0 * L / (11.0 * pi * (m + 1.5));
    const double b0 = std::sqrt(6.0 * L / (pi * pi));
    double sum = std::pow(b0, p);
    for (int k = 1; k <= m; ++k) sum += 2.0 * std::pow(b0 / (k + 1), p);
    return Bm * sum;
}

double derivative_ratio_bound_dp1(int m) {
    if (m < 1 || m > 29) throw std::domain_error("derivative_ratio_bound_dp1: 1 <= m <= 29");
    const double L = std::log(pi * (m + 1.5));
    const double Bm = 20.0 * L / (11.0 * pi * (m + 1.5));
    const double b0 = std::sqrt(6.0 * L / (pi * pi));
    double sum = b0 * std::log(b0);
    for (int k = 1; k <= m; ++k) {
        const double bk = b0 / (k + 1);
        sum += 2.0 * bk * std::log(bk);
    }
    return Bm * sum;
}

namespace {

// Table 1 of tabulated lower bounds, m = 1..29.
constexpr double table1_neg_deriv[29] = {0.24, 0.44, 0.58, 0.70, 0.79, 0.86, 0.91, 0.96,
                                         0.99, 1.02, 1.05, 1.07, 1.08, 1.10, 1.11, 1.12,
                                         1.13, 1.13, 1.14, 1.14, 1.14, 1.14, 1.15, 1.15,
                                         1.15, 1.15, 1.15, 1.15, 1.14};
constexpr double table1_value[29] = {1.06, 1.27, 1.36, 1.40, 1.41, 1.41, 1.40, 1.38,
                                     1.36, 1.34, 1.32, 1.29, 1.27, 1.25, 1.23, 1.21,
                                     1.19, 1.17, 1.15, 1.14, 1.12, 1.10, 1.09, 1.07,
                                     1.06, 1.04, 1.03, 1.02, 1.00};

}  // namespace

VerificationReport table1_check() {
    double min_margin = std::numeric_limits<double>::infinity();
    nlohmann::json witness;
    auto feed = [&](double margin, int m, const char* what) {
        if (margin < min_margin) {
            min_margin = margin;
            witness = {{"m", m}, {"quantity", what}};
        }
    };
    for (int m = 1; m <= 29; ++m) {
        feed(derivative_ratio_bound(1.0, m) - table1_value[m - 1], m, "u_m(1)");
        feed(-derivative_ratio_bound_dp1(m) - table1_neg_deriv[m - 1], m, "-u_m'(1)");
        for (double p = 0.01; p < 1.0; p += 0.01)
            feed(derivative_ratio_bound(p, m) - 1.0, m, "u_m(p) - 1");
        // convexity of u_m in p: nonnegative second differences
        const double h = 0.01;
        for (double p = 0.05; p <= 0.95; p += 0.05) {
            const double d2 = derivative_ratio_bound(p + h, m) - 2.0 * derivative_ratio_bound(p, m) +
                              derivative_ratio_bound(p - h, m);
            feed(d2 + 1e-12, m, "u_m convexity");
        }
    }
    return finish_report("table1", {{"m", "1..29"}, {"p_step", 0.01}}, min_margin, witness, 1e-12);
}

double sublevel_gap_envelope(double y, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("sublevel_gap_envelope: 0 < p < 1");
    if (!(y > 0.0 && y < 1.0 / (30.0 * pi)))
        throw std::domain_error("sublevel_gap_envelope: 0 < y < 1/(30 pi)");
    const double alpha = 2.0 * std::pow(pi, 1.0 - p) * (3.0 - 1.0 / (1.0 - p) + 1.5 / p);
    const double beta = 2.0 / (1.0 - p) + std::pow(1.05, p) / p;
    const double gamma_c = 3.0 * pi / p;
    const double delta = std::pow(30.0 * pi / (6.0 * std::log(30.0 * pi)), 0.5 * p) / p;
    return delta * std::pow(y, 0.5 * p - 1.0) + gamma_c * std::pow(y, p) -
           beta * std::pow(y, p - 1.0) - alpha;
}

std::vector<VerificationReport> envelope_checks() {
    std::vector<VerificationReport> out;
    const double ymax = 1.0 / (30.0 * pi);
    {
        double mm = std::numeric_limits<double>::infinity();
        nlohmann::json wit;
        for (double p = 1e-3; p < 1.0; p += 1e-3)
            for (double y = ymax * 1e-6; y < ymax; y *= 1.25) {
                const double h = sublevel_gap_envelope(y, p);
                if (h < mm) {
                    mm = h;
                    wit = {{"p", p}, {"y", y}};
                }
            }
        out.push_back(finish_report("envelope_positive",
                                    {{"p_step", 1e-3}, {"y", "log grid"}}, mm, wit));
    }
    {
        // h_p'(y) < 0 via y^{2-p/2} h' = -(1-p/2) delta + p gamma y^{p/2+1} + (1-p) beta y^{p/2}
        double mm = std::numeric_limits<double>::infinity();
        nlohmann::json wit;
        for (double p = 1e-3; p < 1.0; p += 1e-3) {
            const double beta = 2.0 / (1.0 - p) + std::pow(1.05, p) / p;
            const double gamma_c = 3.0 * pi / p;
            const double delta = std::pow(30.0 * pi / (6.0 * std::log(30.0 * pi)), 0.5 * p) / p;
            // increasing in y, so the boundary value decides
            const double v = (1.0 - 0.5 * p) * delta - p * gamma_c * std::pow(ymax, 0.5 * p + 1.0) -
                             (1.0 - p) * beta * std::pow(ymax, 0.5 * p);
            if (v < mm) {
                mm = v;
                wit = {{"p", p}, {"y", ymax}};
            }
        }
        out.push_back(finish_report("envelope_decreasing", {{"p_step", 1e-3}}, mm, wit));
    }
    {
        double mm = std::numeric_limits<double>::infinity();
        nlohmann::json wit;
        for (double p = 1e-3; p < 1.0; p += 1e-3) {
            const double v = sublevel_gap_envelope(ymax * (1.0 - 1e-12), p);
            if (v < mm) {
                mm = v;
                wit = {{"p", p}};
            }
        }
        out.push_back(finish_report("envelope_boundary", {{"p_step", 1e-3}}, mm, wit));
    }
    return out;
}

std::vector<VerificationReport> gamma_ratio_bound_checks() {
    std::vector<VerificationReport> out;
    {
        double mm = std::numeric_limits<double>::infinity();
        nlohmann::json wit;
        for (double p = 1e-3; p < 0.69; p += 1e-3) {
            const double margin =
                1.0 / (2.0 - std::pow(1.5, 0.5 * p)) - specfun::gauss_moment_ratio(p);
            if (margin < mm) {
                mm = margin;
                wit = {{"p", p}};
            }
        }
        out.push_back(finish_report("gamma_ratio_small_p", {{"p_step", 1e-3}, {"hi", 0.69}}, mm, wit));
    }
    {
        double mm = std::numeric_limits<double>::infinity();
        nlohmann::json wit;
        for (double p = 1e-3; p < 1.0; p += 1e-3) {
            const double margin =
                1.0 + p * (1.0 + p) / 6.0 - specfun::gauss_moment_ratio(p);
            if (margin < mm) {
                mm = margin;
                wit = {{"p", p}};
            }
        }
        out.push_back(finish_report("gamma_ratio_all_p", {{"p_step", 1e-3}}, mm, wit));
    }
    {
        // f(0.69) < -0.0001 for f = log(2 - (3/2)^{p/2}) + log psi(p)
        const double f069 = std::log(2.0 - std::pow(1.5, 0.5 * 0.69)) +
                            std::log(specfun::gauss_moment_ratio(0.69));
        out.push_back(finish_report("gamma_ratio_boundary_margin", {{"p", 0.69}},
                                    -0.0001 - f069, {{"f(0.69)", f069}}));
    }
    {
        // 2^{p+1} > (p+2)(1 + p(p+1)/6) strictly inside (0,1), equality at ends
        double mm = std::numeric_limits<double>::infinity();
        nlohmann::json wit;
        for (double p = 1e-3; p < 1.0; p += 1e-3) {
            const double margin =
                std::pow(2.0, p + 1.0) - (p + 2.0) * (1.0 + p * (p + 1.0) / 6.0);
            if (margin < mm) {
                mm = margin;
                wit = {{"p", p}};
            }
        }
        out.push_back(finish_report("claim_a_polynomial", {{"p_step", 1e-3}}, mm, wit));
    }
    return out;
}

std::vector<VerificationReport> claim_a_checks(int grid_points) {
    std::vector<VerificationReport> out;
    double worst_dev = 0.0, min_h = std::numeric_limits<double>::infinity();
    nlohmann::json wit_dev, wit_h;
    for (int i = 0; i < grid_points; ++i) {
        const double p = (i + 0.5) / grid_points;
        const QuadratureResult h = gauss_sinc_gap(p, 2.0, {1e-10, 40000});
        const double closed = std::pow(2.0, p + 1.0) / ((p + 1.0) * (p + 2.0)) -
                              std::pow(4.0 / 3.0, 0.5 * p) * specfun::gamma(0.5 * (1.0 + p)) /
                                  std::sqrt(pi);
        const double dev = std::abs(specfun::kappa(p) * h.value - closed);
        if (dev > worst_dev) {
            worst_dev = dev;
            wit_dev = {{"p", p}, {"deviation", dev}};
        }
        if (h.value < min_h) {
            min_h = h.value;
            wit_h = {{"p", p}};
        }
    }
    out.push_back(finish_report("claim_a_identity", {{"points", grid_points}},
                                1e-7 - worst_dev, wit_dev));
    out.push_back(finish_report("claim_a_nonneg", {{"points", grid_points}}, min_h, wit_h, 1e-9));
    return out;
}

std::vector<VerificationReport> claim_b_checks() {
    std::vector<VerificationReport> out;
    const double p = 0.6;

    // the three pieces of H(0.6, 1)
    const QuadratureResult head = quadrature::integrate(
        [&](double t) {
            return (std::exp(-t * t / 6.0) - sincfun::sinc(t)) * std::pow(t, -1.6);
        },
        1e-8, pi, {1e-9, 40000});
    const double head_val = head.value;  // near-zero part below 1e-8 is ~1e-13

    quadrature::PiBlockIntegrand gauss_tail_i;
    gauss_tail_i.kind = quadrature::PiBlockIntegrand::Kind::gaussian;
    gauss_tail_i.c = 1.0 / 6.0;
    gauss_tail_i.q = 1.6;
    const QuadratureResult gtail = quadrature::integrate_pi_blocks(gauss_tail_i, 1, {1e-9, 2000});

    quadrature::PiBlockIntegrand sinc_tail_i;
    sinc_tail_i.kind = quadrature::PiBlockIntegrand::Kind::sin_power;
    sinc_tail_i.s = 1.0;
    sinc_tail_i.q = 2.6;
    const QuadratureResult stail = quadrature::integrate_pi_blocks(sinc_tail_i, 1, {1e-9, 2000});

    out.push_back(finish_report("claim_b_piece_head", {{"bound", 0.0434}},
                                head_val - 0.0434, {{"value", head_val}}));
    out.push_back(finish_report("claim_b_piece_gauss", {{"bound", 0.0184}},
                                gtail.value - 0.0184, {{"value", gtail.value}}));
    out.push_back(finish_report("claim_b_piece_sinc", {{"bound", 0.0615}},
                                0.0615 - stail.value, {{"value", stail.value}}));

    const QuadratureResult h = gauss_sinc_gap(p, 1.0, {1e-10, 40000});
    out.push_back(finish_report("claim_b_value", {{"p", 0.6}, {"s", 1}},
                                h.value - 0.0003, {{"H(0.6,1)", h.value}}));
    const double sum_pieces = head_val + gtail.value - stail.value;
    out.push_back(finish_report("claim_b_consistency", {{"tol", 1e-6}},
                                1e-6 - std::abs(sum_pieces - h.value),
                                {{"pieces", sum_pieces}, {"direct", h.value}}));

    // derivative route on a p grid
    double mm = std::numeric_limits<double>::infinity();
    nlohmann::json wit;
    for (double pp = 0.62; pp < 1.0; pp += 0.06) {
        const GapDerivativeBounds b = gap_p_derivative_bounds(pp);
        const double net = b.net_lower_bound;
        if (net < mm) {
            mm = net;
            wit = {{"p", pp}, {"net", net}};
        }
        if (b.direct_value - net < mm) {
            mm = b.direct_value - net;
            wit = {{"p", pp}, {"direct_minus_net", b.direct_value - net}};
        }
    }
    out.push_back(finish_report("claim_b_derivative", {{"p", "0.62..0.98"}}, mm, wit));
    // the three fixed piece inequalities with t0 = 3.57
    const GapDerivativeBounds b0 = gap_p_derivative_bounds(0.8);
    out.push_back(finish_report("claim_b_derivative_pieces", {{"t0", 3.57}},
                                std::min({b0.piece_below_t0 + 0.0297,
                                          b0.piece_sinc_tail - 0.0437,
                                          0.0127 - b0.piece_gauss_tail}),
                                {{"piece1", b0.piece_below_t0},
                                 {"piece2", b0.piece_sinc_tail},
                                 {"piece3", b0.piece_gauss_tail}}));
    return out;
}

SignChangeCertificate sign_change_certificate(double p, const GridSpec& grid) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("sign_change_certificate: 0 < p < 1");
    if (grid.points < 2000)
        throw std::domain_error("sign_change_certificate: need at least 2000 grid points");
    SignChangeCertificate cert;
    cert.p = p;
    cert.a_threshold = sincfun::peak_value(30);

    GridSpec g = grid;
    g.log_scale = true;
    const double y1 = sincfun::peak_value(1);
    g.hi = std::min(grid.hi, y1 * (1.0 - 1e-6));
    g.lo = std::max(grid.lo, 1e-8);
    cert.grid_y = make_grid(g);

    cert.signs.resize(cert.grid_y.size());
    int changes = 0;
    std::size_t change_at = 0;
    int prev = 0;
    for (std::size_t i = 0; i < cert.grid_y.size(); ++i) {
        double y = cert.grid_y[i];
        // keep clear of peak values where F has a removable collision
        for (int guard = 0; guard < 3; ++guard) {
            try {
                const double gf =
                    gauss_sublevel_measure(y, p) - sinc_sublevel_measure(y, p);
                cert.signs[i] = gf > 0.0 ? 1 : (gf < 0.0 ? -1 : 0);
                break;
            } catch (const std::domain_error&) {
                y *= 1.0 + 1e-10;
            }
        }
        if (i > 0 && cert.signs[i] != prev && cert.signs[i] != 0) {
            if (prev != 0 && cert.signs[i] != prev) {
                ++changes;
                change_at = i;
            }
        }
        if (cert.signs[i] != 0) prev = cert.signs[i];
    }
    cert.single_change = (changes == 1) && cert.signs.front() > 0 && cert.signs.back() < 0;
    if (changes >= 1) {
        cert.y_star_lo = cert.grid_y[change_at - 1];
        cert.y_star_hi = cert.grid_y[change_at];
        // tighten the bracket by bisection on the sign of G - F
        for (int it = 0; it < 60; ++it) {
            const double mid = std::sqrt(cert.y_star_lo * cert.y_star_hi);
            double gf;
            try {
                gf = gauss_sublevel_measure(mid, p) - sinc_sublevel_measure(mid, p);
            } catch (const std::domain_error&) {
                break;
            }
            if (gf > 0.0)
                cert.y_star_lo = mid;
            else
                cert.y_star_hi = mid;
        }
    }

    // condition (i): u_m(p) > 1 for m = 1..29 backs (G-F)' < 0 on (y_30, y_1)
    cert.condition_i = true;
    for (int m = 1; m <= 29; ++m)
        if (!(derivative_ratio_bound(p, m) > 1.0)) cert.condition_i = false;
    // condition (ii): G > F on the sampled points below y_30
    cert.condition_ii = true;
    for (std::size_t i = 0; i < cert.grid_y.size(); ++i)
        if (cert.grid_y[i] < cert.a_threshold && cert.signs[i] <= 0) cert.condition_ii = false;
    return cert;
}

nlohmann::json certificate_json(const SignChangeCertificate& c) {
    return {{"p", c.p},
            {"y_star_lo", c.y_star_lo},
            {"y_star_hi", c.y_star_hi},
            {"a_threshold", c.a_threshold},
            {"single_change", c.single_change},
            {"condition_i", c.condition_i},
            {"condition_ii", c.condition_ii},
            {"grid_points", c.grid_y.size()}};
}

VerificationReport certificate_report(const SignChangeCertificate& c) {
    VerificationReport r;
    r.lemma_id = "sign_change_p" + std::to_string(c.p);
    r.grid = {{"points", c.grid_y.size()}, {"lo", c.grid_y.front()}, {"hi", c.grid_y.back()}};
    r.pass = c.single_change && c.condition_i && c.condition_ii;
    r.min_margin = r.pass ? 1.0 : -1.0;
    r.witness = certificate_json(c);
    return r;
}

}  // namespace khinchin::npverify
