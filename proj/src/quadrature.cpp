#include "khinchin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "khinchin/specfun.hpp"

namespace khinchin::quadrature {

namespace {

// QUADPACK qk15 nodes and weights on [-1, 1].
constexpr double xgk[8] = {0.991455371120812639206854697526, 0.949107912342758524526189684048,
                           0.864864423359769072789712788641, 0.741531185599394439863864773281,
                           0.586087235467691130294144838259, 0.405845151377397166906606412077,
                           0.207784955007898467600689403773, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008059, 0.063092092629978553290700663189,
                           0.104790010322250183839876322542, 0.140653259715525918745189590510,
                           0.169004726639267902826583426599, 0.190350578064785409913256402421,
                           0.204432940075298892414161999235, 0.209482141084727828012999174892};
constexpr double wg[4] = {0.129484966168869693270611432679, 0.279705391489276667901467771424,
                          0.381830050505118944950369775489, 0.417959183673469387755102040816};

struct Segment {
    double a, b, value, err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * xgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += wgk[i] * fsum;
        if (i % 2 == 1) gauss += wg[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const Accuracy& acc, std::span<const double> splits) {
    acc.validate();
    if (!(a < b)) throw std::domain_error("integrate: requires a < b");

    std::priority_queue<Segment> heap;
    double total = 0.0, total_err = 0.0;
    auto push = [&](double lo, double hi) {
        Segment s = gk15(f, lo, hi);
        total += s.value;
        total_err += s.err;
        heap.push(s);
    };

    double prev = a;
    for (double sp : splits) {
        if (sp > prev && sp < b) {
            push(prev, sp);
            prev = sp;
        }
    }
    push(prev, b);

    int used = static_cast<int>(heap.size());
    const double target = acc.abs_tol / 10.0;  // safety factor applied to the estimate
    while (total_err > target && used < acc.max_terms) {
        Segment worst = heap.top();
        heap.pop();
        total -= worst.value;
        total_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {  // interval exhausted at machine precision
            total += worst.value;
            total_err += worst.err;
            break;
        }
        push(worst.a, mid);
        push(mid, worst.b);
        ++used;
    }
    if (total_err > target)
        throw ToleranceError("integrate: tolerance not met", 10.0 * total_err);
    return {total, std::min(10.0 * total_err, acc.abs_tol), used};
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const Accuracy& acc) {
    return integrate(f, a, b, acc, {});
}

namespace {

// sum_{k >= K} (v + k pi)^{-q} = pi^{-q} zeta(q, K + v/pi)
double folded_zeta(double q, int K, double v, double* err) {
    double e = 0.0;
    const double z = specfun::hurwitz_zeta(q, K + v / pi, &e);
    if (err) *err = e * std::pow(pi, -q);
    return std::pow(pi, -q) * z;
}

// sum_{k >= K} (-1)^k (v + k pi)^{-q}
double folded_zeta_alternating(double q, int K, double v, double* err) {
    const double alpha = K + v / pi;
    double e1 = 0.0, e2 = 0.0;
    const double z = specfun::hurwitz_zeta(q, 0.5 * alpha, &e1) -
                     specfun::hurwitz_zeta(q, 0.5 * (alpha + 1.0), &e2);
    const double scale = std::pow(pi, -q) * std::pow(2.0, -q);
    if (err) *err = (e1 + e2) * scale;
    const double sign = (K % 2 == 0) ? 1.0 : -1.0;
    return sign * scale * z;
}

double fold_integral(double s, double q, int K, bool alternating, double* err) {
    double zeta_err_max = 0.0;
    auto integrand = [&](double v) {
        double ez = 0.0;
        const double inner = alternating ? folded_zeta_alternating(q, K, v, &ez)
                                         : folded_zeta(q, K, v, &ez);
        zeta_err_max = std::max(zeta_err_max, ez);
        return std::pow(std::sin(v), s) * inner;
    };
    const QuadratureResult r = integrate(integrand, 0.0, pi, {1e-13, 4000});
    if (err) *err = r.err_bound + pi * zeta_err_max;
    return r.value;
}

}  // namespace

double sin_power_tail(double s, double q, int from_block, double* err) {
    if (!(q > 1.0) || s < 0.0 || from_block < 1)
        throw std::domain_error("sin_power_tail: requires q > 1, s >= 0, from_block >= 1");
    return fold_integral(s, q, from_block, false, err);
}

double sin_power_tail_alternating(double s, double q, int from_block, double* err) {
    if (!(q > 1.0) || s < 0.0 || from_block < 1)
        throw std::domain_error("sin_power_tail_alternating: bad arguments");
    return fold_integral(s, q, from_block, true, err);
}

double gaussian_tail(double c, double q, double T) {
    if (!(c > 0.0) || !(T > 0.0)) throw std::domain_error("gaussian_tail: bad arguments");
    return 0.5 * std::pow(c, 0.5 * (q - 1.0)) *
           specfun::upper_incomplete_gamma(0.5 * (1.0 - q), c * T * T);
}

double power_product_tail(std::span<const double> w, double q, double T) {
    if (!(q > 1.0) || !(T > 0.0)) throw std::domain_error("power_product_tail: bad arguments");
    std::vector<double> thresholds;  // 1/w_j beyond T
    double coef = 1.0;
    int active = 0;
    for (double wj : w) {
        if (!(wj > 0.0)) throw std::domain_error("power_product_tail: weights must be > 0");
        const double tau = 1.0 / wj;
        if (tau <= T) {
            coef /= wj;
            ++active;
        } else {
            thresholds.push_back(tau);
        }
    }
    std::sort(thresholds.begin(), thresholds.end());
    double total = 0.0;
    double lo = T;
    auto segment = [&](double a, double b, double cf, int r) {
        const double e = q + r - 1.0;
        const double upper = std::isinf(b) ? 0.0 : std::pow(b, -e);
        return cf * (std::pow(a, -e) - upper) / e;
    };
    for (double tau : thresholds) {
        total += segment(lo, tau, coef, active);
        coef *= tau;  // = coef / w_j
        ++active;
        lo = tau;
    }
    total += segment(lo, std::numeric_limits<double>::infinity(), coef, active);
    return total;
}

QuadratureResult integrate_pi_blocks(const PiBlockIntegrand& f, int from_block,
                                     const Accuracy& acc) {
    acc.validate();
    if (from_block < 1) throw std::domain_error("integrate_pi_blocks: from_block >= 1");

    auto block_fn = [&](double t) {
        double v;
        if (f.kind == PiBlockIntegrand::Kind::sin_power)
            v = std::pow(std::abs(std::sin(t)), f.s) * std::pow(t, -f.q);
        else
            v = std::exp(-f.c * t * t) * std::pow(t, -f.q);
        if (f.weight) v *= f.weight(t);
        return v;
    };

    double value = 0.0, err = 0.0;
    int k = from_block;
    int blocks = 0;
    const int max_blocks = std::max(acc.max_terms, 16);

    if (f.kind == PiBlockIntegrand::Kind::gaussian) {
        // sum blocks until the closed-form envelope tail is below tolerance
        for (;; ++k, ++blocks) {
            const double T = k * pi;
            const double tail_bound = f.weight_tail_sup * gaussian_tail(f.c, f.q, T);
            if (tail_bound <= 0.5 * acc.abs_tol || blocks >= max_blocks) {
                if (!f.weight) {  // tail evaluated exactly, not just bounded
                    value += gaussian_tail(f.c, f.q, T);
                    err += 1e-14 * std::abs(value) + 1e-16;
                } else {
                    err += tail_bound;
                }
                break;
            }
            const QuadratureResult r =
                integrate(block_fn, T, T + pi, {0.25 * acc.abs_tol / (blocks + 4), 2000});
            value += r.value;
            err += r.err_bound;
        }
        if (err > acc.abs_tol)
            throw ToleranceError("integrate_pi_blocks: tail bound failure", err);
        return {value, err, std::max(blocks, 1)};
    }

    // sin_power kind
    if (!f.weight) {
        double tail_err = 0.0;
        const double tail = f.alternating
                                ? sin_power_tail_alternating(f.s, f.q, from_block, &tail_err)
                                : sin_power_tail(f.s, f.q, from_block, &tail_err);
        return {tail, tail_err, 1};
    }
    // weighted: sum blocks, stop on alternating bracket or monotone envelope bound
    double last_block = 0.0;
    for (;; ++k, ++blocks) {
        const double T = k * pi;
        double tail_bound;
        if (f.alternating) {
            tail_bound = std::abs(last_block);  // partial sums bracket the limit
        } else {
            double te = 0.0;
            tail_bound = f.weight_tail_sup * (sin_power_tail(f.s, f.q, k, &te) + te);
        }
        if ((blocks > 0 && tail_bound <= 0.5 * acc.abs_tol)) {
            err += tail_bound;
            break;
        }
        if (blocks >= max_blocks)
            throw ToleranceError("integrate_pi_blocks: tail bound failure", tail_bound);
        const QuadratureResult r =
            integrate(block_fn, T, T + pi, {0.25 * acc.abs_tol / (blocks + 4), 2000});
        double signed_value = r.value;
        if (f.alternating && (k % 2 == 1)) signed_value = -signed_value;
        value += signed_value;
        last_block = signed_value;
        err += r.err_bound;
    }
    if (err > acc.abs_tol) throw ToleranceError("integrate_pi_blocks: tolerance not met", err);
    return {value, err, std::max(blocks, 1)};
}

}  // namespace khinchin::quadrature
