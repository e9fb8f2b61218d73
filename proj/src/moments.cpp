#include "khinchin/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "khinchin/parallel.hpp"
#include "khinchin/sincfun.hpp"
#include "khinchin/specfun.hpp"

namespace khinchin::moments {

Weights::Weights(std::vector<double> a) : a_(std::move(a)) {
    if (a_.empty()) throw std::domain_error("Weights: empty weight vector");
    double ss = 0.0;
    for (double& x : a_) {
        if (x == 0.0 || !std::isfinite(x)) throw std::domain_error("Weights: entries must be nonzero finite");
        x = std::abs(x);
        ss += x * x;
    }
    const double inv = 1.0 / std::sqrt(ss);
    for (double& x : a_) x *= inv;
    std::sort(a_.begin(), a_.end(), std::greater<double>());
}

double Weights::sum() const {
    double s = 0.0;
    for (double x : a_) s += x;
    return s;
}

double Weights::power_sum(int m) const {
    double s = 0.0;
    for (double x : a_) s += std::pow(x, m);
    return s;
}

namespace {

// Taylor shift in place: coefficients of P(v) become those of P(u + delta).
void poly_shift(std::vector<double>& c, double delta) {
    const int d = static_cast<int>(c.size()) - 1;
    for (int i = 0; i <= d; ++i)
        for (int j = d - 1; j >= i; --j) c[static_cast<std::size_t>(j)] += delta * c[static_cast<std::size_t>(j + 1)];
}

double poly_eval(const std::vector<double>& c, double u) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * u + c[i];
    return v;
}

// int_0^u of the piece polynomial (local antiderivative without constant)
double poly_antider_eval(const std::vector<double>& c, double u) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * u + c[i] / (static_cast<double>(i) + 1.0);
    return v * u;
}

constexpr std::size_t piece_cap = std::size_t{1} << 21;

}  // namespace

double PiecewisePolyDensity::eval(double x) const {
    if (x <= breakpoints.front() || x >= breakpoints.back()) return 0.0;
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    std::size_t i = static_cast<std::size_t>(it - breakpoints.begin());
    if (i == 0) i = 1;
    i = std::min(i - 1, pieces.size() - 1);
    const double mid = 0.5 * (breakpoints[i] + breakpoints[i + 1]);
    return poly_eval(pieces[i], x - mid);
}

double PiecewisePolyDensity::piece_integral(std::size_t i) const {
    const double h = 0.5 * (breakpoints[i + 1] - breakpoints[i]);
    return poly_antider_eval(pieces[i], h) - poly_antider_eval(pieces[i], -h);
}

double PiecewisePolyDensity::mass() const {
    double m = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) m += piece_integral(i);
    return m;
}

PiecewisePolyDensity density(const Weights& w) {
    const auto& a = w.values();
    PiecewisePolyDensity d;
    d.n_summands = w.size();
    d.breakpoints = {-a[0], a[0]};
    d.pieces = {{0.5 / a[0]}};

    const double span = 2.0 * w.sum();
    const double tol = 1e-14 * std::max(1.0, span);

    for (std::size_t step = 1; step < a.size(); ++step) {
        const double aj = a[step];
        // merged breakpoints of the convolved density
        std::vector<double> nb;
        nb.reserve(2 * d.breakpoints.size());
        for (double b : d.breakpoints) nb.push_back(b - aj);
        for (double b : d.breakpoints) nb.push_back(b + aj);
        std::sort(nb.begin(), nb.end());
        std::vector<double> merged;
        merged.reserve(nb.size());
        for (double b : nb)
            if (merged.empty() || b - merged.back() > tol) merged.push_back(b);
        if (merged.size() - 1 > piece_cap)
            throw std::length_error("density: piece count guard exceeded");

        // antiderivative of the current density: per-piece polys plus offsets
        const std::size_t m = d.pieces.size();
        std::vector<std::vector<double>> anti(m);
        std::vector<double> offset(m + 1, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const auto& c = d.pieces[i];
            const double h2 = 0.5 * (d.breakpoints[i + 1] - d.breakpoints[i]);
            std::vector<double> A(c.size() + 1, 0.0);
            for (std::size_t k = 0; k < c.size(); ++k) A[k + 1] = c[k] / (static_cast<double>(k) + 1.0);
            A[0] = offset[i] - poly_antider_eval(c, -h2);
            anti[i] = std::move(A);
            offset[i + 1] = offset[i] + d.piece_integral(i);
        }
        const double total = offset[m];
        const double old_lo = d.breakpoints.front(), old_hi = d.breakpoints.back();

        // F(x) as a polynomial of the new piece's local coordinate
        auto antider_poly = [&](double x_center, std::size_t ncoef) {
            std::vector<double> out(ncoef, 0.0);
            if (x_center <= old_lo + tol) return out;  // F == 0
            if (x_center >= old_hi - tol) {
                out[0] = total;  // F == total mass
                return out;
            }
            const auto it = std::upper_bound(d.breakpoints.begin(), d.breakpoints.end(), x_center);
            std::size_t i = static_cast<std::size_t>(it - d.breakpoints.begin());
            i = std::min(std::max<std::size_t>(i, 1) - 1, m - 1);
            std::vector<double> A = anti[i];
            A.resize(ncoef, 0.0);
            poly_shift(A, x_center - 0.5 * (d.breakpoints[i] + d.breakpoints[i + 1]));
            return A;
        };

        std::vector<std::vector<double>> np(merged.size() - 1);
        const std::size_t ncoef = d.pieces[0].size() + 1;  // degree grows by one
        for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
            const double mid = 0.5 * (merged[i] + merged[i + 1]);
            std::vector<double> hiP = antider_poly(mid + aj, ncoef);
            const std::vector<double> loP = antider_poly(mid - aj, ncoef);
            for (std::size_t k = 0; k < hiP.size(); ++k)
                hiP[k] = (hiP[k] - loP[k]) / (2.0 * aj);
            np[i] = std::move(hiP);
        }
        d.breakpoints = std::move(merged);
        d.pieces = std::move(np);
    }

    // f(x) = c (x + sum a_j)^{n-1} exactly on the leftmost piece
    double prod = 1.0;
    for (double x : a) prod *= 2.0 * x;
    double fact = 1.0;
    for (int i = 2; i < w.size(); ++i) fact *= i;
    d.outer_coeff = 1.0 / (prod * fact);
    return d;
}

double moment_closed_pair(double x, double p) {
    if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("moment_closed_pair: requires 0 < x <= 1");
    if (!(p > 0.0)) throw std::domain_error("moment_closed_pair: requires p > 0");
    return (std::pow(1.0 + x, 2.0 + p) - std::pow(1.0 - x, 2.0 + p)) /
           (2.0 * (1.0 + p) * (2.0 + p) * x);
}

namespace {

// |x|^p against the local polynomial, exact once rebased about x = 0:
// int |x|^p sum d_m x^m dx with signed power terms.
double power_piece_closed(const std::vector<double>& c, double mid, double lo, double hi,
                          double p) {
    std::vector<double> d = c;
    poly_shift(d, -mid);  // coefficients about x = 0
    auto one_side = [&](double b) {  // int_0^b x^p q(sgn * x) with b >= 0
        double s = 0.0;
        const double sgn = b < 0.0 ? -1.0 : 1.0;
        const double ab = std::abs(b);
        if (ab == 0.0) return 0.0;
        double sp = 1.0;  // sgn^m
        double bp = std::pow(ab, p + 1.0);
        for (std::size_t m = 0; m < d.size(); ++m) {
            s += d[m] * sp * bp / (p + static_cast<double>(m) + 1.0);
            sp *= sgn;
            bp *= ab;
        }
        return s;
    };
    // J(b) = int_0^b |x|^p q(x) dx as a signed integral
    auto J = [&](double b) { return b >= 0.0 ? one_side(b) : -one_side(b); };
    return J(hi) - J(lo);
}

}  // namespace

quadrature::QuadratureResult moment_density(const PiecewisePolyDensity& d, double p,
                                            const Accuracy& acc) {
    acc.validate();
    if (!(p > -1.0)) throw std::domain_error("moment_density: requires p > -1");
    const std::size_t m = d.pieces.size();
    const double per_piece = acc.abs_tol / static_cast<double>(m + 1);
    double value = 0.0, err = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double lo = d.breakpoints[i], hi = d.breakpoints[i + 1];
        const double mid = 0.5 * (lo + hi), h = hi - lo;
        const bool near_zero = (lo <= 0.0 && hi >= 0.0) || std::abs(lo) <= 2.0 * h ||
                               std::abs(hi) <= 2.0 * h;
        if (near_zero) {
            const double v = power_piece_closed(d.pieces[i], mid, lo, hi, p);
            value += v;
            err += 1e-15 * std::abs(v) + 1e-18;
        } else {
            const auto& c = d.pieces[i];
            const auto r = quadrature::integrate(
                [&](double x) { return std::pow(std::abs(x), p) * poly_eval(c, x - mid); }, lo,
                hi, {per_piece, 4000});
            value += r.value;
            err += r.err_bound;
        }
    }
    return {value, err, static_cast<int>(m)};
}

quadrature::QuadratureResult moment_density(const Weights& w, double p, const Accuracy& acc) {
    return moment_density(density(w), p, acc);
}

namespace {

double sinc_deriv(double x) {
    if (std::abs(x) < 1e-4) return -x / 3.0 + x * x * x / 30.0;
    return std::cos(x) / x - std::sin(x) / (x * x);
}

}  // namespace

quadrature::QuadratureResult moment_fourier(const Weights& w, double p, const Accuracy& acc) {
    acc.validate();
    if (!(p > 0.0 && p < 2.0)) throw std::domain_error("moment_fourier: requires 0 < p < 2");
    const auto& a = w.values();
    const double kp = specfun::kappa(p);
    const double jtol = acc.abs_tol / kp;

    // (0, eps): 1 - prod sinc(a_j t) = 1 - e^{-W}, W = sum beta_m S_{2m} t^{2m}
    constexpr double b1 = 1.0 / 6.0, b2 = 1.0 / 180.0, b3 = 1.0 / 2835.0;
    const double S4 = w.power_sum(4), S6 = w.power_sum(6);
    const double c2 = b1;
    const double c4 = b2 * S4 - 0.5 * b1 * b1;
    const double c6 = b3 * S6 - b1 * b2 * S4 + b1 * b1 * b1 / 6.0;
    const double m2 = b1, m4 = b2 + 0.5 * b1 * b1, m6 = b3 + b1 * b2 + b1 * b1 * b1 / 6.0;
    double eps = 0.35, series_err = 0.0;
    for (;;) {
        const double rbar =
            (1.0 / sincfun::sinc(eps) - 1.0) - (m2 + (m4 + m6 * eps * eps) * eps * eps) * eps * eps;
        series_err = std::max(rbar, 0.0) * std::pow(eps, -p) / (8.0 - p);
        if (series_err <= 0.25 * jtol || eps < 1e-3) break;
        eps *= 0.7;
    }
    const double series_val = c2 * std::pow(eps, 2.0 - p) / (2.0 - p) +
                              c4 * std::pow(eps, 4.0 - p) / (4.0 - p) +
                              c6 * std::pow(eps, 6.0 - p) / (6.0 - p);

    // tail cut T: two integrations by parts against sin(a_1 t); the remainder
    // integral is bounded through |sinc'| <= min(x/3, 1.1/x), |sinc''| <= min(1/3, 3/x)
    const double a1 = a[0];
    std::vector<double> rest(a.begin() + 1, a.end());
    double sigma = 0.0, sq = 0.0;
    for (double r : rest) {
        sigma += r;
        sq += r * r;
    }
    const double d2 = 3.0 * sq + 1.21 * sigma * sigma;
    auto rem_bound = [&](double T) {
        const double ppt4 = quadrature::power_product_tail(rest, 4.0 + p, T);
        const double ppt3 = quadrature::power_product_tail(rest, 3.0 + p, T);
        const double ppt2 = quadrature::power_product_tail(rest, 2.0 + p, T);
        return ((2.0 + p) * (3.0 + p) * ppt4 + 2.2 * (2.0 + p) * sigma * ppt3 + d2 * ppt2) /
               (a1 * a1 * a1);
    };
    double T = std::max(8.0, 2.0 / a1);
    double rem = rem_bound(T);
    for (int it = 0; it < 400 && rem > 0.25 * jtol; ++it) {
        T *= 1.4;
        rem = rem_bound(T);
    }

    // boundary terms of the two integrations by parts
    double P = 1.0, Pd = 0.0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
        const double x = rest[j] * T;
        double term = rest[j] * sinc_deriv(x);
        for (std::size_t i = 0; i < rest.size(); ++i)
            if (i != j) term *= sincfun::sinc(rest[i] * T);
        Pd += term;
        P *= sincfun::sinc(x);
    }
    const double vT = std::pow(T, -2.0 - p) * P / a1;
    const double vdT = (-(2.0 + p) * std::pow(T, -3.0 - p) * P + std::pow(T, -2.0 - p) * Pd) / a1;
    const double tail_osc = std::cos(a1 * T) * vT / a1 - std::sin(a1 * T) * vdT / (a1 * a1);
    const double tail_val = std::pow(T, -p) / p - tail_osc;

    // middle stretch with oscillation-aware initial panels
    std::vector<double> splits;
    for (double x = 0.5 * pi; x < std::min(T, 48.0); x += 0.5 * pi) splits.push_back(x);
    for (double x = std::max(48.0, eps) * 1.17; x < T; x *= 1.17) splits.push_back(x);
    auto f_mid = [&](double t) {
        double prod = 1.0;
        for (double aj : a) prod *= sincfun::sinc(aj * t);
        return (1.0 - prod) * std::pow(t, -1.0 - p);
    };
    const auto mid = quadrature::integrate(f_mid, eps, T, {0.5 * jtol, acc.max_terms}, splits);

    const double value = kp * (series_val + mid.value + tail_val);
    const double err = kp * (series_err + mid.err_bound + rem);
    return {value, std::min(err, acc.abs_tol), mid.blocks_used};
}

double even_moment(const Weights& w, int k) {
    if (k < 1 || k > 30) throw std::domain_error("even_moment: requires 1 <= k <= 30");
    const int M = 2 * k;
    if (static_cast<double>(M) * std::log(std::max(1.0, w.sum())) > 600.0)
        throw std::overflow_error("even_moment: moment would overflow");
    // binomials
    std::vector<std::vector<double>> C(static_cast<std::size_t>(M + 1));
    for (int i = 0; i <= M; ++i) {
        C[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i + 1), 1.0);
        for (int j = 1; j < i; ++j)
            C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                C[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                C[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
    auto single = [M](double aj) {
        std::vector<double> s(static_cast<std::size_t>(M + 1), 0.0);
        double pw = 1.0;
        for (int m = 0; m <= M; ++m) {
            if (m % 2 == 0) s[static_cast<std::size_t>(m)] = pw / (m + 1.0);
            pw *= aj;
        }
        return s;
    };
    std::vector<double> cur = single(w.values()[0]);
    for (int j = 1; j < w.size(); ++j) {
        const std::vector<double> sj = single(w.values()[static_cast<std::size_t>(j)]);
        std::vector<double> nxt(static_cast<std::size_t>(M + 1), 0.0);
        for (int m = 0; m <= M; m += 2) {
            double acc2 = 0.0;
            for (int i = 0; i <= m; i += 2)
                acc2 += C[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] *
                        cur[static_cast<std::size_t>(i)] * sj[static_cast<std::size_t>(m - i)];
            nxt[static_cast<std::size_t>(m)] = acc2;
        }
        cur = std::move(nxt);
    }
    return cur[static_cast<std::size_t>(M)];
}

namespace {

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t coord) {
    const std::uint64_t h = splitmix(splitmix(splitmix(seed) ^ index) + coord);
    return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

MCEstimate moment_mc(const Weights& w, double p, const MCConfig& cfg) {
    if (!(p > 0.0)) throw std::domain_error("moment_mc: requires p > 0");
    if (cfg.samples < 1) throw std::domain_error("moment_mc: requires samples >= 1");
    const std::int64_t chunk = 1 << 16;
    const std::int64_t nchunks = (cfg.samples + chunk - 1) / chunk;
    std::vector<double> s1(static_cast<std::size_t>(nchunks), 0.0),
        s2(static_cast<std::size_t>(nchunks), 0.0);
    const auto& a = w.values();
    parallel_for(static_cast<std::size_t>(nchunks), [&](std::size_t c) {
        const std::int64_t lo = static_cast<std::int64_t>(c) * chunk;
        const std::int64_t hi = std::min(cfg.samples, lo + chunk);
        double t1 = 0.0, t2 = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < a.size(); ++j)
                s += a[j] * counter_uniform(cfg.seed, static_cast<std::uint64_t>(i), j);
            const double v = std::pow(std::abs(s), p);
            t1 += v;
            t2 += v * v;
        }
        s1[c] = t1;
        s2[c] = t2;
    });
    double sum1 = 0.0, sum2 = 0.0;
    for (std::int64_t c = 0; c < nchunks; ++c) {
        sum1 += s1[static_cast<std::size_t>(c)];
        sum2 += s2[static_cast<std::size_t>(c)];
    }
    const double n = static_cast<double>(cfg.samples);
    const double mean = sum1 / n;
    const double var = std::max(0.0, (sum2 - n * mean * mean) / std::max(1.0, n - 1.0));
    return {mean, std::sqrt(var / n)};
}

}  // namespace khinchin::moments
