#include "khinchin/sincfun.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

namespace khinchin::sincfun {

double sinc(double t) {
    if (std::abs(t) < 1e-4) {
        const double t2 = t * t;
        return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0);
    }
    return std::sin(t) / t;
}

double sinc_abs(double t) {
    if (!(t > 0.0)) throw std::domain_error("sinc_abs: requires t > 0");
    return std::abs(std::sin(t)) / t;
}

namespace {

// t cos t - sin t is strictly monotone on each (k pi, (k+1) pi) and vanishes
// exactly at the extremum of sin t / t there.
double extremum_in_block(int k) {
    auto g = [](double t) { return t * std::cos(t) - std::sin(t); };
    double lo = k * pi, hi = (k + 1) * pi;
    double glo = g(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<SincExtremum>& peak_cache() {
    static std::vector<SincExtremum> cache{{0, 0.0, 1.0}};
    return cache;
}
std::mutex peak_mutex;

SincExtremum peak(int k) {
    std::lock_guard<std::mutex> lock(peak_mutex);
    auto& cache = peak_cache();
    while (static_cast<int>(cache.size()) <= k) {
        const int j = static_cast<int>(cache.size());
        const double t = extremum_in_block(j);
        cache.push_back({j, t, sinc_abs(t)});
    }
    return cache[static_cast<std::size_t>(k)];
}

}  // namespace

SincExtremum local_max(int k) {
    if (k < 1) throw std::domain_error("local_max: requires k >= 1");
    return peak(k);
}

double peak_value(int k) {
    if (k < 0) throw std::domain_error("peak_value: requires k >= 0");
    return k == 0 ? 1.0 : peak(k).y_k;
}

namespace {

// Bisection for |sin t|/t = y on [lo, hi] where it is monotone.
double bisect_level(double y, double lo, double hi, bool increasing) {
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = sinc_abs(mid);
        const bool go_right = increasing ? (fm < y) : (fm > y);
        if (go_right)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

LevelRoots level_roots(double y, int k) {
    if (k < 0) throw std::domain_error("level_roots: requires k >= 0");
    if (k == 0) {
        if (!(y > 0.0 && y < 1.0))
            throw std::domain_error("level_roots: need 0 < y < 1 for k = 0");
        // sin t / t decreases from 1 to 0 on (0, pi)
        return {y, 0, std::nullopt, bisect_level(y, 1e-300, pi, false)};
    }
    const SincExtremum ex = peak(k);
    if (!(y > 0.0 && y < ex.y_k))
        throw std::domain_error("level_roots: level at or above the block maximum");
    LevelRoots out;
    out.y = y;
    out.k = k;
    out.t_minus = bisect_level(y, k * pi, ex.t_bar, true);
    out.t_plus = bisect_level(y, ex.t_bar, (k + 1) * pi, false);
    return out;
}

const char* lemma_name(LemmaId id) {
    switch (id) {
        case LemmaId::f_below_gaussian: return "f_below_gaussian";
        case LemmaId::derivative_bound: return "derivative_bound";
        case LemmaId::extrema_bounds: return "extrema_bounds";
        case LemmaId::root_lower_bounds: return "root_lower_bounds";
        case LemmaId::inverse_sin_sq: return "inverse_sin_sq";
        case LemmaId::slope_monotone: return "slope_monotone";
        case LemmaId::slope_unimodal: return "slope_unimodal";
    }
    return "unknown";
}

namespace {

nlohmann::json grid_json(const GridSpec& g) {
    return {{"lo", g.lo}, {"hi", g.hi}, {"points", g.points}, {"log", g.log_scale}};
}

struct MarginScan {
    double min_margin = std::numeric_limits<double>::infinity();
    nlohmann::json witness;
    void feed(double margin, double where, const char* what) {
        if (margin < min_margin) {
            min_margin = margin;
            witness = {{"location", where}, {"quantity", what}};
        }
    }
};

}  // namespace

VerificationReport verify_lemma(LemmaId id, const GridSpec& grid) {
    MarginScan scan;
    switch (id) {
        case LemmaId::f_below_gaussian: {
            GridSpec g = grid;
            g.lo = std::max(grid.lo, 1e-9);
            g.hi = std::min(grid.hi, pi - 1e-12);
            for (double t : make_grid(g))
                scan.feed(std::exp(-t * t / 6.0) - sinc(t), t, "e^{-t^2/6} - sin t/t");
            break;
        }
        case LemmaId::derivative_bound: {
            // observed sup is about 1.0632, below 1.07 < 11/10; for t > 100 the
            // bound |cos t - sinc t| <= 1 + 1/t < 1.07 holds analytically
            GridSpec g = grid;
            g.lo = std::max(grid.lo, 1e-9);
            for (double t : make_grid(g))
                scan.feed(1.07 - std::abs(std::cos(t) - sinc(t)), t, "1.07 - |cos t - sinc t|");
            break;
        }
        case LemmaId::extrema_bounds: {
            const int kmax = std::max(2, grid.points);
            for (int k = 1; k <= kmax; ++k) {
                const double yk = peak_value(k);
                scan.feed(yk - 1.0 / ((k + 0.5) * pi), static_cast<double>(k),
                          "y_k - 1/((k+1/2)pi)");
                scan.feed(1.0 / (k * pi) - yk, static_cast<double>(k), "1/(k pi) - y_k");
            }
            scan.feed(std::exp(-1.5) - peak_value(1), 1.0, "e^{-3/2} - y_1");
            break;
        }
        case LemmaId::root_lower_bounds: {
            GridSpec g = grid;
            g.lo = std::max(grid.lo, 1e-12);
            g.hi = std::min(grid.hi, 1.0 / (30.0 * pi) * (1.0 - 1e-12));
            g.log_scale = true;
            for (double y : make_grid(g)) {
                scan.feed(level_roots(y, 0).t_plus - 0.98 * pi, y, "t_0 - 0.98 pi");
                scan.feed(level_roots(y, 1).t_plus - 1.97 * pi, y, "t_1 - 1.97 pi");
            }
            break;
        }
        case LemmaId::inverse_sin_sq: {
            // scan the bounded form 1 - sin^2 x (1/x^2 + 1/(pi-x)^2) > 0
            GridSpec g = grid;
            g.lo = std::max(grid.lo, 1e-9);
            g.hi = std::min(grid.hi, pi - 1e-9);
            for (double x : make_grid(g)) {
                const double s = std::sin(x);
                scan.feed(1.0 - s * s * (1.0 / (x * x) + 1.0 / ((pi - x) * (pi - x))), x,
                          "1 - sin^2 x (1/x^2 + 1/(pi-x)^2)");
            }
            break;
        }
        case LemmaId::slope_monotone: {
            const int kmax = 20;
            for (int k = 1; k <= kmax; ++k) {
                GridSpec g{(k - 1) * pi + 1e-9, k * pi - 1e-9, grid.points, false};
                double prev = std::numeric_limits<double>::infinity();
                for (double t : make_grid(g)) {
                    const double v = std::abs(std::sin(t)) / (t * (t - (k - 1) * pi));
                    scan.feed(prev - v, t, "nonincreasing slope ratio");
                    prev = v;
                }
            }
            break;
        }
        case LemmaId::slope_unimodal: {
            const int kmax = 20;
            for (int k = 1; k <= kmax; ++k) {
                GridSpec g{(k - 1) * pi + 1e-9, k * pi - 1e-9, grid.points, false};
                // sign pattern of increments must be +...+ then -...-
                double prev = 0.0;
                bool first = true, decreasing = false;
                for (double t : make_grid(g)) {
                    const double v = std::abs(std::sin(t)) / (t * (k * pi - t));
                    if (!first) {
                        const double d = v - prev;
                        if (!decreasing && d < 0.0) decreasing = true;
                        // once decreasing, must stay decreasing
                        scan.feed(decreasing ? prev - v : v - prev, t, "unimodal increments");
                    }
                    prev = v;
                    first = false;
                }
            }
            break;
        }
    }
    return finish_report(lemma_name(id), grid_json(grid), scan.min_margin, scan.witness, 1e-12);
}

}  // namespace khinchin::sincfun
