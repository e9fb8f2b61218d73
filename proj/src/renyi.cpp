#include "khinchin/renyi.hpp"

#include <cmath>
#include <limits>

#include "khinchin/quadrature.hpp"
#include "khinchin/specfun.hpp"

namespace khinchin::renyi {

namespace {

// int over the density of a power (or x log x) of f, piece by piece. The two
// outermost pieces are exactly c u^{n-1} with u the distance to the edge.
template <class PieceInner, class PieceOuter>
double piecewise_sum(const moments::PiecewisePolyDensity& d, const Accuracy& acc,
                     const PieceInner& inner, const PieceOuter& outer) {
    const std::size_t m = d.pieces.size();
    const double per_piece = acc.abs_tol / static_cast<double>(m + 1);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double lo = d.breakpoints[i], hi = d.breakpoints[i + 1];
        if ((i == 0 || i + 1 == m) && d.n_summands >= 2) {
            total += outer(hi - lo);
        } else {
            total += inner(i, lo, hi, per_piece);
        }
    }
    return total;
}

}  // namespace

RenyiValue renyi_entropy(const moments::PiecewisePolyDensity& d, double p, const Accuracy& acc) {
    acc.validate();
    if (!(p > 0.0) || p == 1.0) throw std::domain_error("renyi_entropy: requires p > 0, p != 1");
    const int n = d.n_summands;
    const double c = d.outer_coeff;
    const double integral = piecewise_sum(
        d, acc,
        [&](std::size_t i, double lo, double hi, double tol) {
            const double mid = 0.5 * (lo + hi);
            const auto& piece = d.pieces[i];
            return quadrature::integrate(
                       [&](double x) {
                           double v = 0.0;
                           for (std::size_t k = piece.size(); k-- > 0;) v = v * (x - mid) + piece[k];
                           return std::pow(std::max(v, 0.0), p);
                       },
                       lo, hi, {tol, 8000})
                .value;
        },
        [&](double width) {
            // int_0^w (c u^{n-1})^p du
            const double e = p * (n - 1) + 1.0;
            return std::pow(c, p) * std::pow(width, e) / e;
        });
    return {p, std::log(integral) / (1.0 - p)};
}

double shannon_entropy(const moments::PiecewisePolyDensity& d, const Accuracy& acc) {
    acc.validate();
    const int n = d.n_summands;
    const double c = d.outer_coeff;
    const double integral = piecewise_sum(
        d, acc,
        [&](std::size_t i, double lo, double hi, double tol) {
            const double mid = 0.5 * (lo + hi);
            const auto& piece = d.pieces[i];
            return quadrature::integrate(
                       [&](double x) {
                           double v = 0.0;
                           for (std::size_t k = piece.size(); k-- > 0;) v = v * (x - mid) + piece[k];
                           return v > 0.0 ? -v * std::log(v) : 0.0;
                       },
                       lo, hi, {tol, 8000})
                .value;
        },
        [&](double width) {
            // -int_0^w c u^m log(c u^m) du, m = n-1
            const double m = static_cast<double>(n - 1);
            const double w1 = std::pow(width, m + 1.0) / (m + 1.0);
            return -c * (std::log(c) * w1 + m * (w1 * std::log(width) - w1 / (m + 1.0)));
        });
    return integral;
}

double renyi_gaussian(double variance, double p) {
    if (!(variance > 0.0)) throw std::domain_error("renyi_gaussian: requires variance > 0");
    if (!(p > 0.0) || p == 1.0) throw std::domain_error("renyi_gaussian: requires p > 0, p != 1");
    return 0.5 * std::log(2.0 * pi * variance) - std::log(p) / (2.0 * (1.0 - p));
}

VerificationReport sandwich_check(const moments::Weights& w, const GridSpec& p_grid) {
    if (w.size() > 12) throw std::domain_error("sandwich_check: n <= 12");
    const moments::PiecewisePolyDensity d = moments::density(w);
    double mm = std::numeric_limits<double>::infinity();
    nlohmann::json wit;
    GridSpec pg = p_grid;
    pg.lo = std::max(p_grid.lo, 1e-3);
    pg.hi = std::min(p_grid.hi, 1.0 - 1e-3);
    for (double p : make_grid(pg)) {
        const double h = renyi_entropy(d, p).value;
        const double lower = h - std::log(2.0);
        const double upper = renyi_gaussian(1.0 / 3.0, p) - h;
        if (lower < mm) {
            mm = lower;
            wit = {{"p", p}, {"side", "lower"}, {"h", h}};
        }
        if (upper < mm) {
            mm = upper;
            wit = {{"p", p}, {"side", "upper"}, {"h", h}};
        }
    }
    return finish_report("renyi_sandwich",
                         {{"n", w.size()}, {"p_lo", pg.lo}, {"p_hi", pg.hi}, {"points", pg.points}},
                         mm, wit, 1e-9);
}

VerificationReport holder_moment_route_check(const moments::Weights& w, double p, int k_max) {
    if (k_max < 1 || k_max > 15) throw std::domain_error("holder_moment_route_check: k_max <= 15");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("holder_moment_route_check: 0 < p < 1");
    double mm = std::numeric_limits<double>::infinity();
    nlohmann::json wit;
    // E(sum a_j U_j)^{2k} <= E(Z/sqrt3)^{2k} = (2k-1)!!/3^k term by term
    double dfact = 1.0, pow3 = 1.0;
    for (int k = 1; k <= k_max; ++k) {
        dfact *= 2.0 * k - 1.0;
        pow3 *= 3.0;
        const double lhs = moments::even_moment(w, k);
        const double rhs = dfact / pow3;
        const double margin = (rhs - lhs) / rhs;  // relative, the moments decay fast
        if (margin < mm) {
            mm = margin;
            wit = {{"k", k}, {"lhs", lhs}, {"rhs", rhs}};
        }
    }
    // int f g^{p-1} <= int g^p with g the N(0,1/3) density
    const moments::PiecewisePolyDensity d = moments::density(w);
    const double gpow = std::pow(3.0 / (2.0 * pi), 0.5 * (p - 1.0));
    double lhs_int = 0.0;
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        const double lo = d.breakpoints[i], hi = d.breakpoints[i + 1];
        const double mid = 0.5 * (lo + hi);
        const auto& piece = d.pieces[i];
        lhs_int += quadrature::integrate(
                       [&](double x) {
                           double v = 0.0;
                           for (std::size_t k = piece.size(); k-- > 0;) v = v * (x - mid) + piece[k];
                           return v * gpow * std::exp(-1.5 * (p - 1.0) * x * x);
                       },
                       lo, hi, {1e-10, 8000})
                       .value;
    }
    const double rhs_int = std::pow(3.0 / (2.0 * pi), 0.5 * (p - 1.0)) / std::sqrt(p);
    const double int_margin = (rhs_int - lhs_int) / rhs_int;
    if (int_margin < mm) {
        mm = int_margin;
        wit = {{"check", "int f g^{p-1} <= int g^p"}, {"lhs", lhs_int}, {"rhs", rhs_int}};
    }
    return finish_report("holder_moment_route", {{"n", w.size()}, {"p", p}, {"k_max", k_max}},
                         mm, wit, 1e-12);
}

}  // namespace khinchin::renyi
