#include "khinchin/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "khinchin/specfun.hpp"

namespace khinchin::constants {

namespace {

double gaussian_norm_over_sqrt3(double p) {
    // ||Z||_p / sqrt(3)
    return std::pow(specfun::gaussian_abs_moment(p), 1.0 / p) / std::sqrt(3.0);
}

double uniform_norm(double p) {
    // ||U_1||_p = (1+p)^{-1/p}; also valid on (-1, 0)
    return std::pow(1.0 + p, -1.0 / p);
}

double pair_norm_over_sqrt2(double p) {
    // ||U_1 + U_2||_p / sqrt(2), E|U_1+U_2|^p = 2^{p+1}/((p+1)(p+2))
    const double mom = std::pow(2.0, p + 1.0) / ((p + 1.0) * (p + 2.0));
    return std::pow(mom, 1.0 / p) / std::sqrt(2.0);
}

}  // namespace

ConstantRegime sharp_constants(double p) {
    if (!(p > -1.0) || p == 0.0)
        throw std::domain_error("sharp_constants: requires p in (-1,0) or (0,inf)");
    ConstantRegime out;
    out.p = p;
    if (p < 0.0) {
        out.regime = Regime::neg_phase;
        out.c_p = std::min(gaussian_norm_over_sqrt3(p), pair_norm_over_sqrt2(p));
        out.C_p = uniform_norm(p);
    } else if (p <= 1.0) {
        out.regime = Regime::unit_interval;
        out.c_p = gaussian_norm_over_sqrt3(p);
        out.C_p = uniform_norm(p);
    } else {
        out.regime = Regime::above_one;
        out.c_p = uniform_norm(p);
        out.C_p = gaussian_norm_over_sqrt3(p);
    }
    return out;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::neg_phase: return "neg_phase";
        case Regime::unit_interval: return "unit_interval";
        case Regime::above_one: return "above_one";
    }
    return "unknown";
}

double phi(double x, double p) {
    if (!(x >= 0.0)) throw std::domain_error("phi: requires x >= 0");
    return std::pow(1.0 + x, 0.5 * p);
}

double phi_cap(double x, double p) {
    if (!(x >= 0.0)) throw std::domain_error("phi_cap: requires x >= 0");
    if (!(p > 0.0 && p < 2.0)) throw std::domain_error("phi_cap: requires 0 < p < 2");
    if (x >= 1.0) return phi(x, p);
    return 2.0 * phi(1.0, p) - phi(2.0 - x, p);
}

VerificationReport extended_convexity_check(double p, const GridSpec& grid) {
    double mm = std::numeric_limits<double>::infinity();
    nlohmann::json wit;
    GridSpec g = grid;
    g.lo = 0.0;
    g.hi = 2.0;
    const auto xs = make_grid(g);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const double a = xs[i], b = xs[j];
            if (!(a + b < 2.0)) break;
            const double margin =
                0.5 * (phi_cap(a, p) + phi_cap(b, p)) - phi_cap(0.5 * (a + b), p);
            if (margin < mm) {
                mm = margin;
                wit = {{"a", a}, {"b", b}, {"p", p}};
            }
        }
    }
    return finish_report("phi_extended_convexity",
                         {{"points", grid.points}, {"p", p}, {"domain", "a<b, a+b<2"}}, mm, wit);
}

VerificationReport base_case_check(const GridSpec& p_grid, const GridSpec& x_grid) {
    double mm = std::numeric_limits<double>::infinity();
    nlohmann::json wit;
    GridSpec pg = p_grid;
    pg.lo = std::max(p_grid.lo, 1e-4);
    pg.hi = std::min(p_grid.hi, 0.69);
    GridSpec xg = x_grid;
    xg.lo = std::max(x_grid.lo, 1e-6);
    xg.hi = std::min(x_grid.hi, 1.0);
    for (double p : make_grid(pg)) {
        const double cpp = specfun::gaussian_abs_moment(p) * std::pow(3.0, -0.5 * p);
        for (double x : make_grid(xg)) {
            const double lhs = (std::pow(1.0 + x, 2.0 + p) - std::pow(1.0 - x, 2.0 + p)) /
                               (2.0 * (2.0 + p) * x);
            const double rhs = cpp * (1.0 + p) * phi_cap(x * x, p);
            const double margin = lhs - rhs;
            if (margin < mm) {
                mm = margin;
                wit = {{"p", p}, {"x", x}};
            }
        }
    }
    return finish_report(
        "base_case",
        {{"p", {pg.lo, pg.hi, pg.points}}, {"x", {xg.lo, xg.hi, xg.points}}}, mm, wit);
}

namespace {

double objective(const std::vector<double>& a, double p) {
    const moments::Weights w(a);
    if (w.size() <= 10) return moments::moment_density(w, p, {1e-9, 40000}).value;
    return moments::moment_fourier(w, p, {1e-8, 40000}).value;
}

}  // namespace

SearchResult extremum_search(int n, double p, long budget, std::uint64_t seed) {
    if (n < 2 || n > 16) throw std::domain_error("extremum_search: requires 2 <= n <= 16");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("extremum_search: requires 0 < p < 1");
    if (budget < 1) throw std::domain_error("extremum_search: requires budget >= 1");

    long evals = 0;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> best;

    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    std::uint64_t draw = 0;
    const int restarts = 4;
    for (int r = 0; r < restarts && evals < budget; ++r) {
        std::vector<double> a(static_cast<std::size_t>(n));
        if (r == 0) {
            a.assign(static_cast<std::size_t>(n), 1.0);  // equal weights first
        } else {
            for (double& x : a) {
                const double u = moments::counter_uniform(seed, draw++, 7);
                x = 0.05 + std::abs(u);
            }
        }
        double cur = objective(a, p);
        ++evals;
        // pairwise rotations: optimize the angle of (a_i, a_j) by golden section
        bool improved = true;
        for (int sweep = 0; sweep < 6 && improved && evals < budget; ++sweep) {
            improved = false;
            for (int i = 0; i < n && evals < budget; ++i) {
                for (int j = i + 1; j < n && evals < budget; ++j) {
                    const double rad = std::hypot(a[static_cast<std::size_t>(i)],
                                                  a[static_cast<std::size_t>(j)]);
                    auto val_at = [&](double theta) {
                        std::vector<double> b = a;
                        b[static_cast<std::size_t>(i)] = std::max(rad * std::cos(theta), 1e-6);
                        b[static_cast<std::size_t>(j)] = std::max(rad * std::sin(theta), 1e-6);
                        ++evals;
                        return objective(b, p);
                    };
                    double lo = 0.05, hi = 0.5 * pi - 0.05;
                    double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
                    double f1 = val_at(x1), f2 = val_at(x2);
                    for (int it = 0; it < 12 && evals < budget; ++it) {
                        if (f1 < f2) {
                            hi = x2;
                            x2 = x1;
                            f2 = f1;
                            x1 = hi - golden * (hi - lo);
                            f1 = val_at(x1);
                        } else {
                            lo = x1;
                            x1 = x2;
                            f1 = f2;
                            x2 = lo + golden * (hi - lo);
                            f2 = val_at(x2);
                        }
                    }
                    const double theta = 0.5 * (lo + hi);
                    const double fb = std::min(f1, f2);
                    if (fb < cur - 1e-12) {
                        a[static_cast<std::size_t>(i)] = std::max(rad * std::cos(theta), 1e-6);
                        a[static_cast<std::size_t>(j)] = std::max(rad * std::sin(theta), 1e-6);
                        cur = fb;
                        improved = true;
                    }
                }
            }
        }
        if (cur < best_val) {
            best_val = cur;
            best = a;
        }
    }

    SearchResult out{moments::Weights(best), best_val, evals};
    const double cpp = specfun::gaussian_abs_moment(p) * std::pow(3.0, -0.5 * p);
    if (!(out.best_moment >= cpp - 1e-6))
        throw std::runtime_error("extremum_search: found a moment below the sharp constant");
    return out;
}

}  // namespace khinchin::constants
