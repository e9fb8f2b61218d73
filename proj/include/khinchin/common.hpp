#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace khinchin {

inline constexpr const char* version_string = "0.1.0";

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Absolute-error target plus a work cap. For series, max_terms is the term
// budget; the adaptive integrator reads it as the interval-split budget.
struct Accuracy {
    double abs_tol = 1e-12;
    int max_terms = 500;

    void validate() const {
        if (!(abs_tol > 0.0)) throw std::domain_error("Accuracy: abs_tol must be > 0");
        if (max_terms < 1) throw std::domain_error("Accuracy: max_terms must be >= 1");
    }
};

// Uniform or log-uniform sampling grid on [lo, hi].
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    int points = 1000;
    bool log_scale = false;
};

inline std::vector<double> make_grid(const GridSpec& g) {
    if (!(g.lo < g.hi)) throw std::domain_error("GridSpec: lo < hi required");
    if (g.points < 2) throw std::domain_error("GridSpec: need at least 2 points");
    if (g.log_scale && !(g.lo > 0.0)) throw std::domain_error("GridSpec: log grid needs lo > 0");
    std::vector<double> xs(static_cast<std::size_t>(g.points));
    const double n1 = static_cast<double>(g.points - 1);
    for (int i = 0; i < g.points; ++i) {
        const double w = static_cast<double>(i) / n1;
        xs[static_cast<std::size_t>(i)] =
            g.log_scale ? g.lo * std::exp(w * std::log(g.hi / g.lo))
                        : g.lo + w * (g.hi - g.lo);
    }
    xs.front() = g.lo;
    xs.back() = g.hi;
    return xs;
}

// Thrown when an accuracy target cannot be met; carries the best bound reached.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double achieved)
        : std::runtime_error(what + " (best achieved bound " + std::to_string(achieved) + ")"),
          best_bound(achieved) {}
    double best_bound;
};

}  // namespace khinchin
