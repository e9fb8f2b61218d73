#pragma once

#include <cstdint>

#include "khinchin/common.hpp"
#include "khinchin/moments.hpp"
#include "khinchin/report.hpp"

namespace khinchin::constants {

enum class Regime { neg_phase, unit_interval, above_one };

// Best constants c_p <= ||sum a_j U_j||_p / ||a|| <= C_p over unit vectors a.
struct ConstantRegime {
    double p = 0.0;
    double c_p = 0.0;
    double C_p = 0.0;
    Regime regime = Regime::unit_interval;
};

// Regimes: (-1,0) phase transition, (0,1) gaussian lower/uniform upper,
// p > 1 per the swapped closed forms.
ConstantRegime sharp_constants(double p);

const char* regime_name(Regime r);

// phi_p(x) = (1+x)^{p/2} and its capped extension
// Phi_p(x) = phi_p(x) for x >= 1, 2 phi_p(1) - phi_p(2-x) on [0,1].
double phi(double x, double p);
double phi_cap(double x, double p);

// Midpoint inequality (Phi(a)+Phi(b))/2 >= Phi((a+b)/2) for a,b in [0,2],
// a+b <= 2. The scan keeps a < b strictly inside a+b < 2; the boundary and
// diagonal are exact equalities.
VerificationReport extended_convexity_check(double p, const GridSpec& grid);

// ((1+x)^{2+p} - (1-x)^{2+p}) / (2(2+p)x) > c_p^p (1+p) Phi_p(x^2)
// on (0,1) x (0,0.69).
VerificationReport base_case_check(const GridSpec& p_grid, const GridSpec& x_grid);

// Randomized search for the minimal p-th moment over positive unit weight
// vectors: random restarts plus pairwise golden-section rotations.
struct SearchResult {
    moments::Weights best;
    double best_moment = 0.0;
    long evals = 0;
};
SearchResult extremum_search(int n, double p, long budget, std::uint64_t seed);

}  // namespace khinchin::constants
