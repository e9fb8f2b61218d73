#pragma once

#include "khinchin/common.hpp"
#include "khinchin/moments.hpp"
#include "khinchin/report.hpp"

namespace khinchin::renyi {

struct RenyiValue {
    double p = 0.0;
    double value = 0.0;  // nats
};

// h_p = (1/(1-p)) log int f^p for p > 0, p != 1. The outermost pieces, where
// f(x) = c (edge distance)^{n-1} exactly, integrate in closed form.
RenyiValue renyi_entropy(const moments::PiecewisePolyDensity& d, double p,
                         const Accuracy& acc = {1e-9, 40000});

// h_1 = -int f log f.
double shannon_entropy(const moments::PiecewisePolyDensity& d,
                       const Accuracy& acc = {1e-9, 40000});

// h_p(N(0, variance)) = (1/2) log(2 pi variance) - log p / (2(1-p)).
double renyi_gaussian(double variance, double p);

// log 2 <= h_p(sum a_j U_j) <= h_p(Z/sqrt(3)) across the p grid.
VerificationReport sandwich_check(const moments::Weights& w, const GridSpec& p_grid);

// The even-moment route behind the upper bound: E(sum a_j U_j)^{2k} <=
// (2k-1)!!/3^k for k <= k_max, plus int f g^{p-1} <= int g^p directly.
VerificationReport holder_moment_route_check(const moments::Weights& w, double p, int k_max);

}  // namespace khinchin::renyi
