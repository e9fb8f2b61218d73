#pragma once

#include <optional>

#include "khinchin/common.hpp"
#include "khinchin/report.hpp"

namespace khinchin::sincfun {

// sin t / t with the limit value 1 at t = 0.
double sinc(double t);

// |sin t| / t for t > 0.
double sinc_abs(double t);

// Location and value of the unique local maximum of |sin t / t| on
// (k pi, (k+1) pi); k = 0 is the endpoint maximum value 1 at t = 0.
struct SincExtremum {
    int k = 0;
    double t_bar = 0.0;
    double y_k = 1.0;
};

SincExtremum local_max(int k);  // k >= 1
double peak_value(int k);       // y_k, with y_0 == 1

// The two solutions of |sin t|/t = y on (k pi, (k+1) pi) for 0 < y < y_k;
// for k = 0 only the root on (0, pi) exists and t_minus is absent.
struct LevelRoots {
    double y = 0.0;
    int k = 0;
    std::optional<double> t_minus;
    double t_plus = 0.0;
};

LevelRoots level_roots(double y, int k);

enum class LemmaId {
    f_below_gaussian,   // sin t / t < e^{-t^2/6} on (0, pi)
    derivative_bound,   // sup |cos t - sin t / t| < 11/10 (observed < 1.07)
    extrema_bounds,     // 1/((k+1/2) pi) <= y_k <= 1/(k pi), y_1 < e^{-3/2}
    root_lower_bounds,  // t_0 > 0.98 pi and t_1 > 1.97 pi for y < 1/(30 pi)
    inverse_sin_sq,     // 1/sin^2 x > 1/x^2 + 1/(pi - x)^2 on (0, pi)
    slope_monotone,     // |sin t|/(t (t-(k-1)pi)) nonincreasing on ((k-1)pi, k pi)
    slope_unimodal      // |sin t|/(t (k pi - t)) unimodal on ((k-1)pi, k pi)
};

const char* lemma_name(LemmaId id);

// Grid-based check; failures are report outcomes, not exceptions.
VerificationReport verify_lemma(LemmaId id, const GridSpec& grid);

}  // namespace khinchin::sincfun
