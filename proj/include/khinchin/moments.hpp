#pragma once

#include <cstdint>
#include <vector>

#include "khinchin/common.hpp"
#include "khinchin/quadrature.hpp"

namespace khinchin::moments {

// Canonical Khinchin coefficient vector: entries made positive, normalized to
// sum of squares 1, sorted descending at construction.
class Weights {
public:
    explicit Weights(std::vector<double> a);

    const std::vector<double>& values() const { return a_; }
    int size() const { return static_cast<int>(a_.size()); }
    double sum() const;            // sum a_j (support half-width of the sum)
    double power_sum(int m) const; // sum a_j^m
    double max() const { return a_.front(); }
    double min() const { return a_.back(); }

private:
    std::vector<double> a_;
};

// Exact density of sum a_j U_j as a piecewise polynomial. Each piece stores
// monomial coefficients in the local variable u = x - midpoint of the piece.
struct PiecewisePolyDensity {
    std::vector<double> breakpoints;           // sorted, size M+1
    std::vector<std::vector<double>> pieces;   // size M, degree <= n-1
    int n_summands = 0;
    double outer_coeff = 0.0;  // f(x) = outer_coeff (x - b_0)^{n-1} on the outer pieces

    double support_lo() const { return breakpoints.front(); }
    double support_hi() const { return breakpoints.back(); }
    double eval(double x) const;
    double piece_integral(std::size_t i) const;
    double mass() const;
};

// Builds the density by sequential convolution with the box on [-a_j, a_j].
// Throws std::length_error if the piece count would exceed the guard
// (general-position weights are fine through n = 20, merged grids such as
// equal weights through n = 64).
PiecewisePolyDensity density(const Weights& w);

// E|U_1 + x U_2|^p = ((1+x)^{2+p} - (1-x)^{2+p}) / (2 (1+p) (2+p) x).
double moment_closed_pair(double x, double p);

// E|sum a_j U_j|^p three ways.
quadrature::QuadratureResult moment_fourier(const Weights& w, double p,
                                            const Accuracy& acc = {1e-8, 40000});
quadrature::QuadratureResult moment_density(const Weights& w, double p,
                                            const Accuracy& acc = {1e-10, 40000});
quadrature::QuadratureResult moment_density(const PiecewisePolyDensity& d, double p,
                                            const Accuracy& acc = {1e-10, 40000});

// E(sum a_j U_j)^{2k} exactly by binomial convolution of per-summand even
// moment sequences E(a_j U_j)^{2m} = a_j^{2m} / (2m+1).
double even_moment(const Weights& w, int k);

struct MCConfig {
    std::int64_t samples = 1000000;
    std::uint64_t seed = 1;
};
struct MCEstimate {
    double estimate = 0.0;
    double stderr_est = 0.0;
};

// Counter-based generator: (seed, sample index, coordinate) determine each
// variate, so results are reproducible at any thread count.
MCEstimate moment_mc(const Weights& w, double p, const MCConfig& cfg);

// Deterministic uniform on [-1, 1) used by the Monte Carlo engine and tests.
double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t coord);

}  // namespace khinchin::moments
