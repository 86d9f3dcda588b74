#pragma once

#include <cstdint>
#include <span>

#include "scorecmp/stats.hpp"

// Linear regression of test score on dev score with prediction intervals:
// the spread one should expect between test scores of runs that look alike
// on the development set.

namespace scorecmp {

struct DevTestPoint {
    Score dev = 0.0;
    Score test = 0.0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::int64_t n = 0;
    double s_y = 0.0;    // residual standard deviation, n-2 denominator
    double s_x = 0.0;    // unbiased standard deviation of the dev scores
    double mean_x = 0.0;

    double predict(double dev) const { return intercept + slope * dev; }
};

// Least-squares fit; needs n >= 3 and non-constant dev scores.
LinearFit fit_dev_test(std::span<const DevTestPoint> points);

// Half-width of the prediction band at two-tailed confidence alpha:
//   zeta = t*_{n-2} * s_y * sqrt(1 + 1/n + (dev - mean_x)^2 / ((n-1) s_x^2))
double prediction_interval(const LinearFit& fit, double dev, double alpha);

struct IntervalSummary {
    LinearFit fit;
    double alpha = 0.0;       // per-point confidence, 1 - sqrt(pair_confidence)
    double mean_width = 0.0;  // mean of 2*zeta over the observed dev scores
};

// Mean full width of the prediction band, with the per-point confidence
// chosen so that two independent points each miss their band with combined
// probability pair_confidence.
IntervalSummary interval_width_summary(std::span<const DevTestPoint> points,
                                       double pair_confidence = 0.05);

}  // namespace scorecmp
