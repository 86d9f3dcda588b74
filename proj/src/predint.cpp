#include "scorecmp/predint.hpp"

#include <cmath>
#include <stdexcept>

#include "scorecmp/tdist.hpp"

namespace scorecmp {

LinearFit fit_dev_test(std::span<const DevTestPoint> points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_dev_test: need at least 3 points");
    const double n = static_cast<double>(points.size());
    double mx = 0, my = 0;
    for (const auto& p : points) { mx += p.dev; my += p.test; }
    mx /= n; my /= n;
    double sxx = 0, sxy = 0;
    for (const auto& p : points) {
        const double dx = p.dev - mx;
        sxx += dx * dx;
        sxy += dx * (p.test - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_dev_test: dev scores are all equal");

    LinearFit fit;
    fit.n = static_cast<std::int64_t>(points.size());
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.mean_x = mx;
    fit.s_x = std::sqrt(sxx / (n - 1.0));
    double ss_res = 0;
    for (const auto& p : points) {
        const double r = p.test - fit.predict(p.dev);
        ss_res += r * r;
    }
    fit.s_y = std::sqrt(ss_res / (n - 2.0));
    return fit;
}

double prediction_interval(const LinearFit& fit, double dev, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("prediction_interval: alpha must lie in (0, 1)");
    if (fit.n < 3 || !(fit.s_x > 0.0))
        throw std::invalid_argument("prediction_interval: invalid fit");
    const double n = static_cast<double>(fit.n);
    const double t_star = t_quantile(1.0 - 0.5 * (1.0 - alpha), n - 2.0);
    const double dx = dev - fit.mean_x;
    return t_star * fit.s_y
        * std::sqrt(1.0 + 1.0 / n + dx * dx / ((n - 1.0) * fit.s_x * fit.s_x));
}

IntervalSummary interval_width_summary(std::span<const DevTestPoint> points,
                                       double pair_confidence) {
    if (!(pair_confidence > 0.0) || !(pair_confidence < 1.0))
        throw std::invalid_argument("interval_width_summary: pair confidence must lie in (0, 1)");
    IntervalSummary summary;
    summary.fit = fit_dev_test(points);
    summary.alpha = 1.0 - std::sqrt(pair_confidence);
    double acc = 0;
    for (const auto& p : points)
        acc += 2.0 * prediction_interval(summary.fit, p.dev, summary.alpha);
    summary.mean_width = acc / static_cast<double>(points.size());
    return summary;
}

}  // namespace scorecmp
