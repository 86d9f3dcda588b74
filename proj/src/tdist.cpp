#include "scorecmp/tdist.hpp"

#include <cmath>
#include <stdexcept>

namespace scorecmp {

namespace {

// continued fraction for I_x(a,b), Lentz's method
double beta_cf(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    constexpr int max_iter = 500;

    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("incomplete beta: parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = a * std::log(x) + b * std::log1p(-x)
        - (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(x, a, b) / a;
    return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double t_cdf(double t, double df) {
    if (!(df > 0.0))
        throw std::invalid_argument("t_cdf: degrees of freedom must be positive");
    if (std::isnan(t)) return std::nan("");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double x = df / (df + t * t);
    const double tail = 0.5 * regularized_incomplete_beta(x, 0.5 * df, 0.5);
    return t >= 0.0 ? 1.0 - tail : tail;
}

double t_quantile(double p, double df) {
    if (!(df > 0.0))
        throw std::invalid_argument("t_quantile: degrees of freedom must be positive");
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("t_quantile: probability must lie in (0, 1)");
    if (p == 0.5) return 0.0;
    const bool upper = p > 0.5;
    const double target = upper ? p : 1.0 - p;

    double lo = 0.0, hi = 1.0;
    while (t_cdf(hi, df) < target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) break;
    }
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (t_cdf(mid, df) < target) lo = mid; else hi = mid;
        if (hi - lo <= 1e-12 * std::max(1.0, std::fabs(hi))) break;
    }
    const double q = 0.5 * (lo + hi);
    return upper ? q : -q;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.7071067811865475244); }

double normal_sf(double z) { return 0.5 * std::erfc(z * 0.7071067811865475244); }

}  // namespace scorecmp
